#include <doctest/doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "chaincv/chars.hpp"
#include "chaincv/components.hpp"
#include "chaincv/errors.hpp"
#include "chaincv/laurent.hpp"
#include "chaincv/reconstruct.hpp"
#include "chaincv/sampling.hpp"
#include "chaincv/tap.hpp"
#include "test_support.hpp"

namespace {

using chaincv::CharacterPoint;
using chaincv::Complex;
using chaincv::GroupWord;
using chaincv::LaurentPoly3;
using chaincv::Mat2;
using chaincv::Representation;
using Key = LaurentPoly3::Key;

double poly_distance(const LaurentPoly3& p, const LaurentPoly3& q) {
  double worst = 0.0;
  for (const auto& [k, c] : p.terms()) {
    worst = std::max(worst, std::abs(c - q.coeff(k)));
  }
  for (const auto& [k, c] : q.terms()) {
    worst = std::max(worst, std::abs(c - p.coeff(k)));
  }
  return worst;
}

double mat_poly_distance(const chaincv::LaurentMat2& m,
                         const chaincv::LaurentMat2& n) {
  return std::max(std::max(poly_distance(m.a, n.a), poly_distance(m.b, n.b)),
                  std::max(poly_distance(m.c, n.c), poly_distance(m.d, n.d)));
}

Representation identity_rep() {
  return {Mat2::identity(), Mat2::identity(), Mat2::identity()};
}

// The full exponent support of the torsion polynomial: the origin, the six
// signed unit vectors, the six mixed (+1,-1) pairs, and the six sign
// patterns with one entry negative or one entry positive.
const std::vector<Key>& full_support() {
  static const std::vector<Key> keys = {
      {0, 0, 0},   {1, 0, 0},  {-1, 0, 0}, {0, 1, 0},   {0, -1, 0},
      {0, 0, 1},   {0, 0, -1}, {0, 1, -1}, {0, -1, 1},  {1, 0, -1},
      {-1, 0, 1},  {1, -1, 0}, {-1, 1, 0}, {-1, 1, 1},  {1, -1, 1},
      {1, 1, -1},  {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1},
  };
  return keys;
}

}  // namespace

TEST_SUITE("tap") {
  TEST_CASE("closed form at the trivial character") {
    const Representation rep = identity_rep();
    const CharacterPoint p = chaincv::character_of(rep);
    const LaurentPoly3 poly = chaincv::tap_closed_form(p);

    // Every one of the nineteen support monomials is present with an
    // integer coefficient: -6, +2 on unit vectors, -2 on mixed pairs,
    // +1 on the remaining six.
    CHECK(poly.size() == 19);
    CHECK(testsupport::cdist(poly.coeff({0, 0, 0}), Complex(-6)) == 0.0);
    for (const Key& k : {Key{1, 0, 0}, Key{-1, 0, 0}, Key{0, 1, 0},
                         Key{0, -1, 0}, Key{0, 0, 1}, Key{0, 0, -1}}) {
      CHECK(testsupport::cdist(poly.coeff(k), Complex(2)) == 0.0);
    }
    for (const Key& k : {Key{0, 1, -1}, Key{0, -1, 1}, Key{1, 0, -1},
                         Key{-1, 0, 1}, Key{1, -1, 0}, Key{-1, 1, 0}}) {
      CHECK(testsupport::cdist(poly.coeff(k), Complex(-2)) == 0.0);
    }
    for (const Key& k : {Key{-1, 1, 1}, Key{1, -1, 1}, Key{1, 1, -1},
                         Key{1, -1, -1}, Key{-1, 1, -1}, Key{-1, -1, 1}}) {
      CHECK(testsupport::cdist(poly.coeff(k), Complex(1)) == 0.0);
    }
    CHECK(testsupport::cdist(poly.eval(1, 1, 1), Complex(0)) == 0.0);
  }

  TEST_CASE("closed form support and evaluation at the cusped point") {
    const CharacterPoint p = testsupport::hyperbolic_point();
    const LaurentPoly3 poly = chaincv::tap_closed_form(p);

    CHECK(poly.size() == 19);
    for (const Key& k : full_support()) {
      CHECK(std::abs(poly.coeff(k)) > 0.0);
    }
    // Coefficients carry the character data directly.
    CHECK(testsupport::cdist(poly.coeff({1, 0, 0}), p.r23) == 0.0);
    CHECK(testsupport::cdist(poly.coeff({0, 1, 0}), p.r13) == 0.0);
    CHECK(testsupport::cdist(poly.coeff({0, 0, 1}), p.r12) == 0.0);
    CHECK(testsupport::cdist(poly.coeff({0, 1, -1}), -p.t1) == 0.0);
    CHECK(testsupport::cdist(poly.coeff({1, 0, -1}), -p.t2) == 0.0);
    CHECK(testsupport::cdist(poly.coeff({1, -1, 0}), -p.t3) == 0.0);
    CHECK(testsupport::cdist(poly.coeff({1, 1, -1}), Complex(1)) == 0.0);
    CHECK(testsupport::cdist(poly.coeff({0, 0, 0}), p.t123() - p.t1 * p.t2 * p.t3) ==
          0.0);

    // Value at (1,1,1): -2 - 2*sqrt(-7).
    const Complex expected(-2.0, -2.0 * std::sqrt(7.0));
    CHECK(testsupport::cdist(poly.eval(1, 1, 1), expected) < 1e-12);
  }

  TEST_CASE("closed form at (1,1,1) matches the direct expression") {
    // Summing the coefficients gives
    //   t123 - t1 t2 t3 + 2(r12 + r13 + r23) - 2(t1 + t2 + t3) + 6.
    for (const auto& c :
         {chaincv::ComponentId::x1(2, -1), chaincv::ComponentId::x2(+1),
          chaincv::ComponentId::x3()}) {
      const auto points = chaincv::sample_many(c, 3, 555);
      for (const auto& p : points) {
        const Complex direct = p.t123() - p.t1 * p.t2 * p.t3 +
                               2.0 * (p.r12 + p.r13 + p.r23) -
                               2.0 * (p.t1 + p.t2 + p.t3) + 6.0;
        const Complex via_poly = chaincv::tap_closed_form(p).eval(1, 1, 1);
        CHECK(testsupport::cdist(via_poly, direct) < 1e-12);
      }
    }
  }

  TEST_CASE("twisted letters and multiplicativity") {
    const CharacterPoint hp = testsupport::hyperbolic_point();
    const Representation rep = chaincv::representation_from_point(hp);

    SUBCASE("single letters carry one deck variable each") {
      const GroupWord w1{{{1, +1}}};
      const auto img = chaincv::phi_word(rep, w1);
      CHECK(testsupport::cdist(img.a.coeff({1, 0, 0}), rep.x1.a) < 1e-15);
      CHECK(testsupport::cdist(img.b.coeff({1, 0, 0}), rep.x1.b) < 1e-15);
      CHECK(testsupport::cdist(img.c.coeff({1, 0, 0}), rep.x1.c) < 1e-15);
      CHECK(testsupport::cdist(img.d.coeff({1, 0, 0}), rep.x1.d) < 1e-15);
      CHECK(img.a.size() == 1);

      const GroupWord w2inv{{{2, -1}}};
      const auto inv_img = chaincv::phi_word(rep, w2inv);
      const Mat2 x2inv = rep.x2.inverse();
      CHECK(testsupport::cdist(inv_img.a.coeff({0, -1, 0}), x2inv.a) < 1e-12);
      CHECK(testsupport::cdist(inv_img.d.coeff({0, -1, 0}), x2inv.d) < 1e-12);
    }

    SUBCASE("images multiply like the words") {
      const GroupWord w1{{{1, +1}, {3, -1}}};
      const GroupWord w2{{{2, +1}, {1, +1}}};
      GroupWord joined = w1;
      joined.letters.insert(joined.letters.end(), w2.letters.begin(),
                            w2.letters.end());
      const auto lhs = chaincv::phi_word(rep, joined);
      const auto rhs = chaincv::phi_word(rep, w1) * chaincv::phi_word(rep, w2);
      CHECK(mat_poly_distance(lhs, rhs) < 1e-12);
    }

    SUBCASE("empty word maps to the identity") {
      const auto img = chaincv::phi_word(rep, GroupWord{});
      CHECK(testsupport::cdist(img.a.coeff({0, 0, 0}), Complex(1)) == 0.0);
      CHECK(img.b.is_zero());
      CHECK(img.c.is_zero());
      CHECK(testsupport::cdist(img.d.coeff({0, 0, 0}), Complex(1)) == 0.0);
    }

    SUBCASE("non-representations are rejected") {
      testsupport::TestRng rng(4242);
      const Representation bad{rng.unimodular(), rng.unimodular(),
                               rng.unimodular()};
      CHECK_THROWS_AS(chaincv::phi_word(bad, GroupWord{{{1, 1}}}),
                      chaincv::NotARepresentation);
      CHECK_THROWS_AS(chaincv::tap_uvw(bad), chaincv::NotARepresentation);
      CHECK_THROWS_AS(chaincv::tap_fox(bad), chaincv::NotARepresentation);
    }
  }

  TEST_CASE("elimination route at the trivial representation") {
    const Representation rep = identity_rep();
    const auto fox = chaincv::tap_fox(rep, 1e-10);

    // Denominator: det of the twisted image of 1 - x2 is (1 - s2)^2.
    CHECK(fox.denominator.size() == 3);
    CHECK(testsupport::cdist(fox.denominator.coeff({0, 0, 0}), Complex(1)) ==
          0.0);
    CHECK(testsupport::cdist(fox.denominator.coeff({0, 1, 0}), Complex(-2)) ==
          0.0);
    CHECK(testsupport::cdist(fox.denominator.coeff({0, 2, 0}), Complex(1)) ==
          0.0);

    // Independent oracle for the numerator: at the trivial representation
    // every 2x2 block is a scalar, so the 4x4 determinant collapses to
    // (AD - BC)^2 built from plain Laurent scalars.
    const LaurentPoly3 one = LaurentPoly3::constant(1.0);
    LaurentPoly3 A = one;
    A.add_term({0, 0, 1}, -1.0);
    A.add_term({-1, 0, 1}, 1.0);
    A.add_term({-1, 1, 1}, -1.0);
    LaurentPoly3 B = LaurentPoly3::monomial(1, 0, 0);
    B.add_term({0, 0, 0}, -1.0);
    LaurentPoly3 C = LaurentPoly3::monomial(0, 1, 0);
    C.add_term({0, 0, 0}, -1.0);
    LaurentPoly3 D = LaurentPoly3::monomial(1, 0, 0);
    D.add_term({1, -1, 0}, -1.0);
    const LaurentPoly3 scalar = A * D - B * C;
    CHECK(poly_distance(fox.numerator, scalar * scalar) < 1e-12);

    CHECK(fox.quotient.match);
    CHECK(fox.quotient.shift == Key{1, -1, 1});
    CHECK_FALSE(fox.quotient.negated);
  }

  TEST_CASE("three-factor route at the trivial representation") {
    const Representation rep = identity_rep();
    const auto parts = chaincv::uvw_parts(rep);

    // u = (1 - s1) Id, so det u = (1 - s1)^2.
    CHECK(testsupport::cdist(parts.u.det().coeff({0, 0, 0}), Complex(1)) ==
          0.0);
    CHECK(testsupport::cdist(parts.u.det().coeff({1, 0, 0}), Complex(-2)) ==
          0.0);
    CHECK(testsupport::cdist(parts.u.det().coeff({2, 0, 0}), Complex(1)) ==
          0.0);
    // v = ((s2 + s3)/s1) Id, so det v = (s2 + s3)^2 / s1^2.
    CHECK(testsupport::cdist(parts.v.det().coeff({-2, 2, 0}), Complex(1)) ==
          0.0);
    CHECK(testsupport::cdist(parts.v.det().coeff({-2, 1, 1}), Complex(2)) ==
          0.0);
    CHECK(testsupport::cdist(parts.v.det().coeff({-2, 0, 2}), Complex(1)) ==
          0.0);
    // w = (1 - s2 s3 / s1) Id.
    CHECK(testsupport::cdist(parts.w.det().coeff({-1, 1, 1}), Complex(-2)) ==
          0.0);

    const LaurentPoly3 closed =
        chaincv::tap_closed_form(chaincv::character_of(rep));
    const LaurentPoly3 raw = chaincv::tap_uvw(rep);
    const LaurentPoly3 shifted = chaincv::LaurentPoly3::monomial(1, -1, -1) * raw;
    CHECK(poly_distance(closed, shifted) < 1e-12);
  }

  TEST_CASE("factor determinants carry character data") {
    for (const auto& c :
         {chaincv::ComponentId::x1(3, +1), chaincv::ComponentId::x2(-1),
          chaincv::ComponentId::x3()}) {
      const auto points = chaincv::sample_many(c, 2, 777);
      for (const auto& p : points) {
        const Representation rep = chaincv::representation_from_point(p);
        const auto parts = chaincv::uvw_parts(rep);

        LaurentPoly3 du_expect = LaurentPoly3::constant(1.0);
        du_expect.add_term({1, 0, 0}, -p.t1);
        du_expect.add_term({2, 0, 0}, 1.0);
        CHECK(poly_distance(parts.u.det(), du_expect) < 1e-9);

        LaurentPoly3 dv_expect;
        dv_expect.add_term({-2, 2, 0}, 1.0);
        dv_expect.add_term({-2, 0, 2}, 1.0);
        dv_expect.add_term({-2, 1, 1}, p.r23);
        CHECK(poly_distance(parts.v.det(), dv_expect) < 1e-9);

        LaurentPoly3 dw_expect = LaurentPoly3::constant(1.0);
        dw_expect.add_term({-2, 2, 2}, 1.0);
        dw_expect.add_term({-1, 1, 1},
                           -(p.t1 * p.t2 * p.t3 - p.t1 * p.r23 - p.t123()));
        CHECK(poly_distance(parts.w.det(), dw_expect) < 1e-9);
      }
    }
  }

  TEST_CASE("all three routes agree on sampled points") {
    for (const auto& c : chaincv::ComponentId::all()) {
      const auto points = chaincv::sample_many(c, 2, 901);
      for (const auto& p : points) {
        const Representation rep = chaincv::representation_from_point(p);
        const LaurentPoly3 closed = chaincv::tap_closed_form(p);

        const LaurentPoly3 raw_uvw = chaincv::tap_uvw(rep);
        const LaurentPoly3 shifted_uvw =
            chaincv::LaurentPoly3::monomial(1, -1, -1) * raw_uvw;
        const double scale = std::max(closed.max_abs_coeff(), 1.0);
        CHECK(poly_distance(closed, shifted_uvw) < 1e-8 * scale);

        const auto fox = chaincv::tap_fox(rep, 1e-7);
        CHECK(fox.quotient.match);
        CHECK(fox.quotient.shift == Key{1, -1, 1});
        CHECK_FALSE(fox.quotient.negated);
      }
    }
  }

  TEST_CASE("cycling the generators permutes the deck variables") {
    for (const auto& c :
         {chaincv::ComponentId::x1(1, -1), chaincv::ComponentId::x2(+1),
          chaincv::ComponentId::x3()}) {
      const auto points = chaincv::sample_many(c, 2, 313);
      for (const auto& p : points) {
        const LaurentPoly3 before = chaincv::tap_closed_form(p);
        const LaurentPoly3 after = chaincv::tap_closed_form(chaincv::rotate(p));
        // Exponents cycle as (k1,k2,k3) -> (k2,k3,k1).
        LaurentPoly3 permuted;
        for (const auto& [k, coeff] : before.terms()) {
          permuted.add_term({k[1], k[2], k[0]}, coeff);
        }
        CHECK(poly_distance(after, permuted) < 1e-12);
      }
    }
  }
}
