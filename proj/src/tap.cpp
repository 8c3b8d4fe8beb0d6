#include "chaincv/tap.hpp"

#include <stdexcept>

#include "chaincv/errors.hpp"

namespace chaincv {

LaurentMat2 LaurentMat2::identity() {
  LaurentMat2 m;
  m.a = LaurentPoly3::constant(1.0);
  m.d = LaurentPoly3::constant(1.0);
  return m;
}

LaurentPoly3 LaurentMat2::det() const { return a * d - b * c; }

LaurentPoly3 LaurentMat2::trace() const { return a + d; }

LaurentMat2 LaurentMat2::adjugate() const { return {d, -b, -c, a}; }

LaurentMat2 operator+(const LaurentMat2& m, const LaurentMat2& n) {
  return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}

LaurentMat2 operator-(const LaurentMat2& m, const LaurentMat2& n) {
  return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}

LaurentMat2 operator*(const LaurentMat2& m, const LaurentMat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

void require_representation(const Representation& rep, const Tolerance& tol) {
  const double defect = relator_residuals(rep).max();
  if (!(defect <= tol.margin_tol)) {
    throw NotARepresentation(
        "require_representation: relator defect " + std::to_string(defect) +
        " exceeds the tolerance");
  }
}

namespace {

// Monomial s1^k1 s2^k2 s3^k3 times a constant matrix.
LaurentMat2 monomial_times(int k1, int k2, int k3, const Mat2& m) {
  LaurentMat2 out;
  out.a = LaurentPoly3::monomial(k1, k2, k3, m.a);
  out.b = LaurentPoly3::monomial(k1, k2, k3, m.b);
  out.c = LaurentPoly3::monomial(k1, k2, k3, m.c);
  out.d = LaurentPoly3::monomial(k1, k2, k3, m.d);
  return out;
}

GroupWord word(std::initializer_list<std::pair<int, int>> letters) {
  GroupWord w;
  w.letters = letters;
  return w;
}

// Free differentials of the relators [x1, x3 x1^-1 x2] and
// [x2, x1 x2^-1 x3] with respect to (x1, x3); each entry is a signed sum of
// subwords.
std::array<std::array<WordSum, 2>, 2> differential_matrix() {
  const WordSum e00{{{+1.0, word({})},
                     {-1.0, word({{1, 1}, {3, 1}, {1, -1}})},
                     {+1.0, word({{3, 1}, {1, -1}})},
                     {-1.0, word({{3, 1}, {1, -1}, {2, 1}})}}};
  const WordSum e01{{{+1.0, word({{1, 1}})}, {-1.0, word({})}}};
  const WordSum e10{{{+1.0, word({{2, 1}})}, {-1.0, word({})}}};
  const WordSum e11{{{+1.0, word({{2, 1}, {1, 1}, {2, -1}})},
                     {-1.0, word({{1, 1}, {2, -1}})}}};
  return {{{e00, e01}, {e10, e11}}};
}

}  // namespace

LaurentMat2 phi_word(const Representation& rep, const GroupWord& w,
                     const Tolerance& tol) {
  require_representation(rep, tol);
  Mat2 m = Mat2::identity();
  std::array<int, 3> key = {0, 0, 0};
  for (const auto& [gen, exp] : w.letters) {
    if (gen < 1 || gen > 3 || (exp != 1 && exp != -1)) {
      throw std::invalid_argument("phi_word: malformed letter");
    }
    const Mat2& x = gen == 1 ? rep.x1 : gen == 2 ? rep.x2 : rep.x3;
    m = m * (exp == 1 ? x : x.inverse());
    key[static_cast<std::size_t>(gen - 1)] += exp;
  }
  return monomial_times(key[0], key[1], key[2], m);
}

LaurentMat2 phi_sum(const Representation& rep, const WordSum& ws,
                    const Tolerance& tol) {
  require_representation(rep, tol);
  LaurentMat2 total;
  for (const auto& [coeff, w] : ws.terms) {
    const LaurentMat2 img = phi_word(rep, w, tol);
    const Complex scale(coeff);
    total.a += scale * img.a;
    total.b += scale * img.b;
    total.c += scale * img.c;
    total.d += scale * img.d;
  }
  return total;
}

LaurentPoly3 tap_closed_form(const CharacterPoint& p) {
  LaurentPoly3 out;
  out.add_term({0, 0, 0}, p.t123() - p.t1 * p.t2 * p.t3);
  out.add_term({1, 0, 0}, p.r23);
  out.add_term({-1, 0, 0}, p.r23);
  out.add_term({0, 1, 0}, p.r13);
  out.add_term({0, -1, 0}, p.r13);
  out.add_term({0, 0, 1}, p.r12);
  out.add_term({0, 0, -1}, p.r12);
  out.add_term({0, 1, -1}, -p.t1);
  out.add_term({0, -1, 1}, -p.t1);
  out.add_term({1, 0, -1}, -p.t2);
  out.add_term({-1, 0, 1}, -p.t2);
  out.add_term({1, -1, 0}, -p.t3);
  out.add_term({-1, 1, 0}, -p.t3);
  out.add_term({-1, 1, 1}, 1.0);
  out.add_term({1, -1, 1}, 1.0);
  out.add_term({1, 1, -1}, 1.0);
  out.add_term({1, -1, -1}, 1.0);
  out.add_term({-1, 1, -1}, 1.0);
  out.add_term({-1, -1, 1}, 1.0);
  return out;
}

FoxResult tap_fox(const Representation& rep, double rel_tol,
                  const Tolerance& tol) {
  require_representation(rep, tol);
  const auto m2 = differential_matrix();

  std::vector<std::vector<LaurentPoly3>> big(4,
                                             std::vector<LaurentPoly3>(4));
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      const LaurentMat2 block = phi_sum(rep, m2[r][c], tol);
      big[2 * r + 0][2 * c + 0] = block.a;
      big[2 * r + 0][2 * c + 1] = block.b;
      big[2 * r + 1][2 * c + 0] = block.c;
      big[2 * r + 1][2 * c + 1] = block.d;
    }
  }

  FoxResult out;
  out.numerator = det(big);
  const WordSum one_minus_x2{{{+1.0, word({})}, {-1.0, word({{2, 1}})}}};
  out.denominator = phi_sum(rep, one_minus_x2, tol).det();
  const LaurentPoly3 closed = tap_closed_form(character_of(rep));
  out.quotient =
      eq_up_to_monomial(closed * out.denominator, out.numerator, rel_tol);
  return out;
}

UvwParts uvw_parts(const Representation& rep, const Tolerance& tol) {
  require_representation(rep, tol);
  const Mat2 x1inv = rep.x1.inverse();
  UvwParts parts;
  parts.u = LaurentMat2::identity() - monomial_times(1, 0, 0, rep.x1);
  parts.v = monomial_times(-1, 1, 0, rep.x2 * x1inv) +
            monomial_times(-1, 0, 1, rep.x3 * x1inv);
  parts.w = LaurentMat2::identity() -
            monomial_times(-1, 1, 1, rep.x3 * x1inv * rep.x2);
  return parts;
}

LaurentPoly3 tap_uvw(const Representation& rep, const Tolerance& tol) {
  const UvwParts parts = uvw_parts(rep, tol);
  return parts.u.det() * parts.v.det() + parts.w.det() +
         (parts.u * parts.v * parts.w.adjugate()).trace();
}

}  // namespace chaincv
