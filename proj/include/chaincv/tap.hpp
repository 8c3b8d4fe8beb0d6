#pragma once

#include <array>
#include <utility>
#include <vector>

#include "chaincv/chars.hpp"
#include "chaincv/laurent.hpp"
#include "chaincv/mat2.hpp"
#include "chaincv/reconstruct.hpp"

namespace chaincv {

// Word in the free group on the three generators.  Letters are read left to
// right as (generator index in 1..3, exponent +1 or -1).
struct GroupWord {
  std::vector<std::pair<int, int>> letters;
};

// Integer linear combination of words; the shape free differentials take.
struct WordSum {
  std::vector<std::pair<double, GroupWord>> terms;
};

// 2x2 matrix with Laurent polynomial entries.
struct LaurentMat2 {
  LaurentPoly3 a, b, c, d;

  static LaurentMat2 identity();
  LaurentPoly3 det() const;
  LaurentPoly3 trace() const;
  LaurentMat2 adjugate() const;
};

LaurentMat2 operator+(const LaurentMat2& m, const LaurentMat2& n);
LaurentMat2 operator-(const LaurentMat2& m, const LaurentMat2& n);
LaurentMat2 operator*(const LaurentMat2& m, const LaurentMat2& n);

// Throws NotARepresentation unless both defining relators hold for the
// given matrices to within tol.margin_tol.
void require_representation(const Representation& rep,
                            const Tolerance& tol = {});

// Twisted image of a word: each letter x_j^(+-1) contributes a deck
// variable s_j^(+-1) alongside the matrix rho(x_j)^(+-1).
LaurentMat2 phi_word(const Representation& rep, const GroupWord& w,
                     const Tolerance& tol = {});

// Twisted image of a linear combination of words.
LaurentMat2 phi_sum(const Representation& rep, const WordSum& ws,
                    const Tolerance& tol = {});

// Closed form of the torsion polynomial of a character: nineteen monomials
// whose coefficients are coordinates of the point.
LaurentPoly3 tap_closed_form(const CharacterPoint& p);

struct FoxResult {
  LaurentPoly3 numerator;    // det of the twisted 4x4 differential block
  LaurentPoly3 denominator;  // det of the twisted image of 1 - x2
  MonomialMatch quotient;    // closed_form * denominator vs numerator
};

// Elimination route: the free differentials of the two relators with
// respect to (x1, x3) form a 2x2 word matrix; the determinant of its
// twisted 4x4 image, divided by det of the twisted 1 - x2, reproduces the
// closed form up to a single monomial (recorded in `quotient`).
FoxResult tap_fox(const Representation& rep, double rel_tol = 1e-9,
                  const Tolerance& tol = {});

struct UvwParts {
  LaurentMat2 u, v, w;
};

// Three-factor route:
//   u = 1 - s1 x1
//   v = (s2/s1) x2 x1^-1 + (s3/s1) x3 x1^-1
//   w = 1 - (s2 s3 / s1) x3 x1^-1 x2
UvwParts uvw_parts(const Representation& rep, const Tolerance& tol = {});

// det(u) det(v) + det(w) + tr(u v adj(w)) = det(u v + w).  The closed form
// equals s1 s2^-1 s3^-1 times this polynomial exactly.
LaurentPoly3 tap_uvw(const Representation& rep, const Tolerance& tol = {});

}  // namespace chaincv
