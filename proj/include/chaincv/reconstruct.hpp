#pragma once

// Reconstruction of an SL(2,C) generator triple from a character tuple: an
// explicit upper/lower triangular chart for the first two generators and a
// linear combination for the third.

#include <utility>

#include "chaincv/chars.hpp"
#include "chaincv/mat2.hpp"

namespace chaincv {

struct Representation {
  Mat2 x1, x2, x3;
};

// Scalars of the linear relation x3 x1^-1 x2 = alpha x1 + beta e; alpha is
// pinned to -r23 by the trace equations.
struct AlphaBeta {
  Complex alpha{}, beta{};
};

inline AlphaBeta alpha_beta_of(const CharacterPoint& p) {
  return {-p.r23, p.beta};
}

// Canonical irreducible pair realizing (t1, t2, t12):
//   x1 = [[l, 1], [0, 1/l]],  x2 = [[m, 0], [c, 1/m]],
// with l + 1/l = t1, m + 1/m = t2 (root with |.| >= 1, ties broken toward
// nonnegative imaginary part) and c = t12 - l m - 1/(l m).  The chart also
// covers parabolic traces +-2.  Throws ReduciblePair when the commutator
// trace equals 2 within margin_tol.
std::pair<Mat2, Mat2> pair_from_traces(Complex t1, Complex t2, Complex t12,
                                       const Tolerance& tol = {});

// Third generator from the tuple's linear relation:
//   x3 = (alpha r12 + beta t2) x1 - alpha x2 - beta x2 x1.
// Throws NonUnimodularResult when det(x3) strays from 1 by more than
// margin_tol.
Mat2 x3_from_point(const CharacterPoint& p, const Mat2& x1, const Mat2& x2,
                   const Tolerance& tol = {});

// Full pipeline: irreducibility gate, canonical pair, third generator.
Representation representation_from_point(const CharacterPoint& p,
                                         const Tolerance& tol = {});

// Max-norm defects of the two defining relators
//   [x1, x3 x1^-1 x2] = e  and  [x2, x1 x2^-1 x3] = e.
struct RelatorResiduals {
  double first = 0.0;
  double second = 0.0;
  double max() const { return first > second ? first : second; }
};

RelatorResiduals relator_residuals(const Representation& rep);

// Character tuple of a matrix triple: traces, adjugate-product traces, and
// beta = (t1 t2 t3 - tr(x1 x2 x3)) / 2.
CharacterPoint character_of(const Representation& rep);

inline FrickePair fricke_pair(const Representation& rep,
                              double eq_tol = 1e-9) {
  return fricke_pair(rep.x1, rep.x2, rep.x3, eq_tol);
}

}  // namespace chaincv
