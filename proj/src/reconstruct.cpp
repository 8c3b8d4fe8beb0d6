#include "chaincv/reconstruct.hpp"

#include <cmath>
#include <sstream>

namespace chaincv {

namespace {

// Eigenvalue chart for a prescribed trace: root of z^2 - t z + 1 with
// |z| >= 1, ties broken toward nonnegative imaginary part.
Complex preferred_eigenvalue(Complex t) {
  const auto roots = solve_quadratic(-t, Complex(1));
  const double a0 = std::abs(roots[0]);
  const double a1 = std::abs(roots[1]);
  if (a0 > a1 + 1e-12) return roots[0];
  if (a1 > a0 + 1e-12) return roots[1];
  return roots[0].imag() >= 0.0 ? roots[0] : roots[1];
}

}  // namespace

std::pair<Mat2, Mat2> pair_from_traces(Complex t1, Complex t2, Complex t12,
                                       const Tolerance& tol) {
  const Complex tc = trace_commutator(t1, t2, t12);
  if (std::abs(tc - Complex(2)) <= tol.margin_tol) {
    throw ReduciblePair(
        "pair_from_traces: commutator trace equals 2, no irreducible pair");
  }
  const Complex l = preferred_eigenvalue(t1);
  const Complex m = preferred_eigenvalue(t2);
  const Mat2 x1{l, Complex(1), Complex(0), 1.0 / l};
  const Complex c = t12 - l * m - 1.0 / (l * m);
  const Mat2 x2{m, Complex(0), c, 1.0 / m};
  return {x1, x2};
}

Mat2 x3_from_point(const CharacterPoint& p, const Mat2& x1, const Mat2& x2,
                   const Tolerance& tol) {
  const auto [alpha, beta] = alpha_beta_of(p);
  const Mat2 x3 = (alpha * p.r12 + beta * p.t2) * x1 - alpha * x2 -
                  beta * (x2 * x1);
  const double defect = std::abs(x3.det() - Complex(1));
  if (defect > tol.margin_tol) {
    std::ostringstream msg;
    msg << "x3_from_point: |det - 1| = " << defect;
    throw NonUnimodularResult(msg.str());
  }
  return x3;
}

Representation representation_from_point(const CharacterPoint& p,
                                         const Tolerance& tol) {
  if (!is_irreducible(p, tol)) {
    throw ReduciblePair(
        "representation_from_point: tuple is reducible (eta = 5)");
  }
  const auto [x1, x2] = pair_from_traces(p.t1, p.t2, p.t12(), tol);
  const Mat2 x3 = x3_from_point(p, x1, x2, tol);
  return {x1, x2, x3};
}

namespace {

double relator_defect(const Mat2& g, const Mat2& w) {
  // [g, w] - e with adjugates in place of inverses (inputs are unimodular
  // wherever this is meaningful).
  const Mat2 c = g * w * g.adjugate() * w.adjugate();
  return max_abs(c - Mat2::identity());
}

}  // namespace

RelatorResiduals relator_residuals(const Representation& rep) {
  const Mat2 w1 = rep.x3 * rep.x1.adjugate() * rep.x2;
  const Mat2 w2 = rep.x1 * rep.x2.adjugate() * rep.x3;
  return {relator_defect(rep.x1, w1), relator_defect(rep.x2, w2)};
}

CharacterPoint character_of(const Representation& rep) {
  CharacterPoint p;
  p.t1 = rep.x1.trace();
  p.t2 = rep.x2.trace();
  p.t3 = rep.x3.trace();
  p.r12 = (rep.x1 * rep.x2.adjugate()).trace();
  p.r13 = (rep.x1 * rep.x3.adjugate()).trace();
  p.r23 = (rep.x2 * rep.x3.adjugate()).trace();
  p.beta = (p.t1 * p.t2 * p.t3 - (rep.x1 * rep.x2 * rep.x3).trace()) / 2.0;
  return p;
}

}  // namespace chaincv
