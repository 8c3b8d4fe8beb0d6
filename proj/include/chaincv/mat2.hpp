#pragma once

// 2x2 complex matrices and the handful of trace/determinant identities the
// rest of the library is built on.  Everything here is scale-free exact
// algebra; numeric gates take explicit tolerances.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "chaincv/errors.hpp"

namespace chaincv {

using Complex = std::complex<double>;

// Shared numeric thresholds.  eq_tol gates equation residuals (how close to
// zero a residual must be); margin_tol gates inequations (how far from zero
// an excluded quantity must stay).
struct Tolerance {
  double eq_tol = 1e-9;
  double margin_tol = 1e-6;
};

// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
  Complex a{}, b{}, c{}, d{};

  static Mat2 identity() { return {Complex(1), Complex(0), Complex(0), Complex(1)}; }
  static Mat2 zero() { return {}; }

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }

  // Adjugate (classical adjoint): adj(m) = tr(m) e - m; for det(m) = 1 this
  // is the inverse.
  Mat2 adjugate() const { return {d, -b, -c, a}; }

  bool is_unimodular(double eq_tol = 1e-9) const {
    return std::abs(det() - Complex(1)) <= eq_tol;
  }

  Mat2 inverse(double eq_tol = 1e-9) const {
    if (!is_unimodular(eq_tol)) {
      throw NonUnimodular("inverse: matrix determinant is not 1");
    }
    return adjugate();
  }
};

inline Mat2 operator+(const Mat2& m, const Mat2& n) {
  return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}

inline Mat2 operator-(const Mat2& m, const Mat2& n) {
  return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}

inline Mat2 operator-(const Mat2& m) { return {-m.a, -m.b, -m.c, -m.d}; }

inline Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
          m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

inline Mat2 operator*(Complex s, const Mat2& m) {
  return {s * m.a, s * m.b, s * m.c, s * m.d};
}

// Entrywise max-norm.
inline double max_abs(const Mat2& m) {
  return std::max(std::max(std::abs(m.a), std::abs(m.b)),
                  std::max(std::abs(m.c), std::abs(m.d)));
}

// Group commutator m n m^-1 n^-1; both inputs must be unimodular.
inline Mat2 commutator(const Mat2& m, const Mat2& n, double eq_tol = 1e-9) {
  return m * n * m.inverse(eq_tol) * n.inverse(eq_tol);
}

// Residuals of the three determinant/trace identities that hold for every
// pair of 2x2 complex matrices:
//   (i)   mn + nm = tr(m) n + tr(n) m - tr(m adj(n)) e
//   (ii)  det(m + n) = det(m) + det(n) + tr(m adj(n))
//   (iii) det(e + m) = 1 + det(m) + tr(m)
struct LemmaResiduals {
  double product_identity = 0.0;
  double det_sum = 0.0;
  double det_shift = 0.0;
};

inline LemmaResiduals lemma_det_residuals(const Mat2& m, const Mat2& n) {
  const Complex cross = (m * n.adjugate()).trace();
  const Mat2 lhs = m * n + n * m;
  const Mat2 rhs =
      m.trace() * n + n.trace() * m - cross * Mat2::identity();
  LemmaResiduals out;
  out.product_identity = max_abs(lhs - rhs);
  out.det_sum = std::abs((m + n).det() - m.det() - n.det() - cross);
  out.det_shift = std::abs((Mat2::identity() + m).det() - Complex(1) -
                           m.det() - m.trace());
  return out;
}

// Trace of the group commutator of a unimodular pair, as a polynomial in the
// pair's trace coordinates (t1, t2, t12):
//   tr[m, n] = t12^2 - t1 t2 t12 + t1^2 + t2^2 - 2.
inline Complex trace_commutator(Complex t1, Complex t2, Complex t12) {
  return t12 * t12 - t1 * t2 * t12 + t1 * t1 + t2 * t2 - 2.0;
}

// ---- small numeric helpers shared by the solvers ------------------------

// Strict descending lexicographic order on (re, im).
inline bool lex_greater(Complex x, Complex y) {
  if (x.real() != y.real()) return x.real() > y.real();
  return x.imag() > y.imag();
}

// Roots of z^2 + b z + c = 0, returned in descending lexicographic order so
// that an explicit branch index selects deterministically.  The larger root
// (in magnitude) is computed first to avoid cancellation.
inline std::array<Complex, 2> solve_quadratic(Complex b, Complex c) {
  const Complex disc = std::sqrt(b * b - 4.0 * c);
  // Pick the sign that avoids cancellation in -b -+ disc.
  const Complex s =
      (std::real(std::conj(b) * disc) >= 0.0) ? -b - disc : -b + disc;
  std::array<Complex, 2> roots;
  if (std::abs(s) == 0.0) {
    roots = {Complex(0), Complex(0)};
  } else {
    roots[0] = s / 2.0;
    roots[1] = c / roots[0];
  }
  if (lex_greater(roots[1], roots[0])) std::swap(roots[0], roots[1]);
  return roots;
}

}  // namespace chaincv
