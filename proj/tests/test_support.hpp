#pragma once

// Shared helpers for the unit tests: a deterministic random source and
// absolute-difference checks for complex values and 2x2 matrices.

#include <complex>
#include <cstdint>
#include <random>

#include "chaincv/chars.hpp"
#include "chaincv/mat2.hpp"

namespace testsupport {

using chaincv::Complex;
using chaincv::Mat2;

// Discrete faithful character of the chain-link exterior: all meridian
// traces 2, all pairwise difference traces (1 - sqrt(-7))/2, and
// beta = (-1 - sqrt(-7))/2.
inline chaincv::CharacterPoint hyperbolic_point() {
  const double half_rt7 = std::sqrt(7.0) / 2.0;
  const Complex r(0.5, -half_rt7);
  const Complex beta(-0.5, -half_rt7);
  return {Complex(2), Complex(2), Complex(2), r, r, r, beta};
}

// Deterministic uniform doubles independent of library distributions.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}

  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on the disk |z| <= radius.
  Complex disk(double radius) {
    const double r = radius * std::sqrt(unit());
    const double phi = 2.0 * M_PI * unit();
    return Complex(r * std::cos(phi), r * std::sin(phi));
  }

  // Matrix with independent entries uniform on the disk |z| <= radius.
  Mat2 matrix(double radius) {
    return Mat2{disk(radius), disk(radius), disk(radius), disk(radius)};
  }

  // Random unimodular matrix: normalize a disk matrix by a square root of
  // its determinant, redrawing while the determinant is too close to zero.
  Mat2 unimodular(double radius = 2.0) {
    for (;;) {
      Mat2 m = matrix(radius);
      const Complex det = m.det();
      if (std::abs(det) < 0.1) continue;
      const Complex s = std::sqrt(det);
      return Mat2{m.a / s, m.b / s, m.c / s, m.d / s};
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline double cdist(Complex x, Complex y) { return std::abs(x - y); }

inline double mdist(const Mat2& m, const Mat2& n) {
  return chaincv::max_abs(m - n);
}

}  // namespace testsupport
