#include "chaincv/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "chaincv/errors.hpp"

namespace chaincv {

namespace {

constexpr double kPruneRel = 1e-12;

Complex int_pow(Complex s, int k) {
  if (k < 0) return 1.0 / int_pow(s, -k);
  Complex v(1);
  while (k > 0) {
    if (k & 1) v *= s;
    s *= s;
    k >>= 1;
  }
  return v;
}

}  // namespace

LaurentPoly3 LaurentPoly3::constant(Complex c) {
  LaurentPoly3 p;
  p.add_term({0, 0, 0}, c);
  return p;
}

LaurentPoly3 LaurentPoly3::monomial(int k1, int k2, int k3, Complex c) {
  LaurentPoly3 p;
  p.add_term({k1, k2, k3}, c);
  return p;
}

void LaurentPoly3::add_term(const Key& k, Complex c) {
  if (c == Complex(0)) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0)) terms_.erase(it);
  }
}

Complex LaurentPoly3::coeff(const Key& k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? Complex(0) : it->second;
}

double LaurentPoly3::max_abs_coeff() const {
  double v = 0.0;
  for (const auto& [k, c] : terms_) v = std::max(v, std::abs(c));
  return v;
}

LaurentPoly3& LaurentPoly3::prune(double rel_tol) {
  const double cutoff = rel_tol * max_abs_coeff();
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= cutoff) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Complex LaurentPoly3::eval(Complex s1, Complex s2, Complex s3) const {
  Complex total(0);
  for (const auto& [k, c] : terms_) {
    total += c * int_pow(s1, k[0]) * int_pow(s2, k[1]) * int_pow(s3, k[2]);
  }
  return total;
}

LaurentPoly3 LaurentPoly3::operator-() const {
  LaurentPoly3 out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

LaurentPoly3& LaurentPoly3::operator+=(const LaurentPoly3& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, c);
  prune(kPruneRel);
  return *this;
}

LaurentPoly3& LaurentPoly3::operator-=(const LaurentPoly3& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
  prune(kPruneRel);
  return *this;
}

LaurentPoly3 operator+(LaurentPoly3 lhs, const LaurentPoly3& rhs) {
  lhs += rhs;
  return lhs;
}

LaurentPoly3 operator-(LaurentPoly3 lhs, const LaurentPoly3& rhs) {
  lhs -= rhs;
  return lhs;
}

LaurentPoly3 operator*(const LaurentPoly3& lhs, const LaurentPoly3& rhs) {
  LaurentPoly3 out;
  for (const auto& [ka, ca] : lhs.terms_) {
    for (const auto& [kb, cb] : rhs.terms_) {
      out.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    }
  }
  out.prune(kPruneRel);
  return out;
}

LaurentPoly3 operator*(Complex scale, const LaurentPoly3& p) {
  LaurentPoly3 out;
  if (scale == Complex(0)) return out;
  for (const auto& [k, c] : p.terms_) out.terms_.emplace(k, scale * c);
  return out;
}

namespace {

using Matrix = std::vector<std::vector<LaurentPoly3>>;

void require_square(const Matrix& m, std::size_t n) {
  if (m.size() != n) throw UnsupportedSize("det: matrix is not square");
  for (const auto& row : m) {
    if (row.size() != n) throw UnsupportedSize("det: matrix is not square");
  }
}

LaurentPoly3 det2(const Matrix& m) {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

LaurentPoly3 det3(const Matrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

LaurentPoly3 det4(const Matrix& m) {
  LaurentPoly3 total;
  double sign = 1.0;
  for (std::size_t col = 0; col < 4; ++col) {
    Matrix minor(3, std::vector<LaurentPoly3>(3));
    for (std::size_t r = 1; r < 4; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < 4; ++c) {
        if (c == col) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    total += Complex(sign) * (m[0][col] * det3(minor));
    sign = -sign;
  }
  return total;
}

}  // namespace

LaurentPoly3 det(const Matrix& m) {
  if (m.size() == 2) {
    require_square(m, 2);
    return det2(m);
  }
  if (m.size() == 4) {
    require_square(m, 4);
    return det4(m);
  }
  throw UnsupportedSize("det: only 2x2 and 4x4 matrices are supported");
}

namespace {

// Per-variable minimum exponent over terms whose coefficient is at least
// `cutoff` in absolute value.  Shifting a polynomial by a monomial shifts
// these minima by exactly the same amounts, which makes them a robust
// normalization anchor even when tiny numeric straggler terms survive.
std::array<int, 3> significant_min_exponents(const LaurentPoly3& p,
                                             double cutoff) {
  std::array<int, 3> low = {0, 0, 0};
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (std::abs(c) < cutoff) continue;
    if (first) {
      low = k;
      first = false;
    } else {
      for (int v = 0; v < 3; ++v) low[v] = std::min(low[v], k[v]);
    }
  }
  return low;
}

bool coefficients_match(const LaurentPoly3& p, const LaurentPoly3& q,
                        const std::array<int, 3>& shift, double abs_tol) {
  for (const auto& [k, c] : p.terms()) {
    const LaurentPoly3::Key moved = {k[0] + shift[0], k[1] + shift[1],
                                     k[2] + shift[2]};
    if (std::abs(c - q.coeff(moved)) > abs_tol) return false;
  }
  for (const auto& [k, c] : q.terms()) {
    const LaurentPoly3::Key back = {k[0] - shift[0], k[1] - shift[1],
                                    k[2] - shift[2]};
    if (std::abs(c - p.coeff(back)) > abs_tol) return false;
  }
  return true;
}

MonomialMatch match_strict(const LaurentPoly3& p, const LaurentPoly3& q,
                           double rel_tol) {
  MonomialMatch result;
  if (p.is_zero() || q.is_zero()) {
    result.match = p.is_zero() && q.is_zero();
    return result;
  }
  const double scale = std::max(p.max_abs_coeff(), q.max_abs_coeff());
  const auto low_p = significant_min_exponents(p, rel_tol * p.max_abs_coeff());
  const auto low_q = significant_min_exponents(q, rel_tol * q.max_abs_coeff());
  const std::array<int, 3> shift = {low_q[0] - low_p[0], low_q[1] - low_p[1],
                                    low_q[2] - low_p[2]};
  if (coefficients_match(p, q, shift, rel_tol * scale)) {
    result.match = true;
    result.shift = shift;
  }
  return result;
}

}  // namespace

MonomialMatch eq_up_to_monomial(const LaurentPoly3& p, const LaurentPoly3& q,
                                double rel_tol, bool sign_tolerant) {
  MonomialMatch result = match_strict(p, q, rel_tol);
  if (result.match || !sign_tolerant) return result;
  result = match_strict(p, -q, rel_tol);
  if (result.match) result.negated = true;
  return result;
}

}  // namespace chaincv
