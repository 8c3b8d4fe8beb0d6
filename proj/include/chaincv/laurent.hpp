#pragma once

#include <array>
#include <map>
#include <vector>

#include "chaincv/mat2.hpp"

namespace chaincv {

// Sparse Laurent polynomial in three commuting variables s1, s2, s3 with
// complex coefficients.  Terms are kept in lexicographic exponent order, so
// iteration (and hence serialization) is deterministic.  Arithmetic prunes
// coefficients below 1e-12 relative to the largest one, which keeps exact
// cancellations exact.
class LaurentPoly3 {
 public:
  using Key = std::array<int, 3>;

  LaurentPoly3() = default;

  static LaurentPoly3 constant(Complex c);
  static LaurentPoly3 monomial(int k1, int k2, int k3, Complex c = 1.0);

  // Adds c * s^k to the polynomial (merging with an existing term).
  void add_term(const Key& k, Complex c);

  // Coefficient of s^k (zero if absent).
  Complex coeff(const Key& k) const;

  const std::map<Key, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  double max_abs_coeff() const;

  // Drops terms smaller than rel_tol times the largest coefficient.
  LaurentPoly3& prune(double rel_tol = 1e-12);

  Complex eval(Complex s1, Complex s2, Complex s3) const;

  LaurentPoly3 operator-() const;
  LaurentPoly3& operator+=(const LaurentPoly3& rhs);
  LaurentPoly3& operator-=(const LaurentPoly3& rhs);

  friend LaurentPoly3 operator+(LaurentPoly3 lhs, const LaurentPoly3& rhs);
  friend LaurentPoly3 operator-(LaurentPoly3 lhs, const LaurentPoly3& rhs);
  friend LaurentPoly3 operator*(const LaurentPoly3& lhs,
                                const LaurentPoly3& rhs);
  friend LaurentPoly3 operator*(Complex scale, const LaurentPoly3& p);

 private:
  std::map<Key, Complex> terms_;
};

// Determinant of a square matrix of Laurent polynomials.  Only the sizes
// needed here (2x2 and 4x4) are supported; anything else, including ragged
// input, raises UnsupportedSize.
LaurentPoly3 det(const std::vector<std::vector<LaurentPoly3>>& m);

// Result of testing whether q equals s^shift * p (optionally up to sign).
struct MonomialMatch {
  bool match = false;
  std::array<int, 3> shift = {0, 0, 0};
  bool negated = false;
};

// Decides whether q = s1^a s2^b s3^c * p for some integer exponents, with
// coefficients compared to rel_tol relative to the largest coefficient.
// With sign_tolerant set, q = -s^shift * p also counts (reported via
// `negated`).  The zero polynomial matches only the zero polynomial.
MonomialMatch eq_up_to_monomial(const LaurentPoly3& p, const LaurentPoly3& q,
                                double rel_tol = 1e-9,
                                bool sign_tolerant = false);

}  // namespace chaincv
