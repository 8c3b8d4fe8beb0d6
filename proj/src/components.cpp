#include "chaincv/components.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace chaincv {

// ---- component ids -------------------------------------------------------

std::string ComponentId::str() const {
  switch (family) {
    case Family::X1: {
      std::ostringstream out;
      out << "X1." << index << (sign > 0 ? '+' : '-');
      return out.str();
    }
    case Family::X2:
      return sign > 0 ? "X2+" : "X2-";
    case Family::X3:
    default:
      return "X3";
  }
}

ComponentId ComponentId::parse(const std::string& text) {
  for (const auto& c : all()) {
    if (c.str() == text) return c;
  }
  throw std::invalid_argument("unknown component id: " + text);
}

const std::vector<ComponentId>& ComponentId::all() {
  static const std::vector<ComponentId> ids = {
      x1(1, +1), x1(1, -1), x1(2, +1), x1(2, -1), x1(3, +1), x1(3, -1),
      x2(+1),    x2(-1),    x3(),
  };
  return ids;
}

// ---- shared coordinate plumbing -------------------------------------------

namespace {

int cyc_next(int i) { return i == 3 ? 1 : i + 1; }
int cyc_prev(int i) { return i == 1 ? 3 : i - 1; }

Complex get_t(const CharacterPoint& p, int i) {
  switch (i) {
    case 1: return p.t1;
    case 2: return p.t2;
    default: return p.t3;
  }
}

Complex get_r(const CharacterPoint& p, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 1 && j == 2) return p.r12;
  if (i == 1 && j == 3) return p.r13;
  return p.r23;
}

void set_t(CharacterPoint& p, int i, Complex v) {
  switch (i) {
    case 1: p.t1 = v; break;
    case 2: p.t2 = v; break;
    default: p.t3 = v; break;
  }
}

void set_r(CharacterPoint& p, int i, int j, Complex v) {
  if (i > j) std::swap(i, j);
  if (i == 1 && j == 2) {
    p.r12 = v;
  } else if (i == 1 && j == 3) {
    p.r13 = v;
  } else {
    p.r23 = v;
  }
}

std::string tname(int i) { return "t" + std::to_string(i); }

std::string rname(int i, int j) {
  if (i > j) std::swap(i, j);
  return "r" + std::to_string(i) + std::to_string(j);
}

}  // namespace

// ---- conjugation families X1.i(+-) ----------------------------------------

CharacterPoint sample_x1(int i, int sign, Complex t_i, Complex t_next,
                         int branch, const Tolerance& tol) {
  if (i < 1 || i > 3 || (sign != 1 && sign != -1) || branch < 0 || branch > 1) {
    throw std::invalid_argument("sample_x1: bad index, sign, or branch");
  }
  if (std::abs(t_next * t_next - Complex(3)) <= tol.margin_tol) {
    throw ExcludedTrace(
        "sample_x1: t_{i+1}^2 = 3 is excluded (reducible locus)");
  }
  const int next = cyc_next(i);
  const int prev = cyc_prev(i);
  const double s = static_cast<double>(sign);

  // r_{i,i+1} solves r^2 - t_i t_{i+1} r + t_i^2 - 1 = 0.
  const auto roots = solve_quadratic(-t_i * t_next, t_i * t_i - Complex(1));
  const Complex r_mid = roots[static_cast<std::size_t>(branch)];

  CharacterPoint p;
  set_t(p, i, t_i);
  set_t(p, next, t_next);
  set_t(p, prev, s * t_next);
  p.beta = s * t_i;
  set_r(p, prev, next, Complex(s));
  set_r(p, i, next, r_mid);
  set_r(p, prev, i, s * t_next * t_i - s * r_mid);
  return p;
}

// ---- binary families X2(+-) ------------------------------------------------

CharacterPoint sample_x2(int sign, Complex t1, Complex t2, int t3_branch,
                         int eta_branch, const Tolerance& tol) {
  if ((sign != 1 && sign != -1) || t3_branch < 0 || t3_branch > 1 ||
      eta_branch < 0 || eta_branch > 1) {
    throw std::invalid_argument("sample_x2: bad sign or branch");
  }
  const Complex beta = static_cast<double>(sign) * std::sqrt(2.0);

  // t3 solves t3^2 - t1 t2 beta t3 + t1^2 + t2^2 - 2 = 0.
  const auto t3roots =
      solve_quadratic(-t1 * t2 * beta, t1 * t1 + t2 * t2 - Complex(2));
  const Complex t3 = t3roots[static_cast<std::size_t>(t3_branch)];

  const SigmaTriple sig = sigma_of(t1, t2, t3);
  const auto etaroots =
      solve_quadratic(-(sig.sigma1 + 2.0), sig.sigma2 + 4.0);
  const Complex eta = etaroots[static_cast<std::size_t>(eta_branch)];

  if (std::abs(eta - Complex(5)) <= tol.margin_tol) {
    throw DegenerateInput("sample_x2: eta = 5 (reducible locus)");
  }
  const Complex d12 = t3 * beta - t1 * t2;
  const Complex d13 = t2 * beta - t1 * t3;
  const Complex d23 = t1 * beta - t2 * t3;
  for (const auto& [label, d] : {std::pair{"t3*beta - t1*t2", d12},
                                 std::pair{"t2*beta - t1*t3", d13},
                                 std::pair{"t1*beta - t2*t3", d23}}) {
    if (std::abs(d) <= tol.margin_tol) {
      throw DegenerateInput(std::string("sample_x2: denominator ") + label +
                            " vanishes");
    }
  }

  CharacterPoint p;
  p.t1 = t1;
  p.t2 = t2;
  p.t3 = t3;
  p.beta = beta;
  p.r12 = (eta - t1 * t1 - t2 * t2) / d12;
  p.r13 = (eta - t1 * t1 - t3 * t3) / d13;
  p.r23 = (eta - t2 * t2 - t3 * t3) / d23;
  return p;
}

// ---- the canonical family's sextic -----------------------------------------

std::array<Complex, 7> sextic_coefficients(Complex t1, Complex t2,
                                           Complex t3) {
  const SigmaTriple s = sigma_of(t1, t2, t3);
  const Complex m = t1 * t2 * t3;
  return {
      4.0 * s.sigma2 - s.sigma1 * s.sigma1,                      // beta^0
      -8.0 * m,                                                  // beta^1
      s.sigma1 * s.sigma1 + s.sigma3 - 4.0 * s.sigma2 + 2.0 * s.sigma1,
      (8.0 - s.sigma1) * m,                                      // beta^3
      s.sigma2 - 2.0 * s.sigma1 - 1.0,                           // beta^4
      -m,                                                        // beta^5
      Complex(1),                                                // beta^6
  };
}

namespace {

Complex horner(const std::array<Complex, 7>& c, Complex z) {
  Complex v = c[6];
  for (int k = 5; k >= 0; --k) v = v * z + c[k];
  return v;
}

Complex horner_deriv(const std::array<Complex, 7>& c, Complex z) {
  Complex v = 6.0 * c[6];
  for (int k = 5; k >= 1; --k) v = v * z + static_cast<double>(k) * c[k];
  return v;
}

// Sum of |c_k| |z|^k: the natural residual scale at z.
double horner_scale(const std::array<Complex, 7>& c, Complex z) {
  const double az = std::abs(z);
  double v = std::abs(c[6]);
  for (int k = 5; k >= 0; --k) v = v * az + std::abs(c[k]);
  return v;
}

// Coefficients of the derivative, kept in the same fixed-size layout with
// the vacated top coefficient zeroed.
std::array<Complex, 7> poly_derivative(const std::array<Complex, 7>& c) {
  std::array<Complex, 7> d{};
  for (std::size_t k = 1; k < 7; ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

// Descending (Re, Im) order that treats coordinates matching to within a
// small tolerance as ties, so that e.g. a conjugate pair (equal real parts
// up to rounding) is always ordered by the imaginary part rather than by
// last-bit noise in the real part.
bool desc_lex_with_ties(Complex x, Complex y) {
  const double tol = 1e-9 * (1.0 + std::max(std::abs(x), std::abs(y)));
  if (std::abs(x.real() - y.real()) > tol) return x.real() > y.real();
  if (std::abs(x.imag() - y.imag()) > tol) return x.imag() > y.imag();
  return false;
}

// Insertion sort: immune to the (harmless, but formally non-strict) ties of
// the tolerant comparator, and the inputs are tiny.
template <typename T, typename Greater>
void sort_descending(std::vector<T>& v, Greater greater) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    T key = v[i];
    std::size_t j = i;
    for (; j > 0 && greater(key, v[j - 1]); --j) v[j] = v[j - 1];
    v[j] = key;
  }
}

// Companion-matrix eigenvalues locate an m-fold root only to O(eps^(1/m)),
// far looser than the 1e-6 clustering distance, and Newton's method on p
// itself cannot close the gap: near a multiple root both p and p' evaluate
// below their rounding floors, so the step is noise.  Instead, average each
// near-coincident group (the first-order eigenvalue scatter cancels in the
// mean), then polish the average with Newton on the (m-1)-th derivative,
// which has a *simple* root wherever p has an m-fold one.  The refinement
// is kept only when the polished value annihilates p at rounding level;
// a loose group of genuinely distinct roots fails that gate and is left
// at the accuracy the eigensolver delivered.
void refine_root_groups(const std::array<Complex, 7>& c,
                        std::vector<Complex>& roots) {
  const std::size_t n = roots.size();
  std::vector<char> done(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (done[a]) continue;
    const double coarse = 2e-3 * (1.0 + std::abs(roots[a]));
    std::vector<std::size_t> members;
    for (std::size_t b = 0; b < n; ++b) {
      if (!done[b] && std::abs(roots[b] - roots[a]) <= coarse) {
        members.push_back(b);
      }
    }
    for (std::size_t b : members) done[b] = 1;
    if (members.size() < 2) continue;

    Complex mean(0);
    for (std::size_t b : members) mean += roots[b];
    mean /= static_cast<double>(members.size());

    auto d = c;
    for (std::size_t k = 1; k < members.size(); ++k) d = poly_derivative(d);
    Complex z = mean;
    for (int it = 0; it < 8; ++it) {
      const Complex dd = horner_deriv(d, z);
      if (std::abs(dd) < 1e-30) break;
      const Complex step = horner(d, z) / dd;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    // If Newton ran off to some other root of the derivative, the plain
    // mean is still a second-order-accurate estimate; fall back to it.
    if (std::abs(z - mean) > coarse) z = mean;
    if (std::abs(horner(c, z)) <= 1e-12 * (1.0 + horner_scale(c, z))) {
      for (std::size_t b : members) roots[b] = z;
    }
  }
}

}  // namespace

std::vector<Complex> solve_sextic(Complex t1, Complex t2, Complex t3) {
  const auto c = sextic_coefficients(t1, t2, t3);

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(6, 6);
  for (int r = 1; r < 6; ++r) comp(r, r - 1) = Complex(1);
  for (int r = 0; r < 6; ++r) comp(r, 5) = -c[static_cast<std::size_t>(r)];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("solve_sextic: eigenvalue iteration failed");
  }

  std::vector<Complex> roots(6);
  for (int k = 0; k < 6; ++k) {
    Complex z = solver.eigenvalues()(k);
    for (int it = 0; it < 4; ++it) {  // Newton polish; exact for simple roots
      const Complex dp = horner_deriv(c, z);
      if (std::abs(dp) < 1e-30) break;
      const Complex step = horner(c, z) / dp;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    roots[static_cast<std::size_t>(k)] = z;
  }
  refine_root_groups(c, roots);
  sort_descending(roots, desc_lex_with_ties);
  return roots;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double dist) {
  std::vector<RootCluster> clusters;
  std::vector<Complex> sums;
  for (const Complex z : roots) {
    bool placed = false;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      if (std::abs(z - clusters[k].value) <= dist) {
        sums[k] += z;
        clusters[k].multiplicity += 1;
        clusters[k].value = sums[k] / static_cast<double>(clusters[k].multiplicity);
        placed = true;
        break;
      }
    }
    if (!placed) {
      clusters.push_back({z, 1});
      sums.push_back(z);
    }
  }
  sort_descending(clusters, [](const RootCluster& x, const RootCluster& y) {
    return desc_lex_with_ties(x.value, y.value);
  });
  return clusters;
}

CharacterPoint sample_x3_at(Complex t1, Complex t2, Complex t3, Complex beta,
                            const Tolerance& tol) {
  const auto c = sextic_coefficients(t1, t2, t3);
  if (std::abs(horner(c, beta)) > 1e-6 * (1.0 + horner_scale(c, beta))) {
    throw ExcludedRoot("sample_x3: beta is not a root of the sextic");
  }
  const SigmaTriple sig = sigma_of(t1, t2, t3);
  const Complex m = t1 * t2 * t3;
  const Complex b2 = beta * beta;
  const Complex b3 = b2 * beta;
  const Complex denom = b3 - sig.sigma1 * beta + 2.0 * m;

  if (std::abs(b2 - Complex(2)) <= tol.margin_tol) {
    throw ExcludedRoot("sample_x3: beta^2 = 2 is excluded");
  }
  if (std::abs(denom) <= tol.margin_tol) {
    throw ExcludedRoot(
        "sample_x3: beta^3 - sigma1*beta + 2*t1*t2*t3 vanishes");
  }
  if (std::abs(2.0 * b2 - m * beta + sig.sigma1 - Complex(6)) <=
      tol.margin_tol) {
    throw ExcludedRoot(
        "sample_x3: 2*beta^2 - t1*t2*t3*beta + sigma1 - 6 vanishes "
        "(reducible locus)");
  }

  const Complex q1 = t1 * t1, q2 = t2 * t2, q3 = t3 * t3;
  const Complex num12 = t1 * t2 * b3 + (1.0 - q1 - q2) * t3 * b2 +
                        (q3 - 2.0) * t1 * t2 * beta +
                        (sig.sigma1 - 2.0 * q3) * t3;
  const Complex num13 = t1 * t3 * b3 + (1.0 - q1 - q3) * t2 * b2 +
                        (q2 - 2.0) * t1 * t3 * beta +
                        (sig.sigma1 - 2.0 * q2) * t2;
  const Complex num23 = t2 * t3 * b3 + (1.0 - q2 - q3) * t1 * b2 +
                        (q1 - 2.0) * t2 * t3 * beta +
                        (sig.sigma1 - 2.0 * q1) * t1;

  CharacterPoint p;
  p.t1 = t1;
  p.t2 = t2;
  p.t3 = t3;
  p.beta = beta;
  p.r12 = num12 / denom;
  p.r13 = num13 / denom;
  p.r23 = num23 / denom;
  return p;
}

CharacterPoint sample_x3(Complex t1, Complex t2, Complex t3, int root_index,
                         const Tolerance& tol) {
  if (root_index < 0 || root_index > 5) {
    throw std::invalid_argument("sample_x3: root_index must be in [0, 5]");
  }
  const auto roots = solve_sextic(t1, t2, t3);
  return sample_x3_at(t1, t2, t3, roots[static_cast<std::size_t>(root_index)],
                      tol);
}

// ---- membership ------------------------------------------------------------

double MembershipReport::max_residual() const {
  double v = 0.0;
  for (const auto& [label, r] : equation_residuals) v = std::max(v, r);
  return v;
}

double MembershipReport::min_margin() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& [label, m] : inequation_margins) v = std::min(v, m);
  return v;
}

MembershipReport membership(const CharacterPoint& p, ComponentId c,
                            const Tolerance& tol) {
  MembershipReport report;
  report.component = c;
  // Residuals are reported relative to the combined size of the equation's
  // terms, so a verdict means "vanishes at rounding level" regardless of how
  // large the coordinates entering the identity are.
  auto abs_sum = [](std::initializer_list<Complex> terms) {
    double s = 0.0;
    for (const Complex& t : terms) s += std::abs(t);
    return s;
  };
  auto equation = [&](const std::string& label, Complex v, double scale) {
    report.equation_residuals.emplace_back(label,
                                           std::abs(v) / (1.0 + scale));
  };
  auto inequation = [&](const std::string& label, Complex v) {
    report.inequation_margins.emplace_back(label, std::abs(v));
  };

  switch (c.family) {
    case Family::X1: {
      const int i = c.index;
      const int next = cyc_next(i);
      const int prev = cyc_prev(i);
      const double s = static_cast<double>(c.sign);
      const Complex ti = get_t(p, i);
      const Complex tn = get_t(p, next);
      const Complex tp = get_t(p, prev);
      const Complex rmid = get_r(p, i, next);
      const std::string join = c.sign > 0 ? " - " : " + ";

      equation(tname(next) + join + tname(prev), tn - s * tp,
               abs_sum({tn, tp}));
      equation("beta" + join + tname(i), p.beta - s * ti,
               abs_sum({p.beta, ti}));
      equation(rname(prev, next) + join + "1", get_r(p, prev, next) - s,
               abs_sum({get_r(p, prev, next), Complex(1)}));
      equation(rname(prev, i) + " - " + tname(prev) + "*" + tname(i) +
                   (c.sign > 0 ? " + " : " - ") + rname(i, next),
               get_r(p, prev, i) - (tp * ti - s * rmid),
               abs_sum({get_r(p, prev, i), tp * ti, rmid}));
      equation(rname(i, next) + "^2 - " + tname(i) + "*" + tname(next) + "*" +
                   rname(i, next) + " + " + tname(i) + "^2 - 1",
               rmid * rmid - ti * tn * rmid + ti * ti - 1.0,
               abs_sum({rmid * rmid, ti * tn * rmid, ti * ti, Complex(1)}));
      inequation(tname(next) + "^2 - 3", tn * tn - 3.0);
      break;
    }
    case Family::X2: {
      const double s = static_cast<double>(c.sign);
      const Complex beta0 = s * std::sqrt(2.0);
      const SigmaTriple sig = sigma_of(p.t1, p.t2, p.t3);
      const Complex eta0 = eta(p, TracePair::P12);
      const Complex d12 = p.t3 * p.beta - p.t1 * p.t2;
      const Complex d13 = p.t2 * p.beta - p.t1 * p.t3;
      const Complex d23 = p.t1 * p.beta - p.t2 * p.t3;

      equation(std::string("beta") + (c.sign > 0 ? " - " : " + ") + "sqrt(2)",
               p.beta - beta0, abs_sum({p.beta, beta0}));
      equation("sigma1 - 2 - t1*t2*t3*beta",
               sig.sigma1 - 2.0 - p.t1 * p.t2 * p.t3 * p.beta,
               abs_sum({sig.sigma1, Complex(2), p.t1 * p.t2 * p.t3 * p.beta}));
      equation("eta pairwise spread", Complex(eta_spread(p)),
               std::abs(eta0));
      equation("eta^2 - (sigma1 + 2)*eta + sigma2 + 4",
               eta0 * eta0 - (sig.sigma1 + 2.0) * eta0 + sig.sigma2 + 4.0,
               abs_sum({eta0 * eta0, (sig.sigma1 + 2.0) * eta0, sig.sigma2,
                        Complex(4)}));
      equation("r12*(t3*beta - t1*t2) - (eta - t1^2 - t2^2)",
               p.r12 * d12 - (eta0 - p.t1 * p.t1 - p.t2 * p.t2),
               abs_sum({p.r12 * d12, eta0, p.t1 * p.t1, p.t2 * p.t2}));
      equation("r13*(t2*beta - t1*t3) - (eta - t1^2 - t3^2)",
               p.r13 * d13 - (eta0 - p.t1 * p.t1 - p.t3 * p.t3),
               abs_sum({p.r13 * d13, eta0, p.t1 * p.t1, p.t3 * p.t3}));
      equation("r23*(t1*beta - t2*t3) - (eta - t2^2 - t3^2)",
               p.r23 * d23 - (eta0 - p.t2 * p.t2 - p.t3 * p.t3),
               abs_sum({p.r23 * d23, eta0, p.t2 * p.t2, p.t3 * p.t3}));
      inequation("eta - 5", eta0 - 5.0);
      inequation("t3*beta - t1*t2", d12);
      inequation("t2*beta - t1*t3", d13);
      inequation("t1*beta - t2*t3", d23);
      break;
    }
    case Family::X3: {
      const auto coeffs = sextic_coefficients(p.t1, p.t2, p.t3);
      const SigmaTriple sig = sigma_of(p.t1, p.t2, p.t3);
      const Complex m = p.t1 * p.t2 * p.t3;
      const Complex b2 = p.beta * p.beta;
      const Complex b3 = b2 * p.beta;
      const Complex denom = b3 - sig.sigma1 * p.beta + 2.0 * m;
      const Complex q1 = p.t1 * p.t1, q2 = p.t2 * p.t2, q3 = p.t3 * p.t3;
      const std::array<Complex, 4> n12 = {
          p.t1 * p.t2 * b3, (1.0 - q1 - q2) * p.t3 * b2,
          (q3 - 2.0) * p.t1 * p.t2 * p.beta, (sig.sigma1 - 2.0 * q3) * p.t3};
      const std::array<Complex, 4> n13 = {
          p.t1 * p.t3 * b3, (1.0 - q1 - q3) * p.t2 * b2,
          (q2 - 2.0) * p.t1 * p.t3 * p.beta, (sig.sigma1 - 2.0 * q2) * p.t2};
      const std::array<Complex, 4> n23 = {
          p.t2 * p.t3 * b3, (1.0 - q2 - q3) * p.t1 * b2,
          (q1 - 2.0) * p.t2 * p.t3 * p.beta, (sig.sigma1 - 2.0 * q1) * p.t1};
      const Complex num12 = n12[0] + n12[1] + n12[2] + n12[3];
      const Complex num13 = n13[0] + n13[1] + n13[2] + n13[3];
      const Complex num23 = n23[0] + n23[1] + n23[2] + n23[3];

      equation("sextic(beta)", horner(coeffs, p.beta),
               horner_scale(coeffs, p.beta));
      equation("r12*denom - numer12", p.r12 * denom - num12,
               abs_sum({p.r12 * denom, n12[0], n12[1], n12[2], n12[3]}));
      equation("r13*denom - numer13", p.r13 * denom - num13,
               abs_sum({p.r13 * denom, n13[0], n13[1], n13[2], n13[3]}));
      equation("r23*denom - numer23", p.r23 * denom - num23,
               abs_sum({p.r23 * denom, n23[0], n23[1], n23[2], n23[3]}));
      inequation("beta^2 - 2", b2 - 2.0);
      inequation("denom = beta^3 - sigma1*beta + 2*t1*t2*t3", denom);
      inequation("2*beta^2 - t1*t2*t3*beta + sigma1 - 6",
                 2.0 * b2 - m * p.beta + sig.sigma1 - 6.0);
      break;
    }
  }

  bool ok = true;
  for (const auto& [label, r] : report.equation_residuals) {
    if (!(r < tol.eq_tol)) ok = false;
  }
  for (const auto& [label, m2] : report.inequation_margins) {
    if (!(m2 > tol.margin_tol)) ok = false;
  }
  report.verdict = ok;
  return report;
}

std::vector<ComponentId> classify(const CharacterPoint& p,
                                  const Tolerance& tol) {
  std::vector<ComponentId> hits;
  for (const auto& c : ComponentId::all()) {
    if (membership(p, c, tol).verdict) hits.push_back(c);
  }
  return hits;
}

// ---- local dimension probe --------------------------------------------------

namespace {

struct ChartSystem {
  std::vector<Complex> coords;
  // Holomorphic defining equations evaluated at arbitrary chart coordinates.
  std::function<std::vector<Complex>(const std::vector<Complex>&)> eval;
};

ChartSystem chart_for(const CharacterPoint& p, ComponentId c) {
  switch (c.family) {
    case Family::X1: {
      const int i = c.index;
      const int next = cyc_next(i);
      ChartSystem sys;
      sys.coords = {get_t(p, i), get_t(p, next), get_r(p, i, next)};
      sys.eval = [](const std::vector<Complex>& v) {
        const Complex ti = v[0], tn = v[1], r = v[2];
        return std::vector<Complex>{r * r - ti * tn * r + ti * ti - 1.0};
      };
      return sys;
    }
    case Family::X2: {
      const Complex beta0 = static_cast<double>(c.sign) * std::sqrt(2.0);
      ChartSystem sys;
      sys.coords = {p.t1, p.t2, p.t3, eta(p, TracePair::P12)};
      sys.eval = [beta0](const std::vector<Complex>& v) {
        const SigmaTriple sig = sigma_of(v[0], v[1], v[2]);
        const Complex et = v[3];
        return std::vector<Complex>{
            sig.sigma1 - 2.0 - v[0] * v[1] * v[2] * beta0,
            et * et - (sig.sigma1 + 2.0) * et + sig.sigma2 + 4.0};
      };
      return sys;
    }
    case Family::X3:
    default: {
      ChartSystem sys;
      sys.coords = {p.t1, p.t2, p.t3, p.beta};
      sys.eval = [](const std::vector<Complex>& v) {
        const auto c6 = sextic_coefficients(v[0], v[1], v[2]);
        return std::vector<Complex>{horner(c6, v[3])};
      };
      return sys;
    }
  }
}

}  // namespace

int local_dimension(const CharacterPoint& p, ComponentId c, double step) {
  const ChartSystem sys = chart_for(p, c);
  const std::size_t n = sys.coords.size();
  const std::size_t m = sys.eval(sys.coords).size();

  // Central-difference Jacobian; the equations are holomorphic, so a real
  // step recovers the complex derivative.
  Eigen::MatrixXcd jac(static_cast<Eigen::Index>(m),
                       static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> hi = sys.coords;
    std::vector<Complex> lo = sys.coords;
    hi[j] += step;
    lo[j] -= step;
    const auto fhi = sys.eval(hi);
    const auto flo = sys.eval(lo);
    for (std::size_t i = 0; i < m; ++i) {
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (fhi[i] - flo[i]) / (2.0 * step);
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return static_cast<int>(n);

  const double threshold = 1e-4 * smax;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) >= threshold / 10.0 && sv(k) <= threshold * 10.0) {
      std::ostringstream msg;
      msg << "local_dimension: singular value " << sv(k)
          << " within a factor 10 of threshold " << threshold;
      throw RankAmbiguous(msg.str());
    }
    if (sv(k) > threshold) ++rank;
  }
  return static_cast<int>(n) - rank;
}

}  // namespace chaincv
