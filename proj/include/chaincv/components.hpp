#pragma once

// The nine irreducible components of the character variety: six
// "conjugation" families X1.i(+-) indexed by a distinguished generator, two
// "binary" families X2(+-) with beta = +-sqrt(2), and the canonical
// three-dimensional family X3 cut out by a sextic in beta.

#include <string>
#include <utility>
#include <vector>

#include "chaincv/chars.hpp"
#include "chaincv/mat2.hpp"

namespace chaincv {

enum class Family { X1, X2, X3 };

struct ComponentId {
  Family family = Family::X3;
  int index = 0;  // 1..3 for X1, otherwise 0
  int sign = 0;   // +-1 for X1 and X2, otherwise 0

  static ComponentId x1(int index, int sign) {
    return {Family::X1, index, sign};
  }
  static ComponentId x2(int sign) { return {Family::X2, 0, sign}; }
  static ComponentId x3() { return {Family::X3, 0, 0}; }

  // "X1.1+", ..., "X1.3-", "X2+", "X2-", "X3".
  std::string str() const;
  static ComponentId parse(const std::string& text);

  // All nine components in canonical order (X1 families first, then X2+,
  // X2-, X3).
  static const std::vector<ComponentId>& all();

  bool operator==(const ComponentId& o) const {
    return family == o.family && index == o.index && sign == o.sign;
  }
};

// Point on X1.i(sign) from free parameters t_i and t_{i+1} (indices cyclic
// in {1,2,3}).  The remaining coordinates are forced:
//   t_{i-1}     = sign * t_{i+1},
//   beta        = sign * t_i,
//   r_{i-1,i+1} = sign,
//   r_{i,i+1}   solves r^2 - t_i t_{i+1} r + t_i^2 - 1 = 0  (branch 0/1,
//               roots in descending lexicographic order),
//   r_{i-1,i}   = t_{i-1} t_i - sign * r_{i,i+1}.
// Throws ExcludedTrace when t_{i+1}^2 is within margin_tol of 3 (eta = 5).
CharacterPoint sample_x1(int i, int sign, Complex t_i, Complex t_next,
                         int branch, const Tolerance& tol = {});

// Point on X2(sign) from free parameters t1, t2.  beta = sign*sqrt(2); t3
// solves t3^2 - t1 t2 beta t3 + t1^2 + t2^2 - 2 = 0; eta solves
// eta^2 - (sigma1 + 2) eta + sigma2 + 4 = 0; then
//   r_ij = (eta - t_i^2 - t_j^2) / (t_k beta - t_i t_j),  {i,j,k} = {1,2,3}.
// Throws DegenerateInput when a denominator or eta - 5 is within margin_tol
// of zero.
CharacterPoint sample_x2(int sign, Complex t1, Complex t2, int t3_branch,
                         int eta_branch, const Tolerance& tol = {});

// The six roots (with multiplicity) of the canonical family's sextic in
// beta at fixed meridian traces, via companion-matrix eigenvalues with a
// Newton polish and a multiplicity-aware refinement of root clusters.
// Sorted in descending lexicographic order.
std::vector<Complex> solve_sextic(Complex t1, Complex t2, Complex t3);

// Coefficients of the sextic, constant term first.
std::array<Complex, 7> sextic_coefficients(Complex t1, Complex t2, Complex t3);

struct RootCluster {
  Complex value{};
  int multiplicity = 0;
};

// Greedy clustering of near-coincident roots; representatives are cluster
// means, sorted descending lexicographically.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots,
                                       double dist = 1e-6);

// Point on X3 for the root_index-th sextic root (index into the sorted root
// list of solve_sextic).  Throws ExcludedRoot when the root violates one of
// the margins |beta^2 - 2|, |beta^3 - sigma1 beta + 2 t1 t2 t3|,
// |2 beta^2 - t1 t2 t3 beta + sigma1 - 6|.
CharacterPoint sample_x3(Complex t1, Complex t2, Complex t3, int root_index,
                         const Tolerance& tol = {});

// Same evaluation at an explicitly given root beta.
CharacterPoint sample_x3_at(Complex t1, Complex t2, Complex t3, Complex beta,
                            const Tolerance& tol = {});

struct MembershipReport {
  ComponentId component;
  std::vector<std::pair<std::string, double>> equation_residuals;
  std::vector<std::pair<std::string, double>> inequation_margins;
  bool verdict = false;

  double max_residual() const;
  double min_margin() const;
};

// Evaluates every defining equation of the component as a residual (relative
// to the combined magnitude of the equation's terms) and every exclusion as
// a margin; verdict = all residuals < eq_tol and all margins > margin_tol.
MembershipReport membership(const CharacterPoint& p, ComponentId c,
                            const Tolerance& tol = {});

// All components whose membership verdict is positive, in canonical order.
std::vector<ComponentId> classify(const CharacterPoint& p,
                                  const Tolerance& tol = {});

// Complex dimension of the component at p: chart dimension minus the
// numerical rank of the defining system's Jacobian (central differences
// with the given step; singular values above 1e-4 of the largest count
// toward the rank).  Throws RankAmbiguous when a singular value falls
// within a factor of 10 of the rank threshold.
int local_dimension(const CharacterPoint& p, ComponentId c,
                    double step = 1e-6);

}  // namespace chaincv
