#pragma once

// Character coordinates for the rank-3 chain-link group: the 7-tuple of
// meridian traces t_i, difference traces r_ij = tr(x_i x_j^-1), and the
// auxiliary coordinate beta, together with the pairwise irreducibility
// functional eta.

#include "chaincv/mat2.hpp"

namespace chaincv {

struct CharacterPoint {
  Complex t1{}, t2{}, t3{}, r12{}, r13{}, r23{}, beta{};

  // Trace of the triple product x1 x2 x3, determined by the tuple.
  Complex t123() const { return t1 * t2 * t3 - 2.0 * beta; }

  // Product traces t_ij = tr(x_i x_j) = t_i t_j - r_ij.
  Complex t12() const { return t1 * t2 - r12; }
  Complex t13() const { return t1 * t3 - r13; }
  Complex t23() const { return t2 * t3 - r23; }
};

enum class TracePair { P12, P13, P23 };

// eta for one generator pair:
//   eta = r_ij^2 - t_i t_j r_ij + t_i^2 + t_j^2 + 1.
// This equals tr[x_i^-1, x_j] + 3; the pair is irreducible iff eta != 5.
Complex eta(const CharacterPoint& p, TracePair pair);

// Max pairwise distance between the three eta values.
double eta_spread(const CharacterPoint& p);

// Common eta value; requires the three pairwise values to agree within
// eq_tol (throws EtaInconsistent otherwise).
Complex eta_value(const CharacterPoint& p, double eq_tol);

// True iff the (consistent) eta value stays margin_tol away from 5.
bool is_irreducible(const CharacterPoint& p, const Tolerance& tol = {});

// Cyclic relabeling of the generators: (t1,t2,t3) -> (t2,t3,t1) and
// (r12,r13,r23) -> (r23,r12,r13); beta is invariant.
CharacterPoint rotate(const CharacterPoint& p);

// Elementary symmetric functions of the squared meridian traces.
struct SigmaTriple {
  Complex sigma1{}, sigma2{}, sigma3{};
};

SigmaTriple sigma_of(Complex t1, Complex t2, Complex t3);

// Coefficients of the quadratic z^2 - nu1 z + nu0 satisfied by the two
// triple-product traces tr(x1 x2 x3) and tr(x1 x3 x2).
struct FrickePair {
  Complex nu1{}, nu0{};
};

// Computed at matrix level from a unimodular triple.
FrickePair fricke_pair(const Mat2& x1, const Mat2& x2, const Mat2& x3,
                       double eq_tol = 1e-9);

// Max coordinatewise distance between two character tuples.
double point_distance(const CharacterPoint& p, const CharacterPoint& q);

}  // namespace chaincv
