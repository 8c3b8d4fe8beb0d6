#include "chaincv/chars.hpp"

#include <algorithm>
#include <sstream>

namespace chaincv {

namespace {

Complex eta_of(Complex ti, Complex tj, Complex rij) {
  return rij * rij - ti * tj * rij + ti * ti + tj * tj + 1.0;
}

}  // namespace

Complex eta(const CharacterPoint& p, TracePair pair) {
  switch (pair) {
    case TracePair::P12:
      return eta_of(p.t1, p.t2, p.r12);
    case TracePair::P13:
      return eta_of(p.t1, p.t3, p.r13);
    case TracePair::P23:
    default:
      return eta_of(p.t2, p.t3, p.r23);
  }
}

double eta_spread(const CharacterPoint& p) {
  const Complex e12 = eta(p, TracePair::P12);
  const Complex e13 = eta(p, TracePair::P13);
  const Complex e23 = eta(p, TracePair::P23);
  return std::max({std::abs(e12 - e13), std::abs(e12 - e23),
                   std::abs(e13 - e23)});
}

Complex eta_value(const CharacterPoint& p, double eq_tol) {
  const double spread = eta_spread(p);
  if (spread > eq_tol) {
    std::ostringstream msg;
    msg << "eta values disagree across pairs (spread " << spread << ")";
    throw EtaInconsistent(msg.str());
  }
  return eta(p, TracePair::P12);
}

bool is_irreducible(const CharacterPoint& p, const Tolerance& tol) {
  const Complex e = eta_value(p, tol.eq_tol);
  return std::abs(e - Complex(5.0)) > tol.margin_tol;
}

CharacterPoint rotate(const CharacterPoint& p) {
  CharacterPoint q;
  q.t1 = p.t2;
  q.t2 = p.t3;
  q.t3 = p.t1;
  q.r12 = p.r23;
  q.r13 = p.r12;
  q.r23 = p.r13;
  q.beta = p.beta;
  return q;
}

SigmaTriple sigma_of(Complex t1, Complex t2, Complex t3) {
  const Complex q1 = t1 * t1, q2 = t2 * t2, q3 = t3 * t3;
  return {q1 + q2 + q3, q1 * q2 + q1 * q3 + q2 * q3, q1 * q2 * q3};
}

FrickePair fricke_pair(const Mat2& x1, const Mat2& x2, const Mat2& x3,
                       double eq_tol) {
  for (const Mat2* m : {&x1, &x2, &x3}) {
    if (!m->is_unimodular(eq_tol)) {
      throw NonUnimodular("fricke_pair: inputs must have determinant 1");
    }
  }
  const Complex fwd = (x1 * x2 * x3).trace();
  const Complex rev = (x1 * x3 * x2).trace();
  return {fwd + rev, fwd * rev};
}

double point_distance(const CharacterPoint& p, const CharacterPoint& q) {
  return std::max({std::abs(p.t1 - q.t1), std::abs(p.t2 - q.t2),
                   std::abs(p.t3 - q.t3), std::abs(p.r12 - q.r12),
                   std::abs(p.r13 - q.r13), std::abs(p.r23 - q.r23),
                   std::abs(p.beta - q.beta)});
}

}  // namespace chaincv
