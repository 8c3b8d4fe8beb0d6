#include "chaincv/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "chaincv/components.hpp"
#include "chaincv/errors.hpp"
#include "chaincv/laurent.hpp"
#include "chaincv/reconstruct.hpp"
#include "chaincv/sampling.hpp"
#include "chaincv/tap.hpp"

namespace chaincv {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << v;
  return out.str();
}

CharacterPoint pinned_cusped_point() {
  const double half_rt7 = std::sqrt(7.0) / 2.0;
  const Complex r(0.5, -half_rt7);
  const Complex beta(-0.5, -half_rt7);
  return {Complex(2), Complex(2), Complex(2), r, r, r, beta};
}

// Character points plus their reconstructions, shared by criteria 3-6.
struct SampleBank {
  std::vector<CharacterPoint> points;
  std::vector<Representation> reps;
};

Mat2 draw_matrix(Rng& rng, double radius) {
  const Complex a = rng.disk(radius);
  const Complex b = rng.disk(radius);
  const Complex c = rng.disk(radius);
  const Complex d = rng.disk(radius);
  return {a, b, c, d};
}

Mat2 draw_unimodular(Rng& rng) {
  for (;;) {
    const Mat2 m = draw_matrix(rng, 2.0);
    const Complex det = m.det();
    if (std::abs(det) < 0.1) continue;  // keep the normalization stable
    return (1.0 / std::sqrt(det)) * m;
  }
}

// Wraps one criterion so an escaped exception fails it instead of aborting
// the whole suite.
CriterionResult run_criterion(int number, const std::string& name,
                              const std::function<void(CriterionResult&)>& body) {
  CriterionResult out;
  out.number = number;
  out.name = name;
  Stopwatch watch;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail = std::string("threw: ") + e.what();
  }
  out.seconds = watch.seconds();
  return out;
}

// ---- criterion bodies -------------------------------------------------------

void cusped_reproduction(CriterionResult& out, const SelftestConfig& cfg,
                         const Tolerance& tol) {
  const double eq = cfg.eq_tol_override.value_or(1e-9);
  Stopwatch watch;
  const HyperbolicSummary summary = hyperbolic_pipeline(tol);
  const double elapsed = watch.seconds();
  const double dist = point_distance(summary.point, pinned_cusped_point());
  out.passed = dist <= eq && elapsed < 1.0;
  out.detail = "distance to the pinned tuple " + fmt(dist) +
               ", reconstruction defect " + fmt(summary.relator_residual);
  if (elapsed >= 1.0) out.detail += "; exceeded the 1 s budget";
}

void sextic_multiset(CriterionResult& out, const SelftestConfig& cfg,
                     const Tolerance& tol) {
  const double acc = cfg.eq_tol_override.value_or(1e-7);
  const auto roots = solve_sextic(2.0, 2.0, 2.0);
  const auto clusters = cluster_roots(roots, 1e-6);

  const double half_rt7 = std::sqrt(7.0) / 2.0;
  const std::vector<RootCluster> expected = {
      {Complex(3), 1},
      {Complex(2), 3},
      {Complex(-0.5, half_rt7), 1},
      {Complex(-0.5, -half_rt7), 1},
  };

  // Match as a multiset: every expected root must claim a distinct cluster
  // with the same multiplicity, regardless of ordering.
  bool ok = clusters.size() == expected.size();
  double worst = 0.0;
  std::vector<char> used(clusters.size(), 0);
  if (ok) {
    for (const RootCluster& want : expected) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_k = clusters.size();
      for (std::size_t k = 0; k < clusters.size(); ++k) {
        if (used[k] || clusters[k].multiplicity != want.multiplicity) continue;
        const double d = std::abs(clusters[k].value - want.value);
        if (d < best) {
          best = d;
          best_k = k;
        }
      }
      if (best_k == clusters.size() || best > acc) {
        ok = false;
        break;
      }
      used[best_k] = 1;
      worst = std::max(worst, best);
    }
  }

  // The integer roots 3 and 2 sit on excluded loci; the conjugate pair of
  // complex roots must be admissible.
  int rejected = 0, admitted = 0;
  for (int idx = 0; idx < 6; ++idx) {
    try {
      (void)sample_x3(2.0, 2.0, 2.0, idx, tol);
      ++admitted;
    } catch (const ExcludedRoot&) {
      ++rejected;
    }
  }
  if (rejected != 4 || admitted != 2) ok = false;

  out.passed = ok;
  out.detail = "worst root distance " + fmt(worst) + ", " +
               std::to_string(rejected) + " roots excluded, " +
               std::to_string(admitted) + " admitted";
}

void sampling_round_trip(CriterionResult& out, const SelftestConfig& cfg,
                         const Tolerance& tol, SampleBank& bank) {
  const double eq = cfg.eq_tol_override.value_or(1e-8);
  Stopwatch watch;
  double worst_relator = 0.0;
  double worst_round_trip = 0.0;
  for (const auto& c : ComponentId::all()) {
    const auto points = sample_many(c, cfg.per_component, cfg.seed, tol);
    for (const auto& p : points) {
      const Representation rep = representation_from_point(p, tol);
      worst_relator = std::max(worst_relator, relator_residuals(rep).max());
      worst_round_trip =
          std::max(worst_round_trip, point_distance(character_of(rep), p));
      bank.points.push_back(p);
      bank.reps.push_back(rep);
    }
  }
  const double elapsed = watch.seconds();
  out.passed =
      worst_relator <= eq && worst_round_trip <= eq && elapsed < 30.0;
  out.detail = std::to_string(bank.points.size()) +
               " points; worst relator defect " + fmt(worst_relator) +
               ", worst round trip " + fmt(worst_round_trip);
  if (elapsed >= 30.0) out.detail += "; exceeded the 30 s budget";
}

void closure_identities(CriterionResult& out, const SelftestConfig& cfg,
                        const SampleBank& bank) {
  const double eq = cfg.eq_tol_override.value_or(1e-8);
  double worst = 0.0;
  for (std::size_t k = 0; k < bank.points.size(); ++k) {
    const CharacterPoint& p = bank.points[k];
    const Representation& rep = bank.reps[k];
    const AlphaBeta ab = alpha_beta_of(p);
    const Complex alpha = ab.alpha, beta = ab.beta;

    const double linear1 =
        std::abs((p.r12 * p.r12 - 1.0) * alpha - (p.t1 - p.t2 * p.r12) * beta);
    const double linear2 =
        std::abs((p.t1 * p.r12 - p.t2) * alpha + p.r12 * beta - p.t3);
    const double quadratic =
        std::abs(alpha * alpha + p.t1 * alpha * beta + beta * beta - 1.0);
    const double r13_closure =
        std::abs(p.r13 - (p.r12 * alpha + p.t2 * beta));
    const Mat2 shifted = rep.x3 * rep.x1.inverse() * rep.x2;
    const double matrix_level =
        max_abs(shifted - (alpha * rep.x1 + beta * Mat2::identity()));
    const double triple_trace = std::abs((rep.x1 * rep.x2 * rep.x3).trace() -
                                         (p.t1 * p.t2 * p.t3 - 2.0 * beta));

    worst = std::max({worst, linear1, linear2, quadratic, r13_closure,
                      matrix_level, triple_trace});
  }
  out.passed = worst <= eq;
  out.detail = "worst closure residual " + fmt(worst) + " over " +
               std::to_string(bank.points.size()) + " points";
}

void trace_pair_consistency(CriterionResult& out, const SelftestConfig& cfg,
                            const SampleBank& bank) {
  const double eq = cfg.eq_tol_override.value_or(1e-9);
  const double margin = cfg.margin_tol_override.value_or(1e-6);
  double worst_spread = 0.0;
  double smallest_gap = std::numeric_limits<double>::infinity();
  for (const auto& p : bank.points) {
    worst_spread = std::max(worst_spread, eta_spread(p));
    smallest_gap =
        std::min(smallest_gap, std::abs(eta(p, TracePair::P12) - 5.0));
  }
  out.passed = worst_spread <= eq && smallest_gap > margin;
  out.detail = "worst pairwise spread " + fmt(worst_spread) +
               ", smallest reducibility gap " + fmt(smallest_gap);
}

void torsion_route_agreement(CriterionResult& out, const SelftestConfig& cfg,
                             const Tolerance& tol, const SampleBank& bank) {
  const double rel = cfg.eq_tol_override.value_or(1e-7);
  Stopwatch watch;
  int mismatches = 0;
  for (std::size_t k = 0; k < bank.points.size(); ++k) {
    const CharacterPoint& p = bank.points[k];
    const Representation& rep = bank.reps[k];
    const LaurentPoly3 closed = tap_closed_form(p);

    const auto via_uvw = eq_up_to_monomial(tap_uvw(rep, tol), closed, rel);
    const bool uvw_ok = via_uvw.match && !via_uvw.negated &&
                        via_uvw.shift == std::array<int, 3>{1, -1, -1};

    const FoxResult fox = tap_fox(rep, rel, tol);
    const bool fox_ok = fox.quotient.match && !fox.quotient.negated &&
                        fox.quotient.shift == std::array<int, 3>{1, -1, 1};

    if (!uvw_ok || !fox_ok) ++mismatches;
  }
  const double elapsed = watch.seconds();
  out.passed = mismatches == 0 && elapsed < 120.0;
  out.detail = std::to_string(mismatches) + " mismatches over " +
               std::to_string(bank.points.size()) + " points";
  if (elapsed >= 120.0) out.detail += "; exceeded the 120 s budget";
}

void torsion_unit_value(CriterionResult& out, const SelftestConfig& cfg,
                        const Tolerance& tol) {
  const double eq = cfg.eq_tol_override.value_or(1e-9);
  const HyperbolicSummary summary = hyperbolic_pipeline(tol);
  const Complex expected(-2.0, -2.0 * std::sqrt(7.0));
  const double dist = std::abs(summary.torsion_at_unit - expected);
  out.passed = dist <= eq;
  out.detail = "|value - (-2 - 2 sqrt(-7))| = " + fmt(dist);
}

void local_dimensions(CriterionResult& out, const SelftestConfig& cfg,
                      const Tolerance& tol) {
  int wrong = 0, ambiguous = 0, total = 0;
  std::string first_issue;
  for (const auto& c : ComponentId::all()) {
    Rng rng(cfg.seed + 1000, static_cast<std::uint64_t>(component_ordinal(c)));
    const int expected = c.family == Family::X3 ? 3 : 2;
    for (int k = 0; k < cfg.dim_seeds; ++k) {
      const CharacterPoint p = sample_component(c, rng, tol);
      ++total;
      try {
        const int dim = local_dimension(p, c);
        if (dim != expected) {
          ++wrong;
          if (first_issue.empty()) {
            first_issue = c.str() + " gave dimension " + std::to_string(dim);
          }
        }
      } catch (const RankAmbiguous& e) {
        ++ambiguous;
        if (first_issue.empty()) first_issue = c.str() + ": " + e.what();
      }
    }
  }
  out.passed = wrong == 0 && ambiguous == 0;
  out.detail = std::to_string(total) + " probes, " + std::to_string(wrong) +
               " wrong, " + std::to_string(ambiguous) + " rank-ambiguous";
  if (!first_issue.empty()) out.detail += " (" + first_issue + ")";
}

void matrix_identity_battery(CriterionResult& out,
                             const SelftestConfig& cfg) {
  const double lemma_tol = cfg.eq_tol_override.value_or(1e-12);
  const double comm_tol = cfg.eq_tol_override.value_or(1e-10);
  Rng rng(cfg.seed + 2000, 0);

  double worst_lemma = 0.0;
  for (int k = 0; k < cfg.matrix_count; ++k) {
    const Mat2 m = draw_matrix(rng, 1.0);
    const Mat2 n = draw_matrix(rng, 1.0);
    const LemmaResiduals res = lemma_det_residuals(m, n);
    worst_lemma = std::max(
        {worst_lemma, res.product_identity, res.det_sum, res.det_shift});
  }

  double worst_comm = 0.0;
  for (int k = 0; k < cfg.matrix_count; ++k) {
    const Mat2 m = draw_unimodular(rng);
    const Mat2 n = draw_unimodular(rng);
    const Complex via_formula =
        trace_commutator(m.trace(), n.trace(), (m * n).trace());
    const Complex via_matrices = commutator(m, n).trace();
    worst_comm = std::max(worst_comm, std::abs(via_formula - via_matrices));
  }

  out.passed = worst_lemma <= lemma_tol && worst_comm <= comm_tol;
  out.detail = "worst determinant-lemma residual " + fmt(worst_lemma) +
               ", worst commutator-trace residual " + fmt(worst_comm);
}

}  // namespace

bool SelftestReport::all_passed() const {
  for (const auto& c : criteria) {
    if (!c.passed) return false;
  }
  return true;
}

HyperbolicSummary hyperbolic_pipeline(const Tolerance& tol) {
  HyperbolicSummary out{};
  bool found = false;
  for (int idx = 0; idx < 6 && !found; ++idx) {
    try {
      const CharacterPoint p = sample_x3(2.0, 2.0, 2.0, idx, tol);
      if (p.beta.imag() < 0.0) {
        out.point = p;
        found = true;
      }
    } catch (const ExcludedRoot&) {
    }
  }
  if (!found) {
    throw std::runtime_error(
        "hyperbolic_pipeline: no admissible root with negative imaginary "
        "part");
  }
  const Representation rep = representation_from_point(out.point, tol);
  out.relator_residual = relator_residuals(rep).max();
  out.torsion_at_unit = tap_closed_form(out.point).eval(1, 1, 1);
  return out;
}

std::ostream& print_report(std::ostream& out, const SelftestReport& report) {
  int passed = 0;
  for (const auto& c : report.criteria) {
    out << "C" << c.number << (c.passed ? " PASS " : " FAIL ") << c.name
        << " [" << std::fixed << std::setprecision(2) << c.seconds << "s] "
        << c.detail << "\n";
    out.unsetf(std::ios_base::floatfield);
    if (c.passed) ++passed;
  }
  out << "RESULT: " << passed << "/" << report.criteria.size()
      << " criteria passed\n";
  return out;
}

SelftestReport run_selftest(const SelftestConfig& config) {
  Tolerance tol;
  if (config.margin_tol_override) {
    tol.margin_tol = *config.margin_tol_override;
  }

  SelftestReport report;
  SampleBank bank;

  report.criteria.push_back(run_criterion(
      1, "cusped point reproduction",
      [&](CriterionResult& out) { cusped_reproduction(out, config, tol); }));
  report.criteria.push_back(run_criterion(
      2, "sextic root multiset at the symmetric point",
      [&](CriterionResult& out) { sextic_multiset(out, config, tol); }));
  report.criteria.push_back(
      run_criterion(3, "sampling and reconstruction round trip",
                    [&](CriterionResult& out) {
                      sampling_round_trip(out, config, tol, bank);
                    }));
  report.criteria.push_back(run_criterion(
      4, "closure identities for reconstructed matrices",
      [&](CriterionResult& out) { closure_identities(out, config, bank); }));
  report.criteria.push_back(
      run_criterion(5, "pairwise trace consistency", [&](CriterionResult& out) {
        trace_pair_consistency(out, config, bank);
      }));
  report.criteria.push_back(
      run_criterion(6, "torsion polynomial route agreement",
                    [&](CriterionResult& out) {
                      torsion_route_agreement(out, config, tol, bank);
                    }));
  report.criteria.push_back(run_criterion(
      7, "torsion value at the unit point",
      [&](CriterionResult& out) { torsion_unit_value(out, config, tol); }));
  report.criteria.push_back(run_criterion(
      8, "local dimensions",
      [&](CriterionResult& out) { local_dimensions(out, config, tol); }));
  report.criteria.push_back(run_criterion(
      9, "matrix identity battery",
      [&](CriterionResult& out) { matrix_identity_battery(out, config); }));
  return report;
}

}  // namespace chaincv
