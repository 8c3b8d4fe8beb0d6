#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chaincv/chars.hpp"
#include "chaincv/mat2.hpp"

namespace chaincv {

// Knobs for the end-to-end verification suite.  The pinned tolerances live
// in the criteria themselves; the overrides replace them wholesale, so a
// stricter override makes genuinely floating-point-limited checks fail.
struct SelftestConfig {
  std::uint64_t seed = 1;
  int per_component = 100;  // sampled points per component (criteria 3-6)
  int dim_seeds = 10;       // dimension probes per component (criterion 8)
  int matrix_count = 1000;  // random pairs for the identity battery
  std::optional<double> eq_tol_override;      // replaces residual tolerances
  std::optional<double> margin_tol_override;  // replaces exclusion margins
};

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

// Runs the nine verification criteria in order.  Never throws: a criterion
// that raises is reported as failed with the exception text in `detail`.
SelftestReport run_selftest(const SelftestConfig& config = {});

// The distinguished cusped character: the admissible sextic root over
// t = (2,2,2) with negative imaginary part, its reconstruction defect, and
// the torsion polynomial evaluated at (1,1,1).
struct HyperbolicSummary {
  CharacterPoint point;
  Complex torsion_at_unit;
  double relator_residual = 0.0;
};

HyperbolicSummary hyperbolic_pipeline(const Tolerance& tol = {});

// One "C<k> PASS|FAIL <name> [<t>s] <detail>" line per criterion followed
// by a summary line.
std::ostream& print_report(std::ostream& out, const SelftestReport& report);

}  // namespace chaincv
