// chaincv: command line front end for the chain-link character variety
// toolkit.  Exit codes: 0 success, 1 a requested check failed, 2 bad
// arguments or unreadable input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>

#include "chaincv/chars.hpp"
#include "chaincv/components.hpp"
#include "chaincv/errors.hpp"
#include "chaincv/json_io.hpp"
#include "chaincv/laurent.hpp"
#include "chaincv/reconstruct.hpp"
#include "chaincv/sampling.hpp"
#include "chaincv/selftest.hpp"
#include "chaincv/tap.hpp"

namespace {

using chaincv::CharacterPoint;
using chaincv::Json;

Json read_document(const std::string& path) {
  if (path.empty() || path == "-") {
    const std::string text((std::istreambuf_iterator<char>(std::cin)),
                           std::istreambuf_iterator<char>());
    return Json::parse(text);
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

std::vector<CharacterPoint> points_from_document(const Json& j) {
  std::vector<CharacterPoint> points;
  if (j.is_array()) {
    for (const auto& entry : j) {
      points.push_back(chaincv::point_from_json(entry));
    }
  } else {
    points.push_back(chaincv::point_from_json(j));
  }
  if (points.empty()) {
    throw std::invalid_argument("input holds no points");
  }
  return points;
}

// Accepts a bare term array, any object produced by `tap` (searching the
// route keys), or an array of such objects (first entry).
chaincv::LaurentPoly3 poly_from_document(const Json& j) {
  if (j.is_array()) {
    if (j.empty()) return {};
    if (j.front().is_object() && j.front().contains("k")) {
      return chaincv::laurent_from_json(j);
    }
    return poly_from_document(j.front());
  }
  if (j.is_object()) {
    for (const char* key : {"closed", "uvw", "fox", "numerator"}) {
      if (j.contains(key)) return poly_from_document(j.at(key));
    }
  }
  throw std::invalid_argument("no polynomial found in the document");
}

Json matrix_to_json(const chaincv::Mat2& m) {
  return Json::array({chaincv::complex_to_json(m.a),
                      chaincv::complex_to_json(m.b),
                      chaincv::complex_to_json(m.c),
                      chaincv::complex_to_json(m.d)});
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---- subcommand bodies (return the process exit code) ---------------------

int run_sample(const std::string& component, int count, std::uint64_t seed,
               double margin_tol) {
  const chaincv::ComponentId id = chaincv::ComponentId::parse(component);
  chaincv::Tolerance tol;
  tol.margin_tol = margin_tol;
  const auto points = chaincv::sample_many(id, count, seed, tol);
  Json out = Json::array();
  for (const auto& p : points) out.push_back(chaincv::point_to_json(p));
  emit(out);
  return 0;
}

int run_verify(const std::string& component, const std::string& path,
               double eq_tol, double margin_tol) {
  chaincv::Tolerance tol;
  tol.eq_tol = eq_tol;
  tol.margin_tol = margin_tol;
  const auto points = points_from_document(read_document(path));

  Json out = Json::array();
  bool all_ok = true;
  for (const auto& p : points) {
    Json entry;
    if (!component.empty()) {
      const chaincv::ComponentId id = chaincv::ComponentId::parse(component);
      const auto report = chaincv::membership(p, id, tol);
      entry["component"] = id.str();
      entry["verdict"] = report.verdict;
      entry["max_residual"] = report.max_residual();
      entry["min_margin"] = report.min_margin();
      Json eqs = Json::array();
      for (const auto& [label, value] : report.equation_residuals) {
        eqs.push_back(Json{{"label", label}, {"residual", value}});
      }
      entry["equations"] = eqs;
      Json margins = Json::array();
      for (const auto& [label, value] : report.inequation_margins) {
        margins.push_back(Json{{"label", label}, {"margin", value}});
      }
      entry["margins"] = margins;
      if (!report.verdict) all_ok = false;
    } else {
      const auto hits = chaincv::classify(p, tol);
      Json names = Json::array();
      for (const auto& id : hits) names.push_back(id.str());
      entry["components"] = names;
      if (hits.empty()) all_ok = false;
    }
    out.push_back(entry);
  }
  emit(out);
  return all_ok ? 0 : 1;
}

int run_reconstruct(const std::string& path, double eq_tol) {
  const auto points = points_from_document(read_document(path));
  Json out = Json::array();
  bool all_ok = true;
  for (const auto& p : points) {
    const chaincv::Representation rep = chaincv::representation_from_point(p);
    const double defect = chaincv::relator_residuals(rep).max();
    const double round_trip =
        chaincv::point_distance(chaincv::character_of(rep), p);
    Json entry;
    entry["x1"] = matrix_to_json(rep.x1);
    entry["x2"] = matrix_to_json(rep.x2);
    entry["x3"] = matrix_to_json(rep.x3);
    entry["relator_defect"] = defect;
    entry["round_trip"] = round_trip;
    out.push_back(entry);
    if (defect > eq_tol || round_trip > eq_tol) all_ok = false;
  }
  emit(out);
  return all_ok ? 0 : 1;
}

int run_tap(const std::string& path, const std::string& route,
            double rel_tol) {
  const auto points = points_from_document(read_document(path));
  Json out = Json::array();
  bool all_ok = true;
  for (const auto& p : points) {
    Json entry;
    const chaincv::LaurentPoly3 closed = chaincv::tap_closed_form(p);
    if (route == "closed" || route == "all") {
      entry["closed"] = chaincv::laurent_to_json(closed);
    }
    if (route == "uvw" || route == "all") {
      const chaincv::Representation rep =
          chaincv::representation_from_point(p);
      const chaincv::LaurentPoly3 raw = chaincv::tap_uvw(rep);
      entry["uvw"] = chaincv::laurent_to_json(raw);
      if (route == "all") {
        const auto match = chaincv::eq_up_to_monomial(raw, closed, rel_tol);
        entry["uvw_matches_closed"] = match.match;
        if (!match.match) all_ok = false;
      }
    }
    if (route == "fox" || route == "all") {
      const chaincv::Representation rep =
          chaincv::representation_from_point(p);
      const chaincv::FoxResult fox = chaincv::tap_fox(rep, rel_tol);
      Json fj;
      fj["numerator"] = chaincv::laurent_to_json(fox.numerator);
      fj["denominator"] = chaincv::laurent_to_json(fox.denominator);
      fj["quotient_match"] = fox.quotient.match;
      fj["shift"] = Json::array({fox.quotient.shift[0], fox.quotient.shift[1],
                                 fox.quotient.shift[2]});
      entry["fox"] = fj;
      if (!fox.quotient.match) all_ok = false;
    }
    out.push_back(entry);
  }
  emit(out);
  return all_ok ? 0 : 1;
}

int run_compare(const std::string& path_a, const std::string& path_b,
                double rel_tol, bool sign_tolerant) {
  const chaincv::LaurentPoly3 a = poly_from_document(read_document(path_a));
  const chaincv::LaurentPoly3 b = poly_from_document(read_document(path_b));
  const auto match = chaincv::eq_up_to_monomial(a, b, rel_tol, sign_tolerant);
  Json out;
  out["match"] = match.match;
  out["shift"] =
      Json::array({match.shift[0], match.shift[1], match.shift[2]});
  out["negated"] = match.negated;
  emit(out);
  return match.match ? 0 : 1;
}

int run_hyperbolic() {
  const chaincv::HyperbolicSummary summary = chaincv::hyperbolic_pipeline();
  Json out;
  out["point"] = chaincv::point_to_json(summary.point);
  out["torsion_at_unit"] = chaincv::complex_to_json(summary.torsion_at_unit);
  out["relator_defect"] = summary.relator_residual;
  emit(out);
  return 0;
}

int run_selftest_cmd(const chaincv::SelftestConfig& config) {
  const chaincv::SelftestReport report = chaincv::run_selftest(config);
  chaincv::print_report(std::cout, report);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chain-link character variety toolkit"};
  app.require_subcommand(1);

  // sample
  std::string sample_component = "X3";
  int sample_count = 1;
  std::uint64_t sample_seed = 1;
  double sample_margin = 1e-6;
  auto* sample = app.add_subcommand(
      "sample", "draw deterministic random points of one component");
  sample->add_option("--component", sample_component,
                     "component id, e.g. X1.2+ or X3");
  sample->add_option("--count", sample_count, "number of points")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "random seed");
  sample->add_option("--margin-tol", sample_margin,
                     "exclusion margin for rejection sampling");

  // verify
  std::string verify_component;
  std::string verify_file;
  double verify_eq = 1e-9;
  double verify_margin = 1e-6;
  auto* verify = app.add_subcommand(
      "verify", "check membership of points read from JSON");
  verify->add_option("--component", verify_component,
                     "check against this component (default: classify)");
  verify->add_option("--file", verify_file, "input path (default: stdin)");
  verify->add_option("--eq-tol", verify_eq, "equation residual tolerance");
  verify->add_option("--margin-tol", verify_margin, "exclusion margin");

  // reconstruct
  std::string rec_file;
  double rec_eq = 1e-8;
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "build matrix triples from points read from JSON");
  reconstruct->add_option("--file", rec_file, "input path (default: stdin)");
  reconstruct->add_option("--eq-tol", rec_eq,
                          "acceptable relator/round-trip defect");

  // tap
  std::string tap_file;
  std::string tap_route = "closed";
  double tap_rel = 1e-9;
  auto* tap = app.add_subcommand(
      "tap", "torsion polynomial of points read from JSON");
  tap->add_option("--file", tap_file, "input path (default: stdin)");
  tap->add_option("--route", tap_route, "closed, fox, uvw, or all")
      ->check(CLI::IsMember({"closed", "fox", "uvw", "all"}));
  tap->add_option("--rel-tol", tap_rel, "relative comparison tolerance");

  // compare
  std::string cmp_a, cmp_b;
  double cmp_rel = 1e-9;
  bool cmp_sign = false;
  auto* compare = app.add_subcommand(
      "compare", "test two stored polynomials for equality up to a monomial");
  compare->add_option("a", cmp_a, "first polynomial JSON file")->required();
  compare->add_option("b", cmp_b, "second polynomial JSON file")->required();
  compare->add_option("--rel-tol", cmp_rel, "relative coefficient tolerance");
  compare->add_flag("--sign-tolerant", cmp_sign,
                    "also accept an overall sign flip");

  // hyperbolic
  auto* hyperbolic = app.add_subcommand(
      "hyperbolic", "reproduce the distinguished cusped character");

  // selftest
  chaincv::SelftestConfig selftest_config;
  double st_eq = -1.0, st_margin = -1.0;
  auto* selftest = app.add_subcommand(
      "selftest", "run the full acceptance criteria suite");
  selftest->add_option("--seed", selftest_config.seed, "base random seed");
  selftest->add_option("--per-component", selftest_config.per_component,
                       "sampled points per component")
      ->check(CLI::PositiveNumber);
  selftest->add_option("--dim-seeds", selftest_config.dim_seeds,
                       "dimension probes per component")
      ->check(CLI::PositiveNumber);
  selftest->add_option("--matrix-count", selftest_config.matrix_count,
                       "random matrix pairs in the identity battery")
      ->check(CLI::PositiveNumber);
  selftest->add_option("--eq-tol", st_eq,
                       "override every pinned residual tolerance");
  selftest->add_option("--margin-tol", st_margin,
                       "override every pinned exclusion margin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sample->parsed()) {
      return run_sample(sample_component, sample_count, sample_seed,
                        sample_margin);
    }
    if (verify->parsed()) {
      return run_verify(verify_component, verify_file, verify_eq,
                        verify_margin);
    }
    if (reconstruct->parsed()) return run_reconstruct(rec_file, rec_eq);
    if (tap->parsed()) return run_tap(tap_file, tap_route, tap_rel);
    if (compare->parsed()) {
      return run_compare(cmp_a, cmp_b, cmp_rel, cmp_sign);
    }
    if (hyperbolic->parsed()) return run_hyperbolic();
    if (selftest->parsed()) {
      if (st_eq > 0.0) selftest_config.eq_tol_override = st_eq;
      if (st_margin > 0.0) selftest_config.margin_tol_override = st_margin;
      return run_selftest_cmd(selftest_config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
