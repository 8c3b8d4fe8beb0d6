#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "chaincv/chars.hpp"
#include "chaincv/components.hpp"
#include "chaincv/json_io.hpp"
#include "test_support.hpp"

namespace {

using chaincv::Json;

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

// Runs the installed binary with the given arguments, capturing stdout.
// stderr is dropped so expected failures stay quiet in test logs.
CmdResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string("'") + CHAINCV_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

int temp_counter = 0;

std::string write_temp(const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("cli_case_" + std::to_string(temp_counter++) + ".json");
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
  out.close();
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("hyperbolic subcommand reproduces the pinned tuple") {
    const CmdResult r = run_cli("hyperbolic");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    const chaincv::CharacterPoint p = chaincv::point_from_json(j.at("point"));
    CHECK(chaincv::point_distance(p, testsupport::hyperbolic_point()) < 1e-9);
    const chaincv::Complex val =
        chaincv::complex_from_json(j.at("torsion_at_unit"));
    const chaincv::Complex expected(-2.0, -2.0 * std::sqrt(7.0));
    CHECK(testsupport::cdist(val, expected) < 1e-9);
    CHECK(j.at("relator_defect").get<double>() < 1e-8);
  }

  TEST_CASE("sampling is deterministic and valid for every component") {
    SUBCASE("same invocation yields byte-identical output") {
      const std::string args = "sample --component X1.2- --count 4 --seed 11";
      const CmdResult first = run_cli(args);
      const CmdResult second = run_cli(args);
      REQUIRE(first.exit_code == 0);
      REQUIRE(second.exit_code == 0);
      CHECK(first.output == second.output);
      CHECK_FALSE(first.output.empty());

      const Json j = Json::parse(first.output);
      REQUIRE(j.is_array());
      REQUIRE(j.size() == 4);
      for (const auto& entry : j) {
        const chaincv::CharacterPoint p = chaincv::point_from_json(entry);
        CHECK(chaincv::is_irreducible(p));
        CHECK(chaincv::membership(p, chaincv::ComponentId::x1(2, -1)).verdict);
      }
    }
    SUBCASE("every component id is accepted") {
      for (const auto& c : chaincv::ComponentId::all()) {
        const CmdResult r =
            run_cli("sample --component " + c.str() + " --count 2 --seed 3");
        CHECK(r.exit_code == 0);
      }
    }
  }

  TEST_CASE("verify accepts good points and flags corrupted ones") {
    const CmdResult sampled =
        run_cli("sample --component X2+ --count 3 --seed 5");
    REQUIRE(sampled.exit_code == 0);

    SUBCASE("clean points pass") {
      const std::string file = write_temp(sampled.output);
      const CmdResult r = run_cli("verify --component X2+ --file " + file);
      CHECK(r.exit_code == 0);
      const Json j = Json::parse(r.output);
      for (const auto& entry : j) {
        CHECK(entry.at("verdict").get<bool>());
      }
    }
    SUBCASE("a corrupted coordinate fails with a labeled residual") {
      Json j = Json::parse(sampled.output);
      j[0]["beta"][0] = j[0]["beta"][0].get<double>() + 0.5;
      const std::string file = write_temp(j.dump());
      const CmdResult r = run_cli("verify --component X2+ --file " + file);
      CHECK(r.exit_code == 1);
      const Json report = Json::parse(r.output);
      CHECK_FALSE(report[0].at("verdict").get<bool>());
    }
    SUBCASE("classification mode finds the right component") {
      const CmdResult x3 = run_cli("sample --component X3 --count 1 --seed 9");
      REQUIRE(x3.exit_code == 0);
      const std::string file = write_temp(x3.output);
      const CmdResult r = run_cli("verify --file " + file);
      CHECK(r.exit_code == 0);
      const Json report = Json::parse(r.output);
      const auto& names = report[0].at("components");
      CHECK(std::find(names.begin(), names.end(), Json("X3")) != names.end());
    }
  }

  TEST_CASE("reconstruct emits matrices with small defects") {
    const CmdResult sampled =
        run_cli("sample --component X1.3+ --count 2 --seed 21");
    REQUIRE(sampled.exit_code == 0);
    const std::string file = write_temp(sampled.output);
    const CmdResult r = run_cli("reconstruct --file " + file);
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.output);
    REQUIRE(j.size() == 2);
    for (const auto& entry : j) {
      CHECK(entry.contains("x1"));
      CHECK(entry.contains("x2"));
      CHECK(entry.contains("x3"));
      CHECK(entry.at("relator_defect").get<double>() < 1e-8);
      CHECK(entry.at("round_trip").get<double>() < 1e-8);
    }
  }

  TEST_CASE("tap routes agree and compare matches them") {
    const CmdResult sampled =
        run_cli("sample --component X3 --count 1 --seed 13");
    REQUIRE(sampled.exit_code == 0);
    const std::string file = write_temp(sampled.output);

    const CmdResult all = run_cli("tap --route all --file " + file);
    CHECK(all.exit_code == 0);
    const Json aj = Json::parse(all.output);
    CHECK(aj[0].at("uvw_matches_closed").get<bool>());
    CHECK(aj[0].at("fox").at("quotient_match").get<bool>());

    const CmdResult closed = run_cli("tap --route closed --file " + file);
    const CmdResult uvw = run_cli("tap --route uvw --file " + file);
    REQUIRE(closed.exit_code == 0);
    REQUIRE(uvw.exit_code == 0);
    const std::string closed_file = write_temp(closed.output);
    const std::string uvw_file = write_temp(uvw.output);

    SUBCASE("the two stored routes differ by a monomial") {
      const CmdResult r =
          run_cli("compare " + closed_file + " " + uvw_file + " --rel-tol 1e-7");
      CHECK(r.exit_code == 0);
      const Json j = Json::parse(r.output);
      CHECK(j.at("match").get<bool>());
    }
    SUBCASE("a polynomial of a different point does not match") {
      const CmdResult other =
          run_cli("sample --component X3 --count 1 --seed 14");
      REQUIRE(other.exit_code == 0);
      const std::string other_points = write_temp(other.output);
      const CmdResult other_tap =
          run_cli("tap --route closed --file " + other_points);
      REQUIRE(other_tap.exit_code == 0);
      const std::string other_file = write_temp(other_tap.output);
      const CmdResult r = run_cli("compare " + closed_file + " " + other_file);
      CHECK(r.exit_code == 1);
    }
    SUBCASE("sign tolerance accepts a negated polynomial") {
      Json negated = Json::parse(closed.output)[0].at("closed");
      for (auto& term : negated) {
        term["c"][0] = -term["c"][0].get<double>();
        term["c"][1] = -term["c"][1].get<double>();
      }
      const std::string neg_file = write_temp(negated.dump());
      const CmdResult strict =
          run_cli("compare " + closed_file + " " + neg_file);
      CHECK(strict.exit_code == 1);
      const CmdResult tolerant = run_cli("compare " + closed_file + " " +
                                         neg_file + " --sign-tolerant");
      CHECK(tolerant.exit_code == 0);
      const Json j = Json::parse(tolerant.output);
      CHECK(j.at("negated").get<bool>());
    }
  }

  TEST_CASE("selftest exit code follows the criteria, and thresholds bite") {
    const CmdResult ok = run_cli("selftest --per-component 20");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("RESULT: 9/9 criteria passed") != std::string::npos);

    // Tightening the equality tolerance to 1e-14 pushes the floating-point
    // criteria below their achievable accuracy, so the run must fail.
    const CmdResult tight =
        run_cli("selftest --per-component 20 --eq-tol 1e-14");
    CHECK(tight.exit_code == 1);
    CHECK(tight.output.find("FAIL") != std::string::npos);
  }

  TEST_CASE("bad arguments exit with code 2") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("sample --component X9").exit_code == 2);
    CHECK(run_cli("tap --route bogus --file nowhere.json").exit_code == 2);
    CHECK(run_cli("verify --file /nonexistent/path.json").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
  }
}
