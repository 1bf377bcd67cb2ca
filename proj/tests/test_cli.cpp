#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cocyclelab/serialization.hpp"
#include "test_support.hpp"

using namespace cocyclelab;
using namespace cocyclelab::testing;

namespace {

const char* kPerm = "'{\"type\":\"perm\",\"map\":[1,2,0]}'";
const char* kCoboundary = "'{\"type\":\"finite\",\"values\":[\"1\",\"-2\",\"1\"]}'";
const char* kObstructed = "'{\"type\":\"finite\",\"values\":[\"1\",\"0\",\"0\"]}'";

}  // namespace

TEST_CASE("solve: zero-obstruction cocycle solves with residual 0") {
  CliResult r = run_cli(std::string("solve --system ") + kPerm + " --cocycle " +
                        kCoboundary + " --format json");
  CHECK(r.status == 0);
  Json j = Json::parse(r.output);
  CHECK(j["status"] == "solved");
  CHECK(j["residual"] == "0");
  Observable u = observable_from_json(j["u"]);
  SystemDescriptor sys = FinitePermutation({1, 2, 0});
  Observable phi = parse_observable_text(
      "{\"type\":\"finite\",\"values\":[\"1\",\"-2\",\"1\"]}");
  CHECK(sup_norm(sys, sub(cohomological_operator(sys, u), phi)) == 0);
}

TEST_CASE("solve: obstructed cocycle exits 1 with the certificate") {
  CliResult r = run_cli(std::string("solve --system ") + kPerm + " --cocycle " +
                        kObstructed);
  CHECK(r.status == 1);
  Json j = Json::parse(r.output);
  CHECK(j["status"] == "obstructed");
  CHECK(j["measure_integral"] == "1/3");
}

TEST_CASE("check: certificate fields and statuses") {
  CliResult obstructed = run_cli(std::string("check --system ") + kPerm +
                                 " --cocycle " + kObstructed);
  CHECK(obstructed.status == 1);
  Json j = Json::parse(obstructed.output);
  CHECK(j["status"] == "obstructed");
  CHECK(j["witness_point"] == 0);
  CHECK(j["orbit_length"] == 3);
  CHECK(j["birkhoff_value"] == "1");
  CHECK(j["measure_integral"] == "1/3");

  CliResult clean = run_cli(std::string("check --system ") + kPerm +
                            " --cocycle " + kCoboundary);
  CHECK(clean.status == 0);
  CHECK(Json::parse(clean.output)["status"] == "coboundary");
}

TEST_CASE("witness: level-1 report on rotation 2/5") {
  CliResult r = run_cli(
      "witness --system '{\"type\":\"rotation\",\"alpha\":\"2/5\"}' --n 1 "
      "--format json");
  CHECK(r.status == 0);
  Json j = Json::parse(r.output);
  CHECK(j["sup_phi"] == "1/2");
  CHECK(j["r_n"] == "1/10");
  CHECK(j["quotient_lb"] == "1/2");
  CHECK(j["support_disjoint"] == true);
  CHECK(j["expanded_matches_direct"] == true);
}

TEST_CASE("witness: periodic systems exit 2") {
  CHECK(run_cli("witness --system '{\"type\":\"rotation\",\"alpha\":\"1/2\"}' "
                "--n 1")
            .status == 2);
  CHECK(run_cli("witness --system '{\"type\":\"rotation\",\"alpha\":\"1/3\"}' "
                "--n 2")
            .status == 2);
  CHECK(run_cli(std::string("witness --system ") + kPerm + " --n 1").status == 2);
}

TEST_CASE("sweep: exact CSV header and level rows") {
  CliResult r = run_cli(
      "sweep --system '{\"type\":\"rotation\",\"alpha\":\"233/610\"}' "
      "--n-max 3 --format csv");
  CHECK(r.status == 0);
  std::istringstream lines(r.output);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "n,r_n,sup_phi,sup_phi_decimal,quotient_lb,amplification,"
        "support_disjoint,expanded_matches_direct");
  REQUIRE(std::getline(lines, line));
  CHECK(line.rfind("1,36/305,1/2,0.500000000000,1/2,1,", 0) == 0);
  REQUIRE(std::getline(lines, line));
  CHECK(line.rfind("2,", 0) == 0);
  CHECK(line.find(",1/4,0.250000000000,") != std::string::npos);

  // the single-level CSV uses the same columns
  CliResult one = run_cli(
      "witness --system '{\"type\":\"rotation\",\"alpha\":\"2/5\"}' --n 1 "
      "--format csv");
  CHECK(one.status == 0);
  CHECK(one.output.find("1,1/10,1/2,0.500000000000,1/2,1,true,true") !=
        std::string::npos);
}

TEST_CASE("sweep: --parallel output is byte-identical to the serial one") {
  std::string args =
      "sweep --system '{\"type\":\"rotation\",\"alpha\":\"233/610\"}' "
      "--n-max 4 --format json";
  CliResult serial = run_cli(args);
  CliResult parallel = run_cli(args + " --parallel");
  CHECK(serial.status == 0);
  CHECK(parallel.status == 0);
  CHECK(serial.output == parallel.output);
}

TEST_CASE("deterministic output: identical argv, identical bytes") {
  std::string args = std::string("solve --system ") + kPerm + " --cocycle " +
                     kCoboundary + " --format json";
  CliResult first = run_cli(args);
  CliResult second = run_cli(args);
  CHECK(first.output == second.output);
  CHECK(first.output.size() > 0);
}

TEST_CASE("input errors exit 3 with empty stdout") {
  CHECK(run_cli("solve --system '{\"type\":\"perm\",\"map\":[1,1,0]}' "
                "--cocycle '{\"type\":\"finite\",\"values\":[\"0\",\"0\",\"0\"]}'")
            .status == 3);
  CHECK(run_cli("solve --system '{\"type\":\"rotation\",\"alpha\":\"1/0\"}' "
                "--cocycle '{\"type\":\"pwl\",\"offset\":\"0\",\"bumps\":[]}'")
            .status == 3);
  CHECK(run_cli("solve --system '{\"type\":\"rotation\",\"alpha\":\"x\"}' "
                "--cocycle '{\"type\":\"pwl\",\"offset\":\"0\",\"bumps\":[]}'")
            .status == 3);
  CHECK(run_cli("solve --no-such-flag").status == 3);
  CHECK(run_cli("frobnicate").status == 3);
  // variant mismatch between system and cocycle
  CHECK(run_cli(std::string("solve --system ") + kPerm +
                " --cocycle '{\"type\":\"pwl\",\"offset\":\"0\",\"bumps\":[]}'")
            .status == 3);
}

TEST_CASE("@file arguments load the same records") {
  std::string dir = "cli_inputs_tmp";
  std::string sys_path = dir + "_system.json";
  std::string phi_path = dir + "_cocycle.json";
  {
    std::ofstream sys_file(sys_path);
    sys_file << "{\"type\":\"perm\",\"map\":[1,2,0]}";
    std::ofstream phi_file(phi_path);
    phi_file << "{\"type\":\"finite\",\"values\":[\"1\",\"-2\",\"1\"]}";
  }
  CliResult from_files = run_cli("solve --system @" + sys_path + " --cocycle @" +
                                 phi_path + " --format json");
  CliResult inline_args = run_cli(std::string("solve --system ") + kPerm +
                                  " --cocycle " + kCoboundary + " --format json");
  CHECK(from_files.status == 0);
  CHECK(from_files.output == inline_args.output);
  std::remove(sys_path.c_str());
  std::remove(phi_path.c_str());

  CHECK(run_cli("info --system @missing_file.json").status == 3);
}

TEST_CASE("info: structure of both system variants") {
  CliResult perm_info = run_cli(std::string("info --system ") + kPerm);
  CHECK(perm_info.status == 0);
  Json j = Json::parse(perm_info.output);
  CHECK(j["type"] == "perm");
  CHECK(j["size"] == 3);
  CHECK(j["period"] == 3);
  CHECK(j["cohomology_dimension"] == 1);

  CliResult rot_info =
      run_cli("info --system '{\"type\":\"rotation\",\"alpha\":\"6/8\"}'");
  CHECK(rot_info.status == 0);
  Json r = Json::parse(rot_info.output);
  CHECK(r["alpha"] == "3/4");
  CHECK(r["period"] == 4);
}

TEST_CASE("witness --seed overrides the base point") {
  CliResult r = run_cli(
      "witness --system '{\"type\":\"rotation\",\"alpha\":\"2/5\"}' --n 1 "
      "--seed 1/7 --format json");
  CHECK(r.status == 0);
  Json j = Json::parse(r.output);
  CHECK(j["x_n"] == "1/7");
  CHECK(j["sup_phi"] == "1/2");
}

TEST_CASE("serialization round trips") {
  Rng rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    SystemDescriptor sys = mixed_system(rng, trial % 2 == 0, 1 + trial % 8);
    CHECK(system_from_json(system_to_json(sys)) == sys);

    Observable obs = random_observable(rng, sys);
    Observable round = observable_from_json(observable_to_json(obs));
    if (const auto* fin = std::get_if<FiniteObservable>(&obs)) {
      CHECK(*fin == std::get<FiniteObservable>(round));
    } else {
      CHECK(std::get<PiecewiseLinearCircle>(obs) ==
            std::get<PiecewiseLinearCircle>(round));
    }
  }
}

TEST_CASE("emit_sweep_csv rejects an empty report list") {
  CHECK_THROWS_AS(emit_sweep_csv({}), std::invalid_argument);
}

TEST_CASE("decimal rendering keeps 12 significant digits") {
  CHECK(to_decimal_string(rational_from(1, 2)) == "0.500000000000");
  CHECK(to_decimal_string(Rational(1)) == "1.00000000000");
  CHECK(to_decimal_string(rational_from(1, 16)) == "0.0625000000000");
  CHECK(to_decimal_string(Rational(0)) == "0.000000000000");
  CHECK(to_decimal_string(rational_from(-1, 3)) == "-0.333333333333");
  CHECK(to_decimal_string(rational_from(2, 3)) == "0.666666666667");
  CHECK(to_decimal_string(Rational(1234567)) == "1234567.00000");
}
