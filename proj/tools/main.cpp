#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cocyclelab/errors.hpp"
#include "cocyclelab/serialization.hpp"
#include "cocyclelab/solver.hpp"
#include "cocyclelab/witness.hpp"

namespace {

using namespace cocyclelab;

constexpr int kStatusSolved = 0;
constexpr int kStatusObstructed = 1;
constexpr int kStatusPeriodicAtHorizon = 2;
constexpr int kStatusInputError = 3;

// Option values starting with '@' name a file holding the record.
std::string load_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw ParseError("cannot read file '" + arg.substr(1) + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string csv_cell(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void print_kv_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::cout << "key,value\n";
  for (const auto& [key, value] : rows) {
    std::cout << key << ',' << csv_cell(value) << '\n';
  }
}

long grid_density_from_env() {
  const char* raw = std::getenv("COCYCLELAB_GRID");
  if (!raw) return 100000;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1) {
    throw ParseError("COCYCLELAB_GRID must be a positive integer");
  }
  return value;
}

// Float-grid cross-check of the exact coboundary norm; a failure indicates an
// internal inconsistency and is reported on stderr without changing status.
void cross_check_report(const SystemDescriptor& sys, const WitnessReport& report,
                        long grid) {
  if (!std::holds_alternative<CircleRotation>(sys)) return;
  Observable u = build_witness_profile(sys, report.x_n, report.r_n, report.n);
  Observable phi_obs = witness_coboundary_direct(sys, u);
  const auto& phi = std::get<PiecewiseLinearCircle>(phi_obs);
  double scanned = grid_scan_max_abs(phi, grid);
  double exact = report.sup_phi.get_d();
  double modulus = compile_profile(phi).max_abs_slope() / static_cast<double>(grid);
  if (scanned > exact + 1e-9 || scanned < exact - modulus - 1e-9) {
    std::cerr << "warning: float grid cross-check disagrees with exact sup norm "
              << "at level " << report.n << '\n';
  }
}

Point parse_seed(const SystemDescriptor& sys, const std::string& text) {
  if (std::holds_alternative<CircleRotation>(sys)) {
    return CirclePoint(parse_rational(text));
  }
  try {
    std::size_t pos = 0;
    unsigned long index = std::stoul(text, &pos);
    if (pos != text.size()) throw ParseError("");
    return FinitePoint{static_cast<std::size_t>(index)};
  } catch (const std::exception&) {
    throw ParseError("seed for a finite system must be a state index");
  }
}

int run_solve(const std::string& system_text, const std::string& cocycle_text,
              const std::string& format, bool check_only) {
  SystemDescriptor sys = parse_system_text(load_arg(system_text));
  Observable phi = parse_observable_text(load_arg(cocycle_text));

  if (check_only) {
    auto cert = obstruction_test(sys, phi);
    if (format == "json") {
      if (cert) {
        print_json(certificate_to_json(*cert));
      } else {
        Json j;
        j["status"] = "coboundary";
        print_json(j);
      }
    } else {
      if (cert) {
        Json j = certificate_to_json(*cert);
        print_kv_csv({{"status", "obstructed"},
                      {"witness_point", j["witness_point"].dump()},
                      {"orbit_length", j["orbit_length"].dump()},
                      {"birkhoff_value", format_rational(cert->birkhoff_value)},
                      {"measure_integral", format_rational(cert->measure_integral)}});
      } else {
        print_kv_csv({{"status", "coboundary"}});
      }
    }
    return cert ? kStatusObstructed : kStatusSolved;
  }

  SolveOutcome outcome = periodic_solve(sys, phi);
  const bool obstructed = std::holds_alternative<ObstructionCertificate>(outcome);
  if (format == "json") {
    print_json(solve_outcome_to_json(outcome));
  } else if (obstructed) {
    const auto& cert = std::get<ObstructionCertificate>(outcome);
    Json j = certificate_to_json(cert);
    print_kv_csv({{"status", "obstructed"},
                  {"witness_point", j["witness_point"].dump()},
                  {"orbit_length", j["orbit_length"].dump()},
                  {"birkhoff_value", format_rational(cert.birkhoff_value)},
                  {"measure_integral", format_rational(cert.measure_integral)}});
  } else {
    const auto& sol = std::get<Solution>(outcome);
    print_kv_csv({{"status", "solved"},
                  {"residual", format_rational(sol.residual)},
                  {"u", observable_to_json(sol.u).dump()}});
  }
  return obstructed ? kStatusObstructed : kStatusSolved;
}

int run_witness(const std::string& system_text, std::int64_t n,
                const std::string& seed_text, const std::string& format) {
  SystemDescriptor sys = parse_system_text(load_arg(system_text));
  WitnessParams params;
  params.level = n;
  if (!seed_text.empty()) params.seed = parse_seed(sys, seed_text);
  WitnessReport report = witness_report(sys, params);
  cross_check_report(sys, report, grid_density_from_env());
  if (format == "json") {
    print_json(witness_report_to_json(report));
  } else {
    std::cout << emit_witness_csv(report);
  }
  return kStatusSolved;
}

int run_sweep(const std::string& system_text, std::int64_t n_max, bool parallel,
              const std::string& format) {
  SystemDescriptor sys = parse_system_text(load_arg(system_text));
  std::vector<WitnessReport> reports = instability_sweep(sys, n_max, parallel);
  const long grid = grid_density_from_env();
  for (const auto& report : reports) cross_check_report(sys, report, grid);
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& report : reports) {
      arr.push_back(witness_report_to_json(report));
    }
    print_json(arr);
  } else {
    std::cout << emit_sweep_csv(reports);
  }
  return kStatusSolved;
}

int run_info(const std::string& system_text, const std::string& format) {
  SystemDescriptor sys = parse_system_text(load_arg(system_text));
  Json j;
  if (const auto* perm = std::get_if<FinitePermutation>(&sys)) {
    j["type"] = "perm";
    j["size"] = perm->size();
    Integer q = period(sys);
    j["period"] = q.fits_slong_p() ? Json(q.get_si()) : Json(q.get_str());
    j["cohomology_dimension"] = cohomology_dimension(sys);
    Json cycle_list = Json::array();
    for (const auto& cycle : cycles(*perm)) cycle_list.push_back(cycle);
    j["cycles"] = std::move(cycle_list);
  } else {
    const auto& rot = std::get<CircleRotation>(sys);
    j["type"] = "rotation";
    j["alpha"] = format_rational(rot.alpha);
    Integer q = period(sys);
    j["period"] = q.fits_slong_p() ? Json(q.get_si()) : Json(q.get_str());
  }
  if (format == "json") {
    print_json(j);
  } else {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [key, value] : j.items()) {
      rows.emplace_back(key, value.is_string() ? value.get<std::string>()
                                               : value.dump());
    }
    print_kv_csv(rows);
  }
  return kStatusSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cocyclelab: exact solver, obstruction checker and instability-witness "
      "builder for cohomological equations over finite permutations and "
      "rational circle rotations"};
  app.require_subcommand(1);

  std::string system_text, cocycle_text, seed_text;
  std::string format = "json";
  std::int64_t level = 1, n_max = 1;
  bool parallel = false;

  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "solve phi = u o f - u exactly");
  solve->add_option("--system", system_text, "system record (JSON or @file)")
      ->required();
  solve->add_option("--cocycle", cocycle_text, "cocycle record (JSON or @file)")
      ->required();
  add_format(solve);

  auto* check = app.add_subcommand("check", "test the orbit-sum obstructions");
  check->add_option("--system", system_text, "system record (JSON or @file)")
      ->required();
  check->add_option("--cocycle", cocycle_text, "cocycle record (JSON or @file)")
      ->required();
  add_format(check);

  auto* witness =
      app.add_subcommand("witness", "build one instability witness level");
  witness->add_option("--system", system_text, "system record (JSON or @file)")
      ->required();
  witness->add_option("--n", level, "witness level (n >= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  witness->add_option("--seed", seed_text,
                      "base point (rational for rotations, index for perms)");
  add_format(witness);

  auto* sweep =
      app.add_subcommand("sweep", "witness reports for n = 1..n_max");
  sweep->add_option("--system", system_text, "system record (JSON or @file)")
      ->required();
  sweep->add_option("--n-max", n_max, "deepest level")
      ->required()
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--parallel", parallel, "compute levels on worker threads");
  add_format(sweep);

  auto* info = app.add_subcommand("info", "describe a system");
  info->add_option("--system", system_text, "system record (JSON or @file)")
      ->required();
  add_format(info);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return kStatusInputError;
  }

  try {
    if (solve->parsed()) return run_solve(system_text, cocycle_text, format, false);
    if (check->parsed()) return run_solve(system_text, cocycle_text, format, true);
    if (witness->parsed()) return run_witness(system_text, level, seed_text, format);
    if (sweep->parsed()) return run_sweep(system_text, n_max, parallel, format);
    if (info->parsed()) return run_info(system_text, format);
  } catch (const PeriodicAtHorizon& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStatusPeriodicAtHorizon;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStatusInputError;
  }
  return kStatusInputError;
}
