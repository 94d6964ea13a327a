// SPDX-License-Identifier: Apache-2.0
//
// Batch experiment runner: sweeps, figure presets, statistical checks and
// operation-count tables, all emitting CSV.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsprec/complexity.hpp"
#include "nsprec/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailure = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<std::string> out;
  bool no_timestamp = false;
  std::optional<std::string> norm_mode;
  std::optional<std::string> rho_unit;
  std::optional<int> width;
};

void apply(const Overrides& ov, nsprec::ExperimentPlan& plan) {
  if (ov.seed) plan.seed = *ov.seed;
  if (ov.trials) plan.trials = *ov.trials;
  if (ov.out) plan.out = *ov.out;
  if (ov.no_timestamp) plan.timestamp = false;
  if (ov.norm_mode) plan.norm_mode = *ov.norm_mode;
  if (ov.rho_unit) plan.rho_unit = *ov.rho_unit;
  if (ov.width) plan.parallel_width = *ov.width;
}

int run_plans(std::vector<nsprec::ExperimentPlan> plans, const Overrides& ov) {
  for (auto& plan : plans) apply(ov, plan);
  const std::string out = plans.front().out;
  if (out.empty()) {
    nsprec::run_sweeps(plans, std::cout, std::cerr);
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file '" << out << "'\n";
      return kExitRuntime;
    }
    nsprec::run_sweeps(plans, file, std::cerr);
    std::cerr << "wrote " << out << "\n";
  }
  return kExitOk;
}

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--seed", ov.seed, "Master seed");
  cmd->add_option("--trials", ov.trials, "Monte Carlo trials per point");
  cmd->add_option("--out", ov.out, "Output CSV path (default stdout)");
  cmd->add_flag("--no-timestamp", ov.no_timestamp,
                "Suppress the commented timestamp header line");
  cmd->add_option("--norm-mode", ov.norm_mode,
                  "Power normalization: per | stat")
      ->check(CLI::IsMember({"per", "stat"}));
  cmd->add_option("--rho-unit", ov.rho_unit, "SNR unit: linear | dB")
      ->check(CLI::IsMember({"linear", "dB"}));
  cmd->add_option("--width", ov.width,
                  "Worker threads (1 = serial reference engine)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Neumann-series approximate zero-forcing precoding: simulation and "
      "analysis runner"};
  app.require_subcommand(1);

  Overrides ov;

  std::string plan_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a plan file");
  sweep_cmd->add_option("plan", plan_path, "Plan file (key = value lines)")
      ->required();
  add_override_flags(sweep_cmd, ov);

  std::string preset_name;
  auto* preset_cmd = app.add_subcommand("preset", "Run a built-in experiment");
  preset_cmd->add_option("name", preset_name, "Preset name (figN)")
      ->required();
  add_override_flags(preset_cmd, ov);

  std::vector<std::string> check_names;
  auto* check_cmd =
      app.add_subcommand("check", "Run statistical/algebraic verification");
  check_cmd->add_option("names", check_names,
                        "Subset of: moments edges inverses dualcode");
  check_cmd->add_option("--width", ov.width,
                        "Worker threads (1 = serial reference engine)");

  long long complexity_k = 0;
  std::string complexity_out;
  auto* cx_cmd =
      app.add_subcommand("complexity", "Print per-scheme operation counts");
  cx_cmd->add_option("K", complexity_k, "User count")->required();
  cx_cmd->add_option("--out", complexity_out, "Also write CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep_cmd) {
      return run_plans({nsprec::parse_plan_file(plan_path)}, ov);
    }
    if (*preset_cmd) {
      return run_plans(nsprec::preset_plans(preset_name), ov);
    }
    if (*check_cmd) {
      if (check_names.empty()) {
        check_names = {"moments", "edges", "inverses", "dualcode"};
      }
      const auto results =
          nsprec::run_checks(check_names, std::cout, ov.width.value_or(0));
      for (const auto& r : results) {
        if (!r.pass) return kExitCheckFailure;
      }
      return kExitOk;
    }
    if (*cx_cmd) {
      std::ofstream csv;
      if (!complexity_out.empty()) {
        csv.open(complexity_out, std::ios::binary);
        csv << "scheme,K,metric,value,extrapolated\n";
      }
      std::printf("%-12s %12s %8s %s\n", "scheme", "mults", "divs",
                  "extrapolated");
      for (auto tag :
           {nsprec::PreconditionTag::INS, nsprec::PreconditionTag::DNS,
            nsprec::PreconditionTag::TNS, nsprec::PreconditionTag::CNS,
            nsprec::PreconditionTag::ICNS,
            nsprec::PreconditionTag::OrderedICNS}) {
        const auto rep = nsprec::op_counts(tag, complexity_k);
        std::printf("%-12s %12lld %8lld %s\n", nsprec::to_string(tag),
                    rep.mults, rep.divs, rep.extrapolated ? "true" : "false");
        if (csv.is_open()) {
          csv << nsprec::to_string(tag) << ',' << complexity_k << ",mults,"
              << rep.mults << ',' << (rep.extrapolated ? "true" : "false")
              << "\n"
              << nsprec::to_string(tag) << ',' << complexity_k << ",divs,"
              << rep.divs << ',' << (rep.extrapolated ? "true" : "false")
              << "\n";
        }
      }
      return kExitOk;
    }
  } catch (const nsprec::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
