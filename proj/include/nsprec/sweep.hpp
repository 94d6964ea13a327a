// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsprec/config.hpp"

namespace nsprec {

/// A batch experiment: exactly one swept variable, everything else fixed.
/// Parsed from flat `key = value` text (UTF-8, `#` comments, lists
/// comma-separated) or produced by a named preset.
struct ExperimentPlan {
  std::string sweep;           // one of: M, K, r, omega, rho
  std::vector<double> values;  // sweep points

  int M = 0;
  int K = 0;
  double c = 1.0;
  double rho = 10.0;            // in rho_unit
  std::string rho_unit = "linear";  // "linear" or "dB"
  std::optional<double> omega{};    // empty -> omega_star per point
  std::optional<double> r_fixed{};  // when sweeping M: K = r_fixed * M

  std::vector<std::string> schemes;  // ZF MRT INS DNS TNS CNS ICNS OrderedICNS
  std::vector<std::string> metrics;  // see kKnownMetrics in sweep.cpp

  long trials = 10000;
  std::uint64_t seed = 1;
  int parallel_width = 0;
  std::string norm_mode = "per";  // "per" or "stat"
  bool fixed_a = false;
  bool timestamp = true;
  std::string out;  // CSV path; empty -> stdout
};

/// Throws BadRange/ConfigError with a descriptive message on malformed input.
ExperimentPlan parse_plan_file(const std::string& path);
ExperimentPlan parse_plan_text(const std::string& text);

/// Built-in experiment definitions; names: fig1-left fig1-right fig2 fig3
/// fig4 fig5 fig6 fig7 fig8. Throws BadRange for unknown names.
std::vector<ExperimentPlan> preset_plans(const std::string& name);
std::vector<std::string> preset_names();

/// Executes the plan, streaming CSV rows to `csv` and a line per sweep
/// point to `log`. CSV columns:
///   scheme,M,K,c,rho,rho_unit,omega,trials,seed,metric,value,std_error,extrapolated
/// Numeric fields are printed with 17 significant digits so they
/// round-trip through decimal text. Identical plans produce byte-identical
/// output (the commented timestamp line is controlled by plan.timestamp).
void run_sweep(const ExperimentPlan& plan, std::ostream& csv,
               std::ostream& log);

/// Runs several plans into one CSV (shared header); used by presets.
void run_sweeps(const std::vector<ExperimentPlan>& plans, std::ostream& csv,
                std::ostream& log);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // worst observed error for the suite
  double limit = 0.0;
  std::string detail;
};

/// Statistical/algebraic verification suites: names from
/// {moments, edges, inverses, dualcode}. Throws BadRange on unknown names.
std::vector<CheckResult> run_checks(const std::vector<std::string>& names,
                                    std::ostream& log, int parallel_width = 0);

}  // namespace nsprec
