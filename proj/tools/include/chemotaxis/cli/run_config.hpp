#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chemotaxis/scenarios.hpp"

namespace chemotaxis::cli {

/// A resolved run: either a named preset (`preset` set) or an inline
/// definition, plus output options.
struct RunConfig {
  Scenario scenario;
  std::optional<std::string> preset;
  std::filesystem::path output_dir = "output";
  /// Extra uniform sampling stride in time units.
  std::optional<double> sample_every;
  bool emit_snapshots = true;

  bool operator==(const RunConfig&) const = default;
};

/// Parses a YAML document. Nested maps are flattened to dotted keys, so
/// `alpha1: {kind: exp_decay, c: 0.3}` and `alpha1.kind: exp_decay` are the
/// same. Keys:
///
///   scenario                    preset name (excludes every inline key)
///   name, epsilon, n_cells, t_end, cfl_guard
///   alpha1 .. beta2             .kind .c .a .k (betas default to 0 when epsilon = 0)
///   initial                     paper | constant | manufactured, with .u .v for constant
///   figure_times                figure instants merged with a 100-point uniform grid
///   samples                     exact sampling instants (replaces the default plan)
///   expect                      list of {kind: converges_to | steady_off_interpolant |
///                               v_away_from | v_diverges | manufactured_bound, ...}
///   output_dir, sample_every, emit_snapshots
///
/// Throws ConfigError naming the key and the violated constraint.
RunConfig parse_config(std::string_view document);

RunConfig load_config(const std::filesystem::path& path);

/// Adds `sample_every` instants to the scenario's sampling plan.
Scenario effective_scenario(const RunConfig& rc);

enum ExitStatus : int { kSuccess = 0, kAborted = 1, kExpectationFailed = 2 };

/// Runs the scenario and writes series.csv, snapshot_<t>.csv and
/// verdict.txt into rc.output_dir. Returns 0 when every expectation passed,
/// 2 when one failed and 1 on solver abort or I/O failure.
int execute(const RunConfig& rc, std::ostream& log);

/// Runs every preset concurrently into output_dir/<name>/. Returns the
/// worst exit status (1 over 2 over 0).
int execute_all_presets(const std::filesystem::path& output_dir, std::ostream& log);

/// Convergence study of the manufactured solution; writes mms_<mode>.csv and
/// verdict.txt. Spatial order must reach 1.8 and temporal order 0.85.
int execute_mms(Mode mode, const std::filesystem::path& output_dir, std::ostream& log);

/// Numbers as written to every CSV file (17 significant digits).
std::string format_number(double x);

void write_series(std::ostream& os, const std::vector<DiagnosticsRecord>& records);
void write_snapshot(std::ostream& os, const State& s, const SchemeConfig& cfg);
std::string snapshot_name(double requested_time);

}  // namespace chemotaxis::cli
