#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chemotaxis/diagnostics.hpp"
#include "chemotaxis/model.hpp"
#include "chemotaxis/solver.hpp"

namespace chemotaxis {

/// Closed-form initial data.
struct InitialData {
  enum class Kind {
    /// u0 = 0.3 + 0.1 sin^2(2 pi x), v0 = 0.2 sin^2(2 pi x)
    paper,
    /// u0 = u, v0 = v
    constant,
    /// the manufactured solution at t=0
    manufactured,
  };
  Kind kind = Kind::paper;
  double u = 0.0;
  double v = 0.0;

  bool operator==(const InitialData&) const = default;
};

const char* to_string(InitialData::Kind kind) noexcept;
InitialData::Kind parse_initial_kind(std::string_view name);

State sample_initial(const InitialData& init, const Grid& g);

/// Which of the two fields an expectation looks at.
enum class Fields { u, v, both };

/// sup |u - u_target| (and sup |v - v_target|) at t_end within tol.
struct ConvergesTo {
  Fields fields = Fields::both;
  double u_target = 0.0;
  double v_target = 0.0;
  double tol = 5e-2;
  bool operator==(const ConvergesTo&) const = default;
};

/// Near-stationary at t_end (residual of the selected equations below
/// residual_tol) while staying more than `margin` away from the linear
/// interpolants A, B of the boundary data.
struct DiffersFromInterpolant {
  Fields fields = Fields::both;
  double margin = 0.02;
  double residual_tol = 1e-2;
  bool operator==(const DiffersFromInterpolant&) const = default;
};

/// sup |v - value| at t_end exceeds margin.
struct VAwayFrom {
  double value = 0.0;
  double margin = 0.02;
  bool operator==(const VAwayFrom&) const = default;
};

/// ||v||_inf strictly increases across t_end/4, t_end/2, t_end.
struct VDiverges {
  bool operator==(const VDiverges&) const = default;
};

/// Max-norm error against the manufactured solution at t_end is at most
/// coefficient * (dx^2 + dt).
struct ManufacturedBound {
  double coefficient = 1.0;
  bool operator==(const ManufacturedBound&) const = default;
};

using Expectation = std::variant<ConvergesTo, DiffersFromInterpolant, VAwayFrom, VDiverges, ManufacturedBound>;

std::string describe(const Expectation& e);

struct Scenario {
  std::string name;
  SchemeConfig cfg;
  InitialData initial;
  /// Sorted, duplicate-free sampling instants (t=0 is always recorded in addition).
  std::vector<double> samples;
  std::vector<Expectation> expectations;

  bool operator==(const Scenario&) const = default;
};

/// Names accepted by paper_preset().
const std::vector<std::string>& preset_names();

/// One of the seven numerical experiments. Throws LookupError for unknown names.
Scenario paper_preset(std::string_view name);

/// Manufactured-solution run on n_cells in {50, 100, 200, 400} up to t=1.
Scenario mms_preset(std::size_t n_cells, Mode mode);

/// Key instants plus a uniform grid of `uniform_points` instants on (0, t_end].
std::vector<double> default_samples(std::vector<double> figure_times, double t_end, int uniform_points = 100);

/// Rebuilds the grid for a new n_cells (dt = dx^2/2) and keeps everything else.
Scenario with_n_cells(Scenario scn, std::size_t n_cells);

/// New horizon; sampling instants beyond it are dropped, and t_end itself is
/// added so the run always reports its final state.
Scenario with_t_end(Scenario scn, double t_end);

/// Trajectory of a scenario: the raw run plus diagnostics for every sample.
struct ScenarioRun {
  RunResult run;
  std::vector<DiagnosticsRecord> records;
};

ScenarioRun run_scenario(const Scenario& scn);

struct Verdict {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerdictReport {
  std::vector<Verdict> verdicts;
  bool all_passed() const;
};

/// Checks every expectation against the trajectory. An aborted run fails
/// all of them.
VerdictReport evaluate_expectations(const Scenario& scn, const ScenarioRun& traj);

/// Max-norm error of (u, v) against the manufactured solution at t_end.
double manufactured_error(const Scenario& scn, const RunResult& run);

struct ConvergenceStudy {
  Mode mode = Mode::eps_positive;
  std::vector<std::size_t> n_cells;
  std::vector<double> spatial_errors;
  /// log2 of consecutive error ratios.
  std::vector<double> spatial_orders;
  std::vector<double> dts;
  std::vector<double> temporal_errors;
  std::vector<double> temporal_orders;
};

/// Spatial refinement over n_cells at a fixed dt, then dt halving on a fixed
/// grid measured against a run with a much smaller dt on the same grid.
ConvergenceStudy mms_convergence(Mode mode);

}  // namespace chemotaxis
