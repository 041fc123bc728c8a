#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chemotaxis/model.hpp"

namespace chemotaxis {

/// Source terms added to the right-hand side. `manufactured` injects the
/// forcing of the manufactured solution in manufactured.hpp.
enum class Forcing { none, manufactured };

struct SchemeConfig {
  Mode mode = Mode::eps_positive;
  Grid grid;
  ModelParams params;
  BoundarySpec boundary;
  double t_end = 0.0;
  /// Advective CFL level above which a run records a warning.
  double cfl_guard = 0.9;
  Forcing forcing = Forcing::none;

  /// Throws ConfigError when mode, grid, params, boundary or horizon are inconsistent.
  void validate() const;

  bool operator==(const SchemeConfig&) const = default;
};

struct StepReport {
  double max_char_speed = 0.0;
  double advective_cfl = 0.0;
  double u_min = 0.0;
};

/// dx = 1/n_cells, dt = dx^2/2. Rejects n_cells < 4, and for epsilon > 0
/// any grid with dx >= sqrt(epsilon/10).
Grid make_grid(double epsilon, std::size_t n_cells);

/// Same grid with an explicitly chosen timestep.
Grid with_timestep(Grid g, double dt);

/// Characteristic-speed summary of a state on its grid.
StepReport measure(const State& s, const SchemeConfig& cfg);

/// One forward-Euler step of the eps > 0 system; all four endpoints are taken
/// from the boundary signals at the new time.
std::pair<State, StepReport> step_eps_positive(const State& s, const SchemeConfig& cfg);

/// One forward-Euler step of the eps = 0 system. The v endpoints follow
/// v_t = u_x with one-sided second-order differences of the pre-step u.
std::pair<State, StepReport> step_eps_zero(const State& s, const SchemeConfig& cfg);

/// Dispatches on cfg.mode.
std::pair<State, StepReport> step(const State& s, const SchemeConfig& cfg);

/// Update rate (next - current) / dt of one step, excluding the Dirichlet
/// endpoints that are overwritten from the boundary signals.
struct Tendency {
  Field u;
  Field v;
};

/// Right-hand side of the semi-discrete system at s. Dirichlet endpoints are
/// zero; for eps = 0 the v endpoints carry the boundary ODE rate.
Tendency tendency(const State& s, const SchemeConfig& cfg);

struct Sample {
  double requested_time = 0.0;
  std::size_t step = 0;
  State state;
  StepReport report;
};

enum class RunStatus { completed, aborted };

struct RunResult {
  RunStatus status = RunStatus::completed;
  /// samples[0] is the initial state; samples[k] answers requested time k-1
  /// in ascending order.
  std::vector<Sample> samples;
  std::size_t steps_taken = 0;
  double max_advective_cfl = 0.0;
  std::size_t cfl_violations = 0;
  std::vector<std::string> warnings;

  std::optional<std::string> abort_reason;
  std::optional<double> abort_time;
  /// Last state that passed the positivity and finiteness checks.
  std::optional<State> last_healthy;
};

/// Steps from init (t=0) until t_end. Each requested time is answered by the
/// last step whose time does not exceed it; requests beyond t_end get the
/// final state. Step errors end the run with status `aborted`.
RunResult run(const SchemeConfig& cfg, const State& init, std::vector<double> sample_times);

/// Number of steps needed to reach t_end (0 when t_end <= 0).
std::size_t step_count(double t_end, double dt);

}  // namespace chemotaxis
