#include "chemotaxis/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chemotaxis/error.hpp"
#include "chemotaxis/manufactured.hpp"

namespace chemotaxis {

namespace {

constexpr std::size_t kMinCells = 4;
constexpr double kCompatibilityTol = 1e-6;
// Relative slack when mapping a time onto the step lattice.
constexpr double kLatticeSlack = 1e-9;

void check_mesh(double epsilon, std::size_t n_cells, double dx) {
  if (n_cells < kMinCells) {
    throw ConfigError("n_cells >= 4 required (got " + std::to_string(n_cells) + ")");
  }
  if (epsilon > 0.0 && !(dx < std::sqrt(epsilon / 10.0))) {
    throw ConfigError("mesh constraint dx < sqrt(epsilon/10) violated: dx=" + std::to_string(dx) +
                      ", sqrt(epsilon/10)=" + std::to_string(std::sqrt(epsilon / 10.0)));
  }
}

// Interior forward-Euler update shared by both modes. Writes nodes 1..N-1 of
// next and returns nothing; endpoints are the caller's business.
void interior_update(const State& s, State& next, const SchemeConfig& cfg) {
  const auto& u = s.u;
  const auto& v = s.v;
  const std::size_t n = cfg.grid.n_cells;
  const double dt = cfg.grid.dt;
  const double dx = cfg.grid.dx;
  const double two_dx = 2.0 * dx;
  const double dx2 = dx * dx;
  const double sign = static_cast<double>(cfg.params.sign_chimu);

  if (cfg.mode == Mode::eps_positive) {
    const double eps_d = cfg.params.epsilon / cfg.params.D;
    const double eps_chi = cfg.params.epsilon / cfg.params.chi;
    for (std::size_t i = 1; i < n; ++i) {
      next.u[i] = u[i] + dt * ((u[i + 1] * v[i + 1] - u[i - 1] * v[i - 1]) / two_dx +
                               (u[i + 1] - 2.0 * u[i] + u[i - 1]) / dx2);
      next.v[i] = v[i] + dt * (sign * (u[i + 1] - u[i - 1]) / two_dx +
                               eps_d * (v[i + 1] - 2.0 * v[i] + v[i - 1]) / dx2 +
                               eps_chi * (v[i + 1] * v[i + 1] - v[i - 1] * v[i - 1]) / two_dx);
    }
  } else {
    for (std::size_t i = 1; i < n; ++i) {
      next.u[i] = u[i] + dt * ((u[i + 1] * v[i + 1] - u[i - 1] * v[i - 1]) / two_dx +
                               (u[i + 1] - 2.0 * u[i] + u[i - 1]) / dx2);
      next.v[i] = v[i] + dt * (sign * (u[i + 1] - u[i - 1]) / two_dx);
    }
  }

  if (cfg.forcing == Forcing::manufactured) {
    for (std::size_t i = 1; i < n; ++i) {
      const auto f = manufactured_forcing(cfg.grid.x(i), s.t, cfg.params, cfg.mode);
      next.u[i] += dt * f.u;
      next.v[i] += dt * f.v;
    }
  }
}

// v endpoint rates for eps = 0: v_t = sign * u_x (+ forcing) with one-sided stencils.
std::pair<double, double> zero_eps_boundary_rates(const State& s, const SchemeConfig& cfg) {
  const auto& u = s.u;
  const std::size_t n = cfg.grid.n_cells;
  const double two_dx = 2.0 * cfg.grid.dx;
  const double sign = static_cast<double>(cfg.params.sign_chimu);
  double left = sign * (-3.0 * u[0] + 4.0 * u[1] - u[2]) / two_dx;
  double right = sign * (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / two_dx;
  if (cfg.forcing == Forcing::manufactured) {
    left += manufactured_forcing(0.0, s.t, cfg.params, cfg.mode).v;
    right += manufactured_forcing(1.0, s.t, cfg.params, cfg.mode).v;
  }
  return {left, right};
}

void check_state(const State& s) {
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    if (!std::isfinite(s.u[i]) || !std::isfinite(s.v[i])) {
      throw Instability(i, s.t);
    }
    if (!(s.u[i] > 0.0)) {
      throw PositivityLoss(i, s.t, s.u[i]);
    }
  }
}

void check_shape(const State& s, const Grid& g) {
  if (s.u.size() != g.n_nodes() || s.v.size() != g.n_nodes()) {
    throw ConfigError("state length does not match the grid (expected " + std::to_string(g.n_nodes()) +
                      " nodes)");
  }
}

// Advances s into next (which must already have the right size); t_new is
// the time of the new level.
void advance(const State& s, State& next, const SchemeConfig& cfg, double t_new) {
  const std::size_t n = cfg.grid.n_cells;
  interior_update(s, next, cfg);
  next.u[0] = eval_signal(cfg.boundary.alpha1, t_new);
  next.u[n] = eval_signal(cfg.boundary.alpha2, t_new);
  if (cfg.mode == Mode::eps_positive) {
    next.v[0] = eval_signal(cfg.boundary.beta1, t_new);
    next.v[n] = eval_signal(cfg.boundary.beta2, t_new);
  } else {
    const auto [left, right] = zero_eps_boundary_rates(s, cfg);
    next.v[0] = s.v[0] + cfg.grid.dt * left;
    next.v[n] = s.v[n] + cfg.grid.dt * right;
  }
  next.t = t_new;
  check_state(next);
}

std::pair<State, StepReport> checked_step(const State& s, const SchemeConfig& cfg, Mode expected) {
  if (cfg.mode != expected) {
    throw ConfigError(std::string("stepper for ") + to_string(expected) + " called with mode " +
                      to_string(cfg.mode));
  }
  check_shape(s, cfg.grid);
  State next{Field(s.u.size()), Field(s.v.size()), s.t};
  advance(s, next, cfg, s.t + cfg.grid.dt);
  const StepReport report = measure(next, cfg);
  return {std::move(next), report};
}

}  // namespace

void SchemeConfig::validate() const {
  params.validate();
  if (mode == Mode::eps_positive && !(params.epsilon > 0.0)) {
    throw ConfigError("mode eps_positive requires epsilon > 0");
  }
  if (mode == Mode::eps_zero && params.epsilon != 0.0) {
    throw ConfigError("mode eps_zero requires epsilon = 0");
  }
  check_mesh(params.epsilon, grid.n_cells, grid.dx);
  if (grid.dx != 1.0 / static_cast<double>(grid.n_cells)) {
    throw ConfigError("grid spacing must equal 1/n_cells");
  }
  if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) {
    throw ConfigError("dt must be positive");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("t_end must be finite and >= 0");
  }
  if (!(cfl_guard > 0.0)) {
    throw ConfigError("cfl_guard must be positive");
  }
  // Boundary data at t=0 is never imposed: the first write happens at t=dt.
  boundary.validate(grid.dt, std::max(t_end, grid.dt));
}

Grid make_grid(double epsilon, std::size_t n_cells) {
  if (!(epsilon >= 0.0)) {
    throw ConfigError("epsilon must be >= 0");
  }
  if (n_cells < kMinCells) {
    throw ConfigError("n_cells >= 4 required (got " + std::to_string(n_cells) + ")");
  }
  const double dx = 1.0 / static_cast<double>(n_cells);
  check_mesh(epsilon, n_cells, dx);
  return Grid{n_cells, dx, dx * dx / 2.0};
}

Grid with_timestep(Grid g, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("dt must be positive");
  }
  g.dt = dt;
  return g;
}

StepReport measure(const State& s, const SchemeConfig& cfg) {
  StepReport r;
  r.u_min = s.u.empty() ? 0.0 : s.u[0];
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const auto speeds = characteristic_speeds(s.u[i], s.v[i], cfg.params);
    r.max_char_speed = std::max({r.max_char_speed, std::abs(speeds.minus), std::abs(speeds.plus)});
    r.u_min = std::min(r.u_min, s.u[i]);
  }
  r.advective_cfl = r.max_char_speed * cfg.grid.dt / cfg.grid.dx;
  return r;
}

std::pair<State, StepReport> step_eps_positive(const State& s, const SchemeConfig& cfg) {
  return checked_step(s, cfg, Mode::eps_positive);
}

std::pair<State, StepReport> step_eps_zero(const State& s, const SchemeConfig& cfg) {
  return checked_step(s, cfg, Mode::eps_zero);
}

std::pair<State, StepReport> step(const State& s, const SchemeConfig& cfg) {
  return checked_step(s, cfg, cfg.mode);
}

Tendency tendency(const State& s, const SchemeConfig& cfg) {
  check_shape(s, cfg.grid);
  State next{s.u, s.v, s.t};
  interior_update(s, next, cfg);
  Tendency out{Field(s.u.size(), 0.0), Field(s.v.size(), 0.0)};
  const std::size_t n = cfg.grid.n_cells;
  for (std::size_t i = 1; i < n; ++i) {
    out.u[i] = (next.u[i] - s.u[i]) / cfg.grid.dt;
    out.v[i] = (next.v[i] - s.v[i]) / cfg.grid.dt;
  }
  if (cfg.mode == Mode::eps_zero) {
    const auto [left, right] = zero_eps_boundary_rates(s, cfg);
    out.v[0] = left;
    out.v[n] = right;
  }
  return out;
}

std::size_t step_count(double t_end, double dt) {
  if (!(t_end > 0.0)) {
    return 0;
  }
  return static_cast<std::size_t>(std::ceil(t_end / dt - kLatticeSlack));
}

RunResult run(const SchemeConfig& cfg, const State& init, std::vector<double> sample_times) {
  cfg.validate();
  check_shape(init, cfg.grid);
  if (init.t != 0.0) {
    throw ConfigError("initial state must start at t=0");
  }
  for (double t : sample_times) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw ConfigError("sampling instants must be finite and >= 0");
    }
  }
  std::sort(sample_times.begin(), sample_times.end());

  const double dt = cfg.grid.dt;
  const std::size_t total = step_count(cfg.t_end, dt);
  auto step_of = [&](double t) {
    const auto k = static_cast<std::size_t>(std::floor(t / dt + kLatticeSlack));
    return std::min(k, total);
  };

  RunResult result;
  const std::size_t n = cfg.grid.n_cells;
  const BoundaryValues b0 = eval_boundary(cfg.boundary, 0.0);
  if (std::abs(init.u[0] - b0.alpha1) > kCompatibilityTol ||
      std::abs(init.u[n] - b0.alpha2) > kCompatibilityTol) {
    result.warnings.push_back("initial u is incompatible with alpha at t=0; endpoints are overwritten at the first step");
  }

  State current = init;
  State next = init;
  try {
    check_state(current);
  } catch (const Error& e) {
    result.status = RunStatus::aborted;
    result.abort_reason = e.what();
    result.abort_time = 0.0;
    return result;
  }

  std::size_t pending = 0;
  auto record = [&](double requested, std::size_t k) {
    result.samples.push_back(Sample{requested, k, current, measure(current, cfg)});
  };
  record(0.0, 0);
  auto flush = [&](std::size_t k) {
    while (pending < sample_times.size() && step_of(sample_times[pending]) == k) {
      record(sample_times[pending], k);
      ++pending;
    }
  };
  flush(0);

  for (std::size_t k = 0; k < total; ++k) {
    try {
      advance(current, next, cfg, static_cast<double>(k + 1) * dt);
    } catch (const Error& e) {
      result.status = RunStatus::aborted;
      result.abort_reason = e.what();
      result.abort_time = next.t;
      result.last_healthy = current;
      break;
    }
    std::swap(current, next);
    ++result.steps_taken;

    // CFL monitor: only the maximum matters, computed on the fly.
    double speed = 0.0;
    for (std::size_t i = 0; i < current.u.size(); ++i) {
      const auto s = characteristic_speeds(current.u[i], current.v[i], cfg.params);
      speed = std::max(speed, std::max(-s.minus, s.plus));
    }
    const double cfl = speed * dt / cfg.grid.dx;
    result.max_advective_cfl = std::max(result.max_advective_cfl, cfl);
    if (cfl > cfg.cfl_guard) {
      ++result.cfl_violations;
    }
    flush(k + 1);
  }

  if (result.cfl_violations > 0) {
    result.warnings.push_back("advective CFL exceeded the guard on " + std::to_string(result.cfl_violations) +
                              " steps (max " + std::to_string(result.max_advective_cfl) + ")");
  }
  if (result.status == RunStatus::completed) {
    result.last_healthy = current;
  }
  return result;
}

}  // namespace chemotaxis
