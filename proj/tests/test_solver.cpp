#include <cmath>

#include "chemotaxis/error.hpp"
#include "chemotaxis/manufactured.hpp"
#include "chemotaxis/scenarios.hpp"
#include "chemotaxis/solver.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chemotaxis;

namespace {

BoundarySpec constant_boundary(double u, double v) {
  return {BoundarySignal::constant(u), BoundarySignal::constant(u), BoundarySignal::constant(v),
          BoundarySignal::constant(v)};
}

SchemeConfig make_config(Mode mode, double epsilon, std::size_t n, BoundarySpec b, double t_end) {
  SchemeConfig cfg;
  cfg.mode = mode;
  cfg.params.epsilon = epsilon;
  cfg.grid = make_grid(epsilon, n);
  cfg.boundary = b;
  cfg.t_end = t_end;
  return cfg;
}

// Straight transcription of the forward-Euler update, one node at a time.
State naive_step(const State& s, const SchemeConfig& cfg) {
  const std::size_t n = cfg.grid.n_cells;
  const double dx = cfg.grid.dx;
  const double dt = cfg.grid.dt;
  const double eps = cfg.params.epsilon;
  State out = s;
  for (std::size_t i = 1; i < n; ++i) {
    const double flux_uv = (s.u[i + 1] * s.v[i + 1] - s.u[i - 1] * s.v[i - 1]) / (2.0 * dx);
    const double lap_u = (s.u[i + 1] - 2.0 * s.u[i] + s.u[i - 1]) / (dx * dx);
    out.u[i] = s.u[i] + dt * (flux_uv + lap_u);
    const double grad_u = 1.0 * (s.u[i + 1] - s.u[i - 1]) / (2.0 * dx);
    if (cfg.mode == Mode::eps_positive) {
      const double lap_v = (eps / 1.0) * (s.v[i + 1] - 2.0 * s.v[i] + s.v[i - 1]) / (dx * dx);
      const double flux_vv = (eps / 1.0) * (s.v[i + 1] * s.v[i + 1] - s.v[i - 1] * s.v[i - 1]) / (2.0 * dx);
      out.v[i] = s.v[i] + dt * (grad_u + lap_v + flux_vv);
    } else {
      out.v[i] = s.v[i] + dt * grad_u;
    }
  }
  const double t = s.t + dt;
  out.u[0] = eval_signal(cfg.boundary.alpha1, t);
  out.u[n] = eval_signal(cfg.boundary.alpha2, t);
  if (cfg.mode == Mode::eps_positive) {
    out.v[0] = eval_signal(cfg.boundary.beta1, t);
    out.v[n] = eval_signal(cfg.boundary.beta2, t);
  } else {
    out.v[0] = s.v[0] + dt * (1.0 * (-3.0 * s.u[0] + 4.0 * s.u[1] - s.u[2]) / (2.0 * dx));
    out.v[n] = s.v[n] + dt * (1.0 * (3.0 * s.u[n] - 4.0 * s.u[n - 1] + s.u[n - 2]) / (2.0 * dx));
  }
  out.t = t;
  return out;
}

State smooth_state(const Grid& g) {
  return {testing::sample(g, [](double x) { return manufactured_solution(x, 0.0).u; }),
          testing::sample(g, [](double x) { return manufactured_solution(x, 0.0).v + 0.05 * x; }), 0.0};
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("make_grid") {
    const Grid g = make_grid(0.7, 200);
    CHECK(g.dx == 0.005);
    CHECK(g.dt == doctest::Approx(1.25e-5).epsilon(1e-15));
    CHECK(g.n_nodes() == 201);
    CHECK_THROWS_AS(make_grid(0.7, 3), ConfigError);
    CHECK_THROWS_WITH_AS(make_grid(0.0001, 200), doctest::Contains("dx < sqrt(epsilon/10)"), ConfigError);
    CHECK_NOTHROW(make_grid(0.0, 4));
  }

  TEST_CASE("config validation") {
    auto cfg = make_config(Mode::eps_positive, 0.7, 50, constant_boundary(0.7, 0.3), 1.0);
    CHECK_NOTHROW(cfg.validate());
    cfg.params.epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = make_config(Mode::eps_zero, 0.0, 50, constant_boundary(-0.1, 0.0), 1.0);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}

TEST_SUITE("steppers") {
  TEST_CASE("constant states are fixed points") {
    for (int k = 0; k < 100; ++k) {
      const double u = testing::uniform(1e-3, 5.0);
      const double v = testing::uniform(-2.0, 2.0);
      const double eps = testing::uniform(0.1, 2.0);
      const auto pos = make_config(Mode::eps_positive, eps, 64, constant_boundary(u, v), 1.0);
      const auto zero = make_config(Mode::eps_zero, 0.0, 64, constant_boundary(u, 0.0), 1.0);
      const State s{Field(65, u), Field(65, v), 0.0};

      const auto [a, ra] = step_eps_positive(s, pos);
      const auto [b, rb] = step_eps_zero(s, zero);
      for (std::size_t i = 0; i < 65; ++i) {
        REQUIRE(testing::ulps(a.u[i], u) <= 4.0);
        REQUIRE(testing::ulps(a.v[i], v) <= 4.0);
        REQUIRE(testing::ulps(b.u[i], u) <= 4.0);
        REQUIRE(testing::ulps(b.v[i], v) <= 4.0);
      }
    }
  }

  TEST_CASE("one step matches a naive transcription exactly") {
    const Grid g = make_grid(0.7, 40);
    const auto b = BoundarySpec{BoundarySignal::exp_decay(0.5, 0.1, 3.0), BoundarySignal::rational_decay(0.4, 2.0, 5.0),
                                BoundarySignal::exp_decay(0.1, 0.02, 1.0), BoundarySignal::constant(0.15)};
    for (Mode mode : {Mode::eps_positive, Mode::eps_zero}) {
      const double eps = mode == Mode::eps_positive ? 0.7 : 0.0;
      const auto cfg = make_config(mode, eps, 40, b, 1.0);
      State s = smooth_state(g);
      s.t = 0.013;
      const auto [next, report] = step(s, cfg);
      const State oracle = naive_step(s, cfg);
      CHECK(next.t == oracle.t);
      for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        REQUIRE(next.u[i] == oracle.u[i]);
        REQUIRE(next.v[i] == oracle.v[i]);
      }
      CHECK(report.advective_cfl == doctest::Approx(report.max_char_speed * cfg.grid.dt / cfg.grid.dx));
    }
  }

  TEST_CASE("wrong mode is rejected") {
    const auto cfg = make_config(Mode::eps_zero, 0.0, 16, constant_boundary(0.3, 0.0), 1.0);
    const State s{Field(17, 0.3), Field(17, 0.1), 0.0};
    CHECK_THROWS_AS(step_eps_positive(s, cfg), ConfigError);
    CHECK_NOTHROW(step_eps_zero(s, cfg));
  }

  TEST_CASE("positivity loss") {
    const auto cfg = make_config(Mode::eps_positive, 0.7, 16, constant_boundary(0.3, 0.0), 1.0);
    State s{Field(17, 0.3), Field(17, 0.0), 0.0};
    s.u[8] = 1e-6;
    s.v[7] = 50.0;
    s.v[9] = -50.0;
    CHECK_THROWS_AS(step(s, cfg), PositivityLoss);
  }

  TEST_CASE("tendency vanishes at a constant steady state") {
    const auto cfg = make_config(Mode::eps_positive, 0.7, 32, constant_boundary(0.7, 0.3), 1.0);
    const auto r = tendency(State{Field(33, 0.7), Field(33, 0.3), 0.0}, cfg);
    CHECK(testing::sup_diff(r.u, Field(33, 0.0)) == 0.0);
    CHECK(testing::sup_diff(r.v, Field(33, 0.0)) == 0.0);
  }
}

TEST_SUITE("run") {
  TEST_CASE("zero horizon keeps only the initial snapshot") {
    const auto cfg = make_config(Mode::eps_positive, 0.7, 32, constant_boundary(0.7, 0.3), 0.0);
    const State init{Field(33, 0.5), Field(33, 0.1), 0.0};
    const auto r = run(cfg, init, {});
    CHECK(r.status == RunStatus::completed);
    REQUIRE(r.samples.size() == 1);
    CHECK(r.samples[0].state == init);
    CHECK(r.steps_taken == 0);
  }

  TEST_CASE("M sampling instants give M+1 snapshots at the right steps") {
    const auto cfg = make_config(Mode::eps_zero, 0.0, 32, constant_boundary(0.3, 0.0), 0.05);
    const State init = sample_initial({}, cfg.grid);
    const std::vector<double> plan{0.04, 0.001, 0.02, 0.05};
    const auto r = run(cfg, init, plan);
    REQUIRE(r.samples.size() == plan.size() + 1);
    CHECK(r.samples[1].requested_time == 0.001);
    for (std::size_t k = 1; k < r.samples.size(); ++k) {
      const auto& smp = r.samples[k];
      CHECK(smp.state.t <= smp.requested_time + 1e-12);
      CHECK(smp.state.t > smp.requested_time - cfg.grid.dt);
      CHECK(smp.state.t == static_cast<double>(smp.step) * cfg.grid.dt);
    }
    CHECK(r.steps_taken == step_count(0.05, cfg.grid.dt));
  }

  TEST_CASE("runs are bit-for-bit repeatable") {
    const auto cfg = make_config(Mode::eps_positive, 0.7, 50, paper_preset("eps07_case1").cfg.boundary, 0.2);
    const State init = sample_initial({}, cfg.grid);
    const auto a = run(cfg, init, {0.1, 0.2});
    const auto b = run(cfg, init, {0.1, 0.2});
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
      CHECK(a.samples[k].state == b.samples[k].state);
    }
  }

  TEST_CASE("a blow-up aborts and keeps the last healthy state") {
    auto cfg = make_config(Mode::eps_positive, 0.7, 32, constant_boundary(0.3, 0.0), 1.0);
    cfg.grid = with_timestep(cfg.grid, 4.0 * cfg.grid.dt);  // far beyond the parabolic limit
    const auto r = run(cfg, sample_initial({}, cfg.grid), {1.0});
    CHECK(r.status == RunStatus::aborted);
    REQUIRE(r.abort_reason.has_value());
    REQUIRE(r.last_healthy.has_value());
    CHECK(r.last_healthy->t < *r.abort_time);
  }

  TEST_CASE("incompatible initial data raises a warning") {
    const auto cfg = make_config(Mode::eps_zero, 0.0, 32, constant_boundary(0.3, 0.0), 0.01);
    const auto r = run(cfg, sample_initial({InitialData::Kind::constant, 0.5, 0.1}, cfg.grid), {});
    CHECK(r.warnings.size() == 1);
  }

  TEST_CASE("nonzero start time is rejected") {
    const auto cfg = make_config(Mode::eps_zero, 0.0, 32, constant_boundary(0.3, 0.0), 0.01);
    State init = sample_initial({}, cfg.grid);
    init.t = 0.5;
    CHECK_THROWS_AS(run(cfg, init, {}), ConfigError);
  }
}
