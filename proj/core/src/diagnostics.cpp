#include "chemotaxis/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chemotaxis/error.hpp"

namespace chemotaxis {

namespace {

constexpr double kPositivityFloor = 1e-14;

void check_length(std::span<const double> f, const Grid& g) {
  if (f.size() != g.n_nodes()) {
    throw ConfigError("field length " + std::to_string(f.size()) + " does not match grid (" +
                      std::to_string(g.n_nodes()) + " nodes)");
  }
}

void check_positive(std::span<const double> u, const char* what) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] >= kPositivityFloor)) {
      throw DomainError(std::string(what) + ": u must be positive (node " + std::to_string(i) + ")");
    }
  }
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

double entropy_density(double u, double alpha, double log_alpha) {
  return (u * std::log(u) - u) - (alpha * log_alpha - alpha) - (u - alpha) * log_alpha;
}

}  // namespace

double trapezoid(std::span<const double> f, const Grid& g) {
  check_length(f, g);
  double inner = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    inner += f[i];
  }
  return g.dx * (inner + 0.5 * (f.front() + f.back()));
}

Field derivative(std::span<const double> f, const Grid& g) {
  check_length(f, g);
  const std::size_t n = g.n_cells;
  const double two_dx = 2.0 * g.dx;
  Field d(f.size());
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / two_dx;
  for (std::size_t i = 1; i < n; ++i) {
    d[i] = (f[i + 1] - f[i - 1]) / two_dx;
  }
  d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / two_dx;
  return d;
}

double relative_entropy(std::span<const double> u, double alpha, const Grid& g) {
  check_length(u, g);
  if (!(alpha >= kPositivityFloor)) {
    throw DomainError("relative_entropy: alpha must be positive");
  }
  check_positive(u, "relative_entropy");
  const double log_alpha = std::log(alpha);
  Field density(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    density[i] = entropy_density(u[i], alpha, log_alpha);
  }
  return trapezoid(density, g);
}

double fisher_dissipation(std::span<const double> u, const Grid& g) {
  check_length(u, g);
  check_positive(u, "fisher_dissipation");
  Field density = derivative(u, g);
  for (std::size_t i = 0; i < density.size(); ++i) {
    density[i] = density[i] * density[i] / u[i];
  }
  return trapezoid(density, g);
}

double discrete_norms(std::span<const double> f, const Grid& g, int order) {
  if (order < 0 || order > 2) {
    throw ConfigError("discrete_norms: order must be 0, 1 or 2");
  }
  check_length(f, g);
  Field level(f.begin(), f.end());
  double total = 0.0;
  for (int k = 0;; ++k) {
    Field sq(level.size());
    std::transform(level.begin(), level.end(), sq.begin(), [](double x) { return x * x; });
    total += trapezoid(sq, g);
    if (k == order) {
      break;
    }
    level = derivative(level, g);
  }
  return total;
}

double v_mass(std::span<const double> v, const Grid& g) { return trapezoid(v, g); }

ReferenceProfiles state_references(const State& s, const SchemeConfig& cfg) {
  const BoundaryValues bv = eval_boundary(cfg.boundary, s.t);
  ReferenceProfiles ref;
  ref.A = linear_profile(bv.alpha1, bv.alpha2, cfg.grid);
  if (cfg.mode == Mode::eps_positive) {
    ref.B = linear_profile(bv.beta1, bv.beta2, cfg.grid);
  } else {
    ref.B = linear_profile(s.v.front(), s.v.back(), cfg.grid);
  }
  return ref;
}

std::optional<double> lyapunov_value(const State& s, const SchemeConfig& cfg, double v_bar) {
  if (!cfg.boundary.alpha_matched()) {
    return std::nullopt;
  }
  const double alpha = eval_signal(cfg.boundary.alpha1, s.t);
  Field dv(s.v.size());
  if (cfg.mode == Mode::eps_positive) {
    const Field B = state_references(s, cfg).B;
    for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = s.v[i] - B[i];
  } else {
    for (std::size_t i = 0; i < dv.size(); ++i) dv[i] = s.v[i] - v_bar;
  }
  return relative_entropy(s.u, alpha, cfg.grid) + 0.5 * discrete_norms(dv, cfg.grid, 0);
}

std::optional<double> lyapunov_value(const State& s, const BoundarySpec& b, const Grid& g) {
  SchemeConfig cfg;
  cfg.mode = Mode::eps_positive;
  cfg.grid = g;
  cfg.boundary = b;
  return lyapunov_value(s, cfg, 0.0);
}

Residual steady_state_residual(const State& s, const SchemeConfig& cfg) {
  const Tendency rate = tendency(s, cfg);
  Residual r;
  for (std::size_t i = 0; i < rate.u.size(); ++i) {
    r.u = std::max(r.u, std::abs(rate.u[i]));
    r.v = std::max(r.v, std::abs(rate.v[i]));
  }
  return r;
}

DiagnosticsRecord diagnose(const State& s, const SchemeConfig& cfg, double v_bar) {
  const Grid& g = cfg.grid;
  DiagnosticsRecord rec;
  rec.t = s.t;

  const ReferenceProfiles ref = state_references(s, cfg);
  Field u_tilde(s.u.size());
  Field v_tilde(s.v.size());
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    u_tilde[i] = s.u[i] - ref.A[i];
    v_tilde[i] = s.v[i] - (cfg.mode == Mode::eps_positive ? ref.B[i] : v_bar);
  }

  if (cfg.boundary.alpha_matched()) {
    rec.entropy = relative_entropy(s.u, eval_signal(cfg.boundary.alpha1, s.t), g);
    rec.lyapunov = *rec.entropy + 0.5 * discrete_norms(v_tilde, g, 0);
  }
  rec.l2_u_tilde = discrete_norms(u_tilde, g, 0);
  rec.l2_v_tilde = discrete_norms(v_tilde, g, 0);
  rec.h1_u_tilde = discrete_norms(u_tilde, g, 1);
  rec.h1_v_tilde = discrete_norms(v_tilde, g, 1);
  rec.h2_u_tilde = discrete_norms(u_tilde, g, 2);
  rec.h2_v_tilde = discrete_norms(v_tilde, g, 2);
  rec.fisher = fisher_dissipation(s.u, g);
  rec.v_mass = v_mass(s.v, g);
  rec.sup_dist_u = sup_distance(s.u, ref.A);
  rec.sup_dist_v = cfg.mode == Mode::eps_positive
                       ? sup_distance(s.v, ref.B)
                       : std::abs(*std::max_element(v_tilde.begin(), v_tilde.end(),
                                                    [](double a, double b) { return std::abs(a) < std::abs(b); }));

  rec.boundary_values = eval_boundary(cfg.boundary, s.t);
  if (cfg.mode == Mode::eps_zero) {
    rec.boundary_values.beta1 = s.v.front();
    rec.boundary_values.beta2 = s.v.back();
  }
  const StepReport report = measure(s, cfg);
  rec.max_char_speed = report.max_char_speed;
  rec.advective_cfl = report.advective_cfl;
  return rec;
}

std::vector<DiagnosticsRecord> diagnose(const RunResult& run, const SchemeConfig& cfg) {
  std::vector<DiagnosticsRecord> out;
  if (run.samples.empty()) {
    return out;
  }
  const double v_bar = v_mass(run.samples.front().state.v, cfg.grid);
  out.reserve(run.samples.size());
  for (const auto& sample : run.samples) {
    out.push_back(diagnose(sample.state, cfg, v_bar));
  }
  return out;
}

}  // namespace chemotaxis
