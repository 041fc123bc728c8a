#include "chemotaxis/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "chemotaxis/error.hpp"

namespace chemotaxis {

PositivityLoss::PositivityLoss(std::size_t node, double time, double value)
    : Error("positivity of u lost at node " + std::to_string(node) + ", t=" + std::to_string(time) +
            " (u=" + std::to_string(value) + ")"),
      node_(node),
      time_(time),
      value_(value) {}

Instability::Instability(std::size_t node, double time)
    : Error("non-finite value at node " + std::to_string(node) + ", t=" + std::to_string(time)),
      node_(node),
      time_(time) {}

const char* to_string(Mode mode) noexcept {
  return mode == Mode::eps_positive ? "eps_positive" : "eps_zero";
}

void ModelParams::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be finite and >= 0");
  }
  if (sign_chimu != 1 && sign_chimu != -1) {
    throw ConfigError("sign_chimu must be +1 or -1");
  }
  if (chi == 0.0 || !std::isfinite(chi)) {
    throw ConfigError("chi must be finite and nonzero");
  }
  if (!(D > 0.0) || !std::isfinite(D)) {
    throw ConfigError("D must be finite and > 0");
  }
}

Rescaling rescaling_factors(double chi, double mu, double D) {
  if (chi == 0.0 || mu == 0.0 || !(D > 0.0)) {
    throw ConfigError("rescaling needs chi != 0, mu != 0, D > 0");
  }
  const double chimu = std::abs(chi * mu);
  return Rescaling{
      .time = chimu / D,
      .space = std::sqrt(chimu) / D,
      .v = std::copysign(1.0, chi) * std::sqrt(std::abs(chi) / std::abs(mu)),
  };
}

Field Grid::nodes() const {
  Field x(n_nodes());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = this->x(i);
  }
  return x;
}

namespace {

constexpr const char* kSignalNames[] = {"constant", "exp_decay", "rational_decay", "sinusoid"};

}  // namespace

const char* to_string(BoundarySignal::Kind kind) noexcept {
  return kSignalNames[static_cast<int>(kind)];
}

BoundarySignal::Kind parse_signal_kind(const char* name) {
  for (int i = 0; i < 4; ++i) {
    if (std::strcmp(name, kSignalNames[i]) == 0) {
      return static_cast<BoundarySignal::Kind>(i);
    }
  }
  throw ConfigError(std::string("unknown signal kind '") + name +
                    "' (expected constant, exp_decay, rational_decay or sinusoid)");
}

void BoundarySignal::validate() const {
  if (!std::isfinite(c) || !std::isfinite(a) || !std::isfinite(k)) {
    throw ConfigError("boundary signal parameters must be finite");
  }
  if (kind == Kind::rational_decay && !(a > 0.0 && k >= 0.0)) {
    throw ConfigError("rational_decay needs a > 0 and k >= 0");
  }
  if (kind == Kind::exp_decay && k < 0.0) {
    throw ConfigError("exp_decay needs k >= 0");
  }
}

double eval_signal(const BoundarySignal& s, double t) {
  switch (s.kind) {
    case BoundarySignal::Kind::constant:
      return s.c;
    case BoundarySignal::Kind::exp_decay:
      return s.c + s.a * std::exp(-s.k * t);
    case BoundarySignal::Kind::rational_decay:
      return s.c + 1.0 / (s.a + s.k * t);
    case BoundarySignal::Kind::sinusoid:
      return s.c + s.a * std::sin(s.k * t);
  }
  return s.c;
}

double signal_lower_bound(const BoundarySignal& s, double t0, double t1) {
  switch (s.kind) {
    case BoundarySignal::Kind::constant:
      return s.c;
    case BoundarySignal::Kind::exp_decay:
    case BoundarySignal::Kind::rational_decay:
      return std::min(eval_signal(s, t0), eval_signal(s, t1));
    case BoundarySignal::Kind::sinusoid:
      return s.c - std::abs(s.a);
  }
  return s.c;
}

void BoundarySpec::validate(double t0, double t1) const {
  alpha1.validate();
  alpha2.validate();
  beta1.validate();
  beta2.validate();
  if (!(signal_lower_bound(alpha1, t0, t1) > 0.0)) {
    throw ConfigError("alpha1 must stay positive over the run horizon");
  }
  if (!(signal_lower_bound(alpha2, t0, t1) > 0.0)) {
    throw ConfigError("alpha2 must stay positive over the run horizon");
  }
}

BoundaryValues eval_boundary(const BoundarySpec& b, double t) {
  return {eval_signal(b.alpha1, t), eval_signal(b.alpha2, t), eval_signal(b.beta1, t),
          eval_signal(b.beta2, t)};
}

CharacteristicSpeeds characteristic_speeds(double u, double v, const ModelParams& p) {
  const double r = 2.0 * p.epsilon / p.chi;
  const double disc = (r + 1.0) * (r + 1.0) * v * v + 4.0 * p.sign_chimu * u;
  if (disc < 0.0) {
    throw HyperbolicityLoss("characteristic speeds are complex (discriminant " + std::to_string(disc) +
                            ")");
  }
  const double root = std::sqrt(disc);
  const double mean = (r - 1.0) * v;
  return {0.5 * (mean - root), 0.5 * (mean + root)};
}

Field cole_hopf_forward(const ChemicalField& field, const Grid& g) {
  const auto& c = field.c;
  if (c.size() != g.n_nodes()) {
    throw ConfigError("chemical field length does not match the grid");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i] > 0.0)) {
      throw DomainError("cole_hopf_forward: c must be positive (node " + std::to_string(i) + ")");
    }
  }
  const std::size_t n = g.n_cells;
  const double inv2dx = 1.0 / (2.0 * g.dx);
  Field v(c.size());
  v[0] = (-3.0 * c[0] + 4.0 * c[1] - c[2]) * inv2dx / c[0];
  for (std::size_t i = 1; i < n; ++i) {
    v[i] = (c[i + 1] - c[i - 1]) * inv2dx / c[i];
  }
  v[n] = (3.0 * c[n] - 4.0 * c[n - 1] + c[n - 2]) * inv2dx / c[n];
  return v;
}

ChemicalField cole_hopf_inverse(std::span<const double> v, double gauge, const Grid& g) {
  if (!(gauge > 0.0)) {
    throw DomainError("cole_hopf_inverse: gauge must be positive");
  }
  if (v.size() != g.n_nodes()) {
    throw ConfigError("v length does not match the grid");
  }
  ChemicalField out{Field(v.size()), gauge};
  out.c[0] = gauge;
  double integral = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    integral += 0.5 * g.dx * (v[i - 1] + v[i]);
    out.c[i] = gauge * std::exp(integral);
  }
  return out;
}

Field linear_profile(double left, double right, const Grid& g) {
  Field f(g.n_nodes());
  const double slope = right - left;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = slope * g.x(i) + left;
  }
  return f;
}

ReferenceProfiles reference_profiles(const BoundarySpec& b, double t, const Grid& g) {
  const BoundaryValues bv = eval_boundary(b, t);
  return {linear_profile(bv.alpha1, bv.alpha2, g), linear_profile(bv.beta1, bv.beta2, g)};
}

Perturbation perturbation(const State& s, const BoundarySpec& b, Mode mode, double v_bar, const Grid& g) {
  const ReferenceProfiles ref = reference_profiles(b, s.t, g);
  Perturbation p{Field(s.u.size()), Field(s.v.size())};
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    p.u_tilde[i] = s.u[i] - ref.A[i];
    p.v_tilde[i] = s.v[i] - (mode == Mode::eps_positive ? ref.B[i] : v_bar);
  }
  return p;
}

}  // namespace chemotaxis
