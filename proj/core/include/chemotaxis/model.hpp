#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace chemotaxis {

/// Nodal values on a Grid, index 0 at x=0 and index N at x=1.
using Field = std::vector<double>;

/// Which transformed system is being solved: diffusive chemical (eps > 0)
/// or the zero-diffusion limit (eps = 0).
enum class Mode { eps_positive, eps_zero };

const char* to_string(Mode mode) noexcept;

/// Coefficients of the transformed system
///
///   u_t - (u v)_x = u_xx
///   v_t - sign(chi mu) u_x = (eps / D) v_xx + (eps / chi) (v^2)_x
///
/// All shipped scenarios use chi = D = 1 and sign_chimu = +1.
struct ModelParams {
  double epsilon = 0.0;
  double chi = 1.0;
  int sign_chimu = 1;
  double D = 1.0;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Multiplicative factors that take the original variables (t, x, c_x/c) of
/// the logarithmic-sensitivity model to the transformed ones.
struct Rescaling {
  double time = 1.0;
  double space = 1.0;
  double v = 1.0;
};

/// t' = |chi mu| / D * t, x' = sqrt(|chi mu|) / D * x,
/// v' = sign(chi) sqrt(|chi| / |mu|) * v.
Rescaling rescaling_factors(double chi, double mu, double D);

/// Uniform mesh on [0, 1]. Built by make_grid(), which enforces the mesh rules.
struct Grid {
  std::size_t n_cells = 0;
  double dx = 0.0;
  double dt = 0.0;

  std::size_t n_nodes() const noexcept { return n_cells + 1; }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx; }
  Field nodes() const;

  bool operator==(const Grid&) const = default;
};

struct State {
  Field u;
  Field v;
  double t = 0.0;

  bool operator==(const State&) const = default;
};

/// Closed family of time signals used as Dirichlet data.
///
///   constant        s(t) = c
///   exp_decay       s(t) = c + a exp(-k t)
///   rational_decay  s(t) = c + 1 / (a + k t)      (a > 0, k >= 0)
///   sinusoid        s(t) = c + a sin(k t)
struct BoundarySignal {
  enum class Kind { constant, exp_decay, rational_decay, sinusoid };

  Kind kind = Kind::constant;
  double c = 0.0;
  double a = 0.0;
  double k = 0.0;

  static BoundarySignal constant(double c) { return {Kind::constant, c, 0.0, 0.0}; }
  static BoundarySignal exp_decay(double c, double a, double k) { return {Kind::exp_decay, c, a, k}; }
  static BoundarySignal rational_decay(double c, double a, double k) {
    return {Kind::rational_decay, c, a, k};
  }
  static BoundarySignal sinusoid(double c, double a, double k) { return {Kind::sinusoid, c, a, k}; }

  void validate() const;

  bool operator==(const BoundarySignal&) const = default;
};

const char* to_string(BoundarySignal::Kind kind) noexcept;
/// Parses "constant", "exp_decay", ... Throws ConfigError on anything else.
BoundarySignal::Kind parse_signal_kind(const char* name);

double eval_signal(const BoundarySignal& s, double t);

/// Lower bound of s over [t0, t1]. Exact for the monotone kinds, c - |a| for
/// sinusoids.
double signal_lower_bound(const BoundarySignal& s, double t0, double t1);

/// alpha1/alpha2 are u at x=0 and x=1; beta1/beta2 are v at x=0 and x=1.
/// For eps = 0 the betas are never imposed.
struct BoundarySpec {
  BoundarySignal alpha1;
  BoundarySignal alpha2;
  BoundarySignal beta1;
  BoundarySignal beta2;

  bool alpha_matched() const noexcept { return alpha1 == alpha2; }

  /// Validates each signal and checks alpha1, alpha2 > 0 on [t0, t1].
  void validate(double t0, double t1) const;

  bool operator==(const BoundarySpec&) const = default;
};

struct BoundaryValues {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

BoundaryValues eval_boundary(const BoundarySpec& b, double t);

/// Original chemical concentration c, defined up to a multiplicative constant.
struct ChemicalField {
  Field c;
  double gauge = 1.0;
};

struct CharacteristicSpeeds {
  double minus = 0.0;
  double plus = 0.0;
};

/// lambda_pm = [(2 eps/chi - 1) v +- sqrt((2 eps/chi + 1)^2 v^2 + 4 sign u)] / 2.
/// Throws HyperbolicityLoss when the discriminant is negative.
CharacteristicSpeeds characteristic_speeds(double u, double v, const ModelParams& p);

/// v = c_x / c with central differences inside and second-order one-sided
/// stencils at both ends. Throws DomainError if any c_i <= 0.
Field cole_hopf_forward(const ChemicalField& c, const Grid& g);

/// c_i = gauge * exp(trapezoid integral of v over [0, x_i]).
ChemicalField cole_hopf_inverse(std::span<const double> v, double gauge, const Grid& g);

struct ReferenceProfiles {
  Field A;
  Field B;
};

/// Linear interpolants of the boundary data at time t.
ReferenceProfiles reference_profiles(const BoundarySpec& b, double t, const Grid& g);

/// Linear interpolant between two endpoint values.
Field linear_profile(double left, double right, const Grid& g);

struct Perturbation {
  Field u_tilde;
  Field v_tilde;
};

/// u - A(., t), and v - B(., t) (eps_positive) or v - v_bar (eps_zero).
Perturbation perturbation(const State& s, const BoundarySpec& b, Mode mode, double v_bar, const Grid& g);

}  // namespace chemotaxis
