#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chemotaxis/model.hpp"
#include "chemotaxis/solver.hpp"

namespace chemotaxis {

/// Observables at one sampling instant. Norm fields are squared discrete
/// norms: l2 = int f^2, h1 = l2 + int f_x^2, h2 = h1 + int f_xx^2.
struct DiagnosticsRecord {
  double t = 0.0;
  /// Empty when alpha1 and alpha2 differ (relative entropy is only defined
  /// against a spatially constant alpha).
  std::optional<double> entropy;
  std::optional<double> lyapunov;
  double l2_u_tilde = 0.0;
  double l2_v_tilde = 0.0;
  double h1_u_tilde = 0.0;
  double h1_v_tilde = 0.0;
  double h2_u_tilde = 0.0;
  double h2_v_tilde = 0.0;
  double fisher = 0.0;
  double v_mass = 0.0;
  double sup_dist_u = 0.0;
  double sup_dist_v = 0.0;
  BoundaryValues boundary_values;
  double max_char_speed = 0.0;
  double advective_cfl = 0.0;
};

/// Trapezoidal rule over [0, 1].
double trapezoid(std::span<const double> f, const Grid& g);

/// First difference quotient: central inside, one-sided second order at the ends.
Field derivative(std::span<const double> f, const Grid& g);

/// int [(u ln u - u) - (a ln a - a) - (u - a) ln a] dx.
/// Throws DomainError for u_i or alpha below 1e-14.
double relative_entropy(std::span<const double> u, double alpha, const Grid& g);

/// int (u_x)^2 / u dx.
double fisher_dissipation(std::span<const double> u, const Grid& g);

/// Squared discrete H^order norm (order in {0, 1, 2}).
double discrete_norms(std::span<const double> f, const Grid& g, int order);

double v_mass(std::span<const double> v, const Grid& g);

/// E(u, alpha(t)) + 1/2 ||v - B||^2. Empty when alpha is unmatched. For
/// eps_zero the v reference is v_bar.
std::optional<double> lyapunov_value(const State& s, const SchemeConfig& cfg, double v_bar);

/// Convenience overload for the eps > 0 reference B(., t).
std::optional<double> lyapunov_value(const State& s, const BoundarySpec& b, const Grid& g);

struct Residual {
  double u = 0.0;
  double v = 0.0;
  double value() const noexcept { return u > v ? u : v; }
};

/// Sup norm of the semi-discrete right-hand side at s, per equation.
Residual steady_state_residual(const State& s, const SchemeConfig& cfg);

/// Reference profiles for a state: A from alpha(t); B from beta(t) for eps > 0,
/// from the stored v endpoints for eps = 0.
ReferenceProfiles state_references(const State& s, const SchemeConfig& cfg);

/// All observables of one state. v_bar is the initial v mass.
DiagnosticsRecord diagnose(const State& s, const SchemeConfig& cfg, double v_bar);

std::vector<DiagnosticsRecord> diagnose(const RunResult& run, const SchemeConfig& cfg);

}  // namespace chemotaxis
