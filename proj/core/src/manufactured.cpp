#include "chemotaxis/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace chemotaxis {

namespace {
constexpr double kWave = 2.0 * std::numbers::pi;
constexpr double kAmpU = 0.1;
constexpr double kAmpV = 0.1;
constexpr double kMeanU = 0.5;
}  // namespace

ManufacturedValue manufactured_solution(double x, double t) {
  const double decay = std::exp(-t);
  return {kMeanU + kAmpU * std::sin(kWave * x) * decay, kAmpV * std::cos(kWave * x) * decay};
}

ManufacturedValue manufactured_forcing(double x, double t, const ModelParams& p, Mode mode) {
  const double s = std::sin(kWave * x);
  const double c = std::cos(kWave * x);
  const double e = std::exp(-t);

  const double u = kMeanU + kAmpU * s * e;
  const double u_t = -kAmpU * s * e;
  const double u_x = kAmpU * kWave * c * e;
  const double u_xx = -kAmpU * kWave * kWave * s * e;

  const double v = kAmpV * c * e;
  const double v_t = -kAmpV * c * e;
  const double v_x = -kAmpV * kWave * s * e;
  const double v_xx = -kAmpV * kWave * kWave * c * e;

  ManufacturedValue f;
  f.u = u_t - (u_x * v + u * v_x) - u_xx;
  f.v = v_t - p.sign_chimu * u_x;
  if (mode == Mode::eps_positive) {
    f.v -= p.epsilon / p.D * v_xx + p.epsilon / p.chi * 2.0 * v * v_x;
  }
  return f;
}

BoundarySpec manufactured_boundary() {
  // sin vanishes and cos is 1 at both ends of [0, 1].
  return BoundarySpec{
      .alpha1 = BoundarySignal::constant(kMeanU),
      .alpha2 = BoundarySignal::constant(kMeanU),
      .beta1 = BoundarySignal::exp_decay(0.0, kAmpV, 1.0),
      .beta2 = BoundarySignal::exp_decay(0.0, kAmpV, 1.0),
  };
}

}  // namespace chemotaxis
