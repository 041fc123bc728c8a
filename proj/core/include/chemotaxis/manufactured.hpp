#pragma once

#include "chemotaxis/model.hpp"

namespace chemotaxis {

/// Manufactured solution used to verify the scheme:
///   u*(x, t) = 0.5 + 0.1 sin(2 pi x) e^{-t}
///   v*(x, t) = 0.1 cos(2 pi x) e^{-t}
struct ManufacturedValue {
  double u = 0.0;
  double v = 0.0;
};

ManufacturedValue manufactured_solution(double x, double t);

/// Residual of the manufactured fields in the continuous equations of `mode`,
/// i.e. the source that makes (u*, v*) an exact solution.
ManufacturedValue manufactured_forcing(double x, double t, const ModelParams& p, Mode mode);

/// Dirichlet data matching the manufactured solution at x=0 and x=1.
BoundarySpec manufactured_boundary();

}  // namespace chemotaxis
