#pragma once

// Small derivative-free local solvers used by the obstruction searches.

#include "rigid/symtensor.hpp"

#include <functional>

namespace rigid::detail {

struct LocalMinimum {
  Vector x;
  double value = 0.0;
  int evaluations = 0;
};

using Objective = std::function<double(const Vector&)>;
using ResidualFn = std::function<Vector(const Vector&)>;

/// Nelder-Mead simplex descent from x0 with an axis-aligned initial
/// simplex of the given edge length.
LocalMinimum nelder_mead(const Objective& f, const Vector& x0, double step, int max_evaluations,
                         double value_floor = 0.0);

/// Levenberg-Marquardt on 0.5 * |r(x)|^2 with a forward-difference
/// Jacobian. Returns the squared residual norm as the value.
LocalMinimum levenberg_marquardt(const ResidualFn& r, const Vector& x0, int max_iterations,
                                 double value_floor = 0.0);

}  // namespace rigid::detail
