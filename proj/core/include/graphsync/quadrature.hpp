#pragma once

#include <functional>

namespace graphsync {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  // True when part of the interval was replaced by a tail extrapolation.
  bool clipped = false;
};

// Adaptive Simpson with Richardson correction. The absolute tolerance is
// split between subintervals; panels still unresolved at max_depth are
// accepted and counted in error_estimate. Throws QuadratureDivergence if the
// integrand is not finite at a sample point.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-10, int max_depth = 60);

}  // namespace graphsync
