#pragma once

#include <functional>

namespace sae {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

// Adaptive 7/15-point Gauss-Kronrod quadrature. Subdivides until the
// summed error estimate is below abs_tol (or max_depth is reached).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol = 1e-12,
                                    int max_depth = 40);

}  // namespace sae
