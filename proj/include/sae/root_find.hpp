#pragma once

#include <functional>

namespace sae {

struct RootOptions {
  // Absolute tolerance on the abscissa, on top of a few ulps relative.
  double x_tol = 0.0;
  int max_bisections = 200;
  int max_newton = 20;
};

// Root of f on [lo, hi] where f(lo) and f(hi) have opposite signs (or one of
// them is zero). Bisection shrinks the bracket until Newton steps on df stay
// inside it; any Newton step that escapes the bracket falls back to
// bisection. Throws SolverFailure if the endpoints do not bracket a root.
double bracketed_root(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo,
                      double hi, const RootOptions& opts = {});

}  // namespace sae
