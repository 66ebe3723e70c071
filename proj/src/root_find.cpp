#include "sae/root_find.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "sae/errors.hpp"

namespace sae {

namespace {

bool converged(double lo, double hi, const RootOptions& opts) {
  const double scale = std::max(std::abs(lo), std::abs(hi));
  return hi - lo <= std::max(opts.x_tol, 4.0 * std::numeric_limits<double>::epsilon() * scale) ||
         hi - lo <= std::numeric_limits<double>::min();
}

}  // namespace

double bracketed_root(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo, double hi,
                      const RootOptions& opts) {
  if (!(lo < hi)) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi))
    throw SolverFailure("bracketed_root: endpoints do not bracket a root");

  // Bisect until the bracket is narrow enough that Newton is in its
  // quadratic regime; a fixed width fraction works for the smooth
  // transcendental functions used here.
  const double width0 = hi - lo;
  int it = 0;
  while (hi - lo > 1e-3 * width0 && it < opts.max_bisections) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    ++it;
  }

  double x = 0.5 * (lo + hi);
  for (int n = 0; n < opts.max_newton + opts.max_bisections; ++n) {
    if (converged(lo, hi, opts)) break;
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi) || n >= opts.max_newton) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return x;
}

}  // namespace sae
