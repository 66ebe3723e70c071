#pragma once

#include <complex>
#include <vector>

#include "sae/extended_real.hpp"

// Probes of a single gamma wall at x = 0 bounding the half line x < 0:
// plane-wave reflection, and the deep narrow square well that realises a
// prescribed gamma in the limit of vanishing width.
namespace sae::wall {

struct ScatterResult {
  double k = 0.0;
  std::complex<double> R;  // reflection amplitude, |R| = 1
  double delta = 0.0;      // R = exp(i delta)
};

struct WellApprox {
  double epsilon = 0.0;  // well width
  double V0 = 0.0;       // depth
  double q = 0.0;        // interior wavenumber
  double target_gamma = 0.0;
};

// R = -(gamma + ik)/(gamma - ik), delta = 2 atan(k/gamma) + pi.
// gamma = 0 gives delta = 2 pi, gamma = +-inf gives delta = pi.
ScatterResult reflection(double k, const ExtendedReal& gamma);

// delta along an increasing k grid, unwrapped so consecutive values never
// jump by more than pi. The first point keeps its principal value.
std::vector<ScatterResult> reflection_scan(const std::vector<double>& ks,
                                           const ExtendedReal& gamma);

// q = pi/(2 eps) - (2/pi) gamma, V0 = q^2/(2m).
WellApprox square_well_parameters(double gamma, double epsilon, double mass);

// q cot(q eps): log-derivative of A sin(qx) at the well edge.
double effective_gamma(const WellApprox& well, double mass);

}  // namespace sae::wall
