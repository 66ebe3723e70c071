#include "sae/wall_models.hpp"

#include <cmath>
#include <numbers>

#include "sae/errors.hpp"

namespace sae::wall {

namespace {
constexpr double kPi = std::numbers::pi;
}

ScatterResult reflection(double k, const ExtendedReal& gamma) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("reflection: k must be finite and > 0");
  ScatterResult r;
  r.k = k;
  if (!gamma.is_finite()) {
    r.R = {-1.0, 0.0};
    r.delta = kPi;
    return r;
  }
  const double g = gamma.value();
  if (std::isnan(g)) throw InvalidArgument("reflection: gamma is NaN");
  const std::complex<double> num(g, k);
  const std::complex<double> den(g, -k);
  r.R = -num / den;
  // atan(k/0) = pi/2 gives the Neumann value 2 pi.
  r.delta = g == 0.0 ? 2.0 * kPi : 2.0 * std::atan(k / g) + kPi;
  return r;
}

std::vector<ScatterResult> reflection_scan(const std::vector<double>& ks,
                                           const ExtendedReal& gamma) {
  std::vector<ScatterResult> out;
  out.reserve(ks.size());
  for (double k : ks) {
    ScatterResult r = reflection(k, gamma);
    if (!out.empty()) {
      const double prev = out.back().delta;
      while (r.delta - prev > kPi) r.delta -= 2.0 * kPi;
      while (r.delta - prev < -kPi) r.delta += 2.0 * kPi;
    }
    out.push_back(r);
  }
  return out;
}

WellApprox square_well_parameters(double gamma, double epsilon, double mass) {
  if (!std::isfinite(gamma)) throw InvalidArgument("square_well_parameters: gamma must be finite");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw InvalidArgument("square_well_parameters: epsilon must be finite and > 0");
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw InvalidArgument("square_well_parameters: mass must be finite and > 0");
  WellApprox w;
  w.epsilon = epsilon;
  w.target_gamma = gamma;
  w.q = kPi / (2.0 * epsilon) - (2.0 / kPi) * gamma;
  if (!(w.q > 0.0))
    throw InvalidArgument("square_well_parameters: q <= 0, epsilon too large for this gamma");
  w.V0 = w.q * w.q / (2.0 * mass);
  return w;
}

double effective_gamma(const WellApprox& well, double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw InvalidArgument("effective_gamma: mass must be finite and > 0");
  const double arg = well.q * well.epsilon;
  const double s = std::sin(arg);
  if (std::abs(s) < 1e-12) throw SingularConfiguration("effective_gamma: q eps at a pole of cot");
  return well.q * std::cos(arg) / s;
}

}  // namespace sae::wall
