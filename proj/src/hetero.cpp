#include "sae/hetero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sae/errors.hpp"

namespace sae::hetero {

double IdentityResiduals::max() const {
  double m = std::max(phase, determinant);
  for (double b : bilinear) m = std::max(m, b);
  return m;
}

IdentityResiduals identity_residuals(const Eigen::Matrix2cd& g, double theta) {
  IdentityResiduals r;
  const cplx rot = std::polar(1.0, -theta);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.phase = std::max(r.phase, std::abs((rot * g(i, j)).imag()));
  r.determinant = std::abs(g.determinant() - std::polar(1.0, 2.0 * theta));
  const cplx g11 = g(0, 0), g12 = g(0, 1), g21 = g(1, 0), g22 = g(1, 1);
  r.bilinear[0] = std::abs(std::conj(g11) * g22 - std::conj(g21) * g12 - 1.0);
  r.bilinear[1] = std::abs(std::conj(g12) * g21 - std::conj(g22) * g11 + 1.0);
  r.bilinear[2] = std::abs(std::conj(g11) * g21 - std::conj(g21) * g11);
  r.bilinear[3] = std::abs(std::conj(g12) * g22 - std::conj(g22) * g12);
  return r;
}

double extract_phase(const Eigen::Matrix2cd& g) {
  Eigen::Index bi = 0, bj = 0;
  g.cwiseAbs().maxCoeff(&bi, &bj);
  double theta = std::arg(g(bi, bj));
  // Gamma and -Gamma share the phase class; keep theta in (-pi/2, pi/2].
  if (theta > std::numbers::pi / 2) theta -= std::numbers::pi;
  if (theta <= -std::numbers::pi / 2) theta += std::numbers::pi;
  return theta;
}

InterfaceMatrix validate_interface(const Eigen::Matrix2cd& g) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!std::isfinite(g(i, j).real()) || !std::isfinite(g(i, j).imag()))
        throw InvalidArgument("interface matrix has non-finite entries");
  if (g.cwiseAbs().maxCoeff() == 0.0) throw NotSelfAdjoint("interface matrix is zero (det != exp(2i theta))");
  const double theta = extract_phase(g);

  InterfaceMatrix out;
  out.gamma = g;
  out.theta = theta;
  out.residuals = identity_residuals(g, theta);
  const auto& r = out.residuals;
  if (r.max() > kIdentityTolerance) {
    static const char* names[4] = {"G11* G22 - G21* G12 = 1", "G12* G21 - G22* G11 = -1",
                                   "G11* G21 - G21* G11 = 0", "G12* G22 - G22* G12 = 0"};
    std::ostringstream msg;
    msg.precision(3);
    msg << "interface matrix is not self-adjoint:";
    if (r.phase > kIdentityTolerance) msg << " entries do not share a common phase (" << r.phase << ");";
    if (r.determinant > kIdentityTolerance) msg << " det != exp(2i theta) (" << r.determinant << ");";
    for (int k = 0; k < 4; ++k)
      if (r.bilinear[k] > kIdentityTolerance) msg << " violates " << names[k] << " (" << r.bilinear[k] << ");";
    throw NotSelfAdjoint(msg.str());
  }
  const cplx rot = std::polar(1.0, -theta);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.real_part(i, j) = (rot * g(i, j)).real();
  return out;
}

InterfaceState match_across(const InterfaceState& s, const InterfaceMatrix& G) {
  return {G.gamma(0, 0) * s.value + G.gamma(0, 1) * s.flux,
          G.gamma(1, 0) * s.value + G.gamma(1, 1) * s.flux};
}

double normal_current(const InterfaceState& s) { return 2.0 * (std::conj(s.value) * s.flux).imag(); }

double current_mismatch(const InterfaceState& a, const InterfaceState& b) {
  return std::abs(normal_current(a) - normal_current(b));
}

ScatterAmplitudes scatter_interface(double E, const RegionParams& left, const RegionParams& right,
                                    const InterfaceMatrix& G) {
  for (const auto* r : {&left, &right})
    if (!(r->mass > 0.0) || !std::isfinite(r->mass) || !std::isfinite(r->V))
      throw InvalidArgument("scatter_interface: regions need finite mass > 0 and finite V");
  if (!std::isfinite(E)) throw InvalidArgument("scatter_interface: E must be finite");
  if (!(E > left.V)) throw InvalidArgument("scatter_interface: no propagating incident wave (E <= V_I)");

  const double k1 = std::sqrt(2.0 * left.mass * (E - left.V));
  const cplx u1(0.0, k1 / (2.0 * left.mass));
  ScatterAmplitudes out;
  cplx u2;
  double k2 = 0.0;
  if (E > right.V) {
    k2 = std::sqrt(2.0 * right.mass * (E - right.V));
    u2 = cplx(0.0, k2 / (2.0 * right.mass));
  } else {
    const double kappa = std::sqrt(2.0 * right.mass * (right.V - E));
    u2 = cplx(-kappa / (2.0 * right.mass), 0.0);
    out.evanescent = true;
  }
  const cplx a = G.gamma(0, 0) + G.gamma(0, 1) * u2;
  const cplx b = G.gamma(1, 0) + G.gamma(1, 1) * u2;
  const cplx den = u1 * a + b;
  if (std::abs(den) == 0.0) throw SingularConfiguration("scatter_interface: matching system is singular");
  out.T = 2.0 * u1 / den;
  out.R = a * out.T - 1.0;
  out.reflection_probability = std::norm(out.R);
  out.transmission_probability =
      out.evanescent ? 0.0 : (k2 * left.mass) / (k1 * right.mass) * std::norm(out.T);
  out.flux_residual = std::abs(1.0 - out.reflection_probability - out.transmission_probability);
  return out;
}

}  // namespace sae::hetero
