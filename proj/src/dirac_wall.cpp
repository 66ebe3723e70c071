#include "sae/dirac_wall.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sae/errors.hpp"

namespace sae::dirac {

namespace {

constexpr cplx kI(0.0, 1.0);

void check_mass_c(double mass, double c) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("dirac: mass must be finite and > 0");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("dirac: c must be finite and > 0");
}

struct SinCos {
  double S;  // 2 eta / (1 + eta^2)
  double C;  // (1 - eta^2) / (1 + eta^2)
};

// Evaluated in eta or 1/eta, whichever is at most 1 in magnitude, so that
// large eta and the infinite limits are exact.
SinCos wall_angle(const ExtendedReal& eta) {
  if (!eta.is_finite()) return {0.0, -1.0};
  const double e = eta.value();
  if (std::isnan(e)) throw InvalidArgument("dirac: eta is NaN");
  if (std::abs(e) <= 1.0) {
    const double d = 1.0 + e * e;
    return {2.0 * e / d, (1.0 - e * e) / d};
  }
  const double t = 1.0 / e;
  const double d = 1.0 + t * t;
  return {2.0 * t / d, (t * t - 1.0) / d};
}

DispersionPoint closed_form(const EtaWall& wall, double P, double p, int branch) {
  check_mass_c(wall.mass, wall.c);
  if (!std::isfinite(p)) throw InvalidArgument("dirac: momentum must be finite");
  const SinCos sc = wall_angle(wall.eta0);
  const double mc2 = wall.mass * wall.c * wall.c;
  DispersionPoint d;
  d.p = p;
  d.branch = branch;
  d.E = sc.S * mc2 - sc.C * P;
  d.kappa = (sc.C * mc2 + sc.S * P) / wall.c;
  d.v = std::abs(sc.C) * wall.c;
  d.mu = sc.S * mc2;
  d.normalizable = d.kappa > 0.0;
  return d;
}

// (E, c kappa) from
//   P a + (mc^2 - K) b = E a,   (mc^2 + K) a - P b = E b
// with the wall written as (A_R, A_L) = (a, b).
std::pair<double, double> solve_bulk(double mc2, double P, double a, double b) {
  double E = 0.0;
  double K = 0.0;
  const double scale = std::max({1.0, std::abs(mc2), std::abs(P)});
  for (int it = 0; it < 50; ++it) {
    const double f1 = P * a + (mc2 - K) * b - E * a;
    const double f2 = (mc2 + K) * a - P * b - E * b;
    // Jacobian d(f1, f2)/d(E, K) = [[-a, -b], [-b, a]]
    const double det = -a * a - b * b;
    const double dE = (f1 * a - (-b) * f2) / det;
    const double dK = ((-a) * f2 - (-b) * f1) / det;
    E -= dE;
    K -= dK;
    if (std::abs(dE) <= 1e-16 * scale && std::abs(dK) <= 1e-16 * scale) return {E, K};
    if (it >= 2 && std::abs(f1) <= 1e-15 * scale && std::abs(f2) <= 1e-15 * scale) return {E, K};
  }
  std::ostringstream msg;
  msg << "numeric_oracle: Newton did not converge (a=" << a << ", b=" << b << ", P=" << P << ")";
  throw SolverFailure(msg.str());
}

}  // namespace

Lambda1D validate_lambda_1d(cplx lambda, double mass, double c) {
  check_mass_c(mass, c);
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw InvalidArgument("validate_lambda_1d: lambda must be finite");
  if (std::abs(lambda.real()) > kRealPartTolerance)
    throw NotSelfAdjoint("validate_lambda_1d: lambda must be purely imaginary (lambda + lambda* != 0)");
  return {lambda, mass, c};
}

double boundary_current_1d(cplx lambda, double c, cplx psi1) {
  const Eigen::Vector2cd psi(psi1, lambda * psi1);
  Eigen::Matrix2cd alpha;
  alpha << 0.0, 1.0, 1.0, 0.0;
  return c * (psi.adjoint() * alpha * psi)(0, 0).real();
}

double axial_current_1d(cplx lambda, double c, cplx psi1) {
  const Eigen::Vector2cd psi(psi1, lambda * psi1);
  return c * psi.squaredNorm();
}

double nonrel_gamma_1d(const Lambda1D& lam) {
  return (-2.0 * lam.mass * lam.c * kI * lam.lambda).real();
}

cplx lambda_from_gamma_1d(double gamma, double mass, double c) {
  check_mass_c(mass, c);
  return kI * gamma / (2.0 * mass * c);
}

Eigen::Matrix2cd sigma(int i) {
  Eigen::Matrix2cd s;
  switch (i) {
    case 1:
      s << 0.0, 1.0, 1.0, 0.0;
      break;
    case 2:
      s << 0.0, -kI, kI, 0.0;
      break;
    case 3:
      s << 1.0, 0.0, 0.0, -1.0;
      break;
    default:
      throw InvalidArgument("sigma: index must be 1, 2 or 3");
  }
  return s;
}

Eigen::Matrix2cd n_dot_sigma(const Eigen::Vector3d& n) {
  return n[0] * sigma(1) + n[1] * sigma(2) + n[2] * sigma(3);
}

Lambda3DCheck validate_lambda_3d(const Lambda3D& lam) {
  if (!lam.normal.allFinite() || std::abs(lam.normal.norm() - 1.0) > 1e-12)
    throw InvalidArgument("validate_lambda_3d: normal must be a unit vector");
  const Eigen::Matrix2cd M = n_dot_sigma(lam.normal) * lam.lambda;
  Lambda3DCheck out;
  out.anti_hermiticity_residual = (M + M.adjoint()).norm();
  out.accepted = out.anti_hermiticity_residual <= kMatrixTolerance;
  return out;
}

namespace {

Eigen::Vector4cd full_spinor(const Lambda3D& lam, const Eigen::Vector2cd& upper) {
  Eigen::Vector4cd psi;
  psi.head<2>() = upper;
  psi.tail<2>() = lam.lambda * upper;
  return psi;
}

}  // namespace

double normal_current_3d(const Lambda3D& lam, const Eigen::Vector2cd& upper, double c) {
  const Eigen::Matrix2cd ns = n_dot_sigma(lam.normal);
  Eigen::Matrix4cd alpha_n = Eigen::Matrix4cd::Zero();
  alpha_n.topRightCorner<2, 2>() = ns;
  alpha_n.bottomLeftCorner<2, 2>() = ns;
  const Eigen::Vector4cd psi = full_spinor(lam, upper);
  return c * (psi.adjoint() * alpha_n * psi)(0, 0).real();
}

double axial_current_3d(const Lambda3D& lam, const Eigen::Vector2cd& upper, double c) {
  const Eigen::Matrix2cd ns = n_dot_sigma(lam.normal);
  Eigen::Matrix4cd sig_n = Eigen::Matrix4cd::Zero();
  sig_n.topLeftCorner<2, 2>() = ns;
  sig_n.bottomRightCorner<2, 2>() = ns;
  const Eigen::Vector4cd psi = full_spinor(lam, upper);
  return -c * (psi.adjoint() * sig_n * psi)(0, 0).real();
}

Eigen::Matrix2cd pauli_gamma_matrix(const Lambda3D& lam, double mass, double c) {
  check_mass_c(mass, c);
  if (!validate_lambda_3d(lam).accepted)
    throw NotSelfAdjoint("pauli_gamma_matrix: n.sigma lambda is not anti-Hermitean");
  return -2.0 * mass * c * kI * n_dot_sigma(lam.normal) * lam.lambda;
}

DispersionPoint dispersion_2p1(const EtaWall& wall, double p) {
  if (!wall.eta_vec.isZero(0.0))
    throw InvalidArgument("dispersion_2p1: eta is a real scalar in (2+1)-d");
  return closed_form(wall, p * wall.c, p, 1);
}

DispersionPoint dispersion_4p1(const EtaWall& wall, double p_mag, int branch) {
  if (!wall.eta_vec.isZero(0.0))
    throw UnsupportedConfiguration("dispersion_4p1: only the rotation-invariant wall eta_vec = 0 is supported");
  if (!(p_mag >= 0.0)) throw InvalidArgument("dispersion_4p1: |p| must be >= 0");
  if (branch != 1 && branch != -1) throw InvalidArgument("dispersion_4p1: branch must be +1 or -1");
  return closed_form(wall, branch * p_mag * wall.c, p_mag, branch);
}

DispersionPoint numeric_oracle(const EtaWall& wall, double p, int branch) {
  check_mass_c(wall.mass, wall.c);
  if (!wall.eta_vec.isZero(0.0))
    throw UnsupportedConfiguration("numeric_oracle: eta_vec != 0 is not supported");
  if (branch != 0 && branch != 1 && branch != -1)
    throw InvalidArgument("numeric_oracle: branch must be 0, +1 or -1");
  if (branch != 0 && !(p >= 0.0)) throw InvalidArgument("numeric_oracle: |p| must be >= 0");
  if (!std::isfinite(p)) throw InvalidArgument("numeric_oracle: momentum must be finite");

  // Wall b A_R = a A_L written as (A_R, A_L) proportional to (a', b').
  double a = 1.0, b = 0.0;
  if (wall.eta0.is_finite()) {
    const double e = wall.eta0.value();
    if (std::abs(e) <= 1.0) {
      a = e;
      b = 1.0;
    } else {
      a = 1.0;
      b = 1.0 / e;
    }
  }
  const double mc2 = wall.mass * wall.c * wall.c;
  const double sgn = branch == 0 ? 1.0 : branch;
  auto energy_at = [&](double q) { return solve_bulk(mc2, sgn * q * wall.c, a, b); };

  const auto [E, K] = energy_at(p);
  DispersionPoint d;
  d.p = p;
  d.branch = branch == 0 ? 1 : branch;
  d.E = E;
  d.kappa = K / wall.c;
  d.normalizable = d.kappa > 0.0;
  // E is linear in p: slope from two more solves, offset from p = 0.
  const double dp = std::max(1.0, std::abs(p));
  d.v = std::abs(energy_at(p + dp).first - energy_at(p - dp).first) / (2.0 * dp);
  d.mu = energy_at(0.0).first;
  return d;
}

NormalizabilityWindow normalizability_window(const EtaWall& wall) {
  check_mass_c(wall.mass, wall.c);
  const SinCos sc = wall_angle(wall.eta0);
  NormalizabilityWindow w;
  if (sc.S == 0.0) {
    w.always = sc.C > 0.0;
    w.never = !w.always;
    return w;
  }
  // C mc^2 + S p c > 0
  w.threshold = -sc.C * wall.mass * wall.c / sc.S;
  w.direction = sc.S > 0.0 ? 1 : -1;
  return w;
}

}  // namespace sae::dirac
