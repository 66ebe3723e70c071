#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "sae/extended_real.hpp"

// Reflecting walls for Dirac fermions. Bases: alpha = sigma_1, beta = sigma_3
// in 1-d; alpha_i = [[0, sigma_i], [sigma_i, 0]], beta = diag(1, -1) in 3-d.
// The speed of light c stays explicit.
namespace sae::dirac {

using cplx = std::complex<double>;

inline constexpr double kRealPartTolerance = 1e-14;
inline constexpr double kMatrixTolerance = 1e-12;

// Wall at x = 0 for a fermion on x > 0 with Psi_2(0) = lambda Psi_1(0).
struct Lambda1D {
  cplx lambda;
  double mass = 1.0;
  double c = 1.0;
};

// Throws NotSelfAdjoint unless |Re lambda| <= kRealPartTolerance.
Lambda1D validate_lambda_1d(cplx lambda, double mass = 1.0, double c = 1.0);

// j(0) = c Psi(0)^dag alpha Psi(0) with Psi(0) = (psi1, lambda psi1).
double boundary_current_1d(cplx lambda, double c, cplx psi1);
// j_A(0) = c Psi(0)^dag Psi(0) = c (1 + |lambda|^2) |psi1|^2.
double axial_current_1d(cplx lambda, double c, cplx psi1);

// gamma = -2mc i lambda, for the non-relativistic wall -gamma Psi + Psi' = 0.
double nonrel_gamma_1d(const Lambda1D& lam);
// Inverse map, lambda = i gamma / (2mc).
cplx lambda_from_gamma_1d(double gamma, double mass, double c);

// Lower components = lambda * upper components on a wall with unit
// outward normal n.
struct Lambda3D {
  Eigen::Matrix2cd lambda;
  Eigen::Vector3d normal;
};

Eigen::Matrix2cd sigma(int i);  // i = 1, 2, 3
Eigen::Matrix2cd n_dot_sigma(const Eigen::Vector3d& n);

struct Lambda3DCheck {
  bool accepted = false;
  double anti_hermiticity_residual = 0.0;  // ||n.sigma lambda + (n.sigma lambda)^dag||
};

// Throws InvalidArgument when |n| differs from 1 by more than 1e-12.
Lambda3DCheck validate_lambda_3d(const Lambda3D& lam);

// n.j and n.j_A from the full 4-spinor (upper, lambda upper).
double normal_current_3d(const Lambda3D& lam, const Eigen::Vector2cd& upper, double c);
double axial_current_3d(const Lambda3D& lam, const Eigen::Vector2cd& upper, double c);

// gamma = -2mc i n.sigma lambda, Hermitean for accepted lambda. Throws
// NotSelfAdjoint for rejected lambda.
Eigen::Matrix2cd pauli_gamma_matrix(const Lambda3D& lam, double mass, double c);

// Psi_R = eta Psi_L at the wall. eta_vec must vanish for (2+1)-d and is
// only supported at zero in (4+1)-d.
struct EtaWall {
  ExtendedReal eta0 = 0.0;
  Eigen::Vector3d eta_vec = Eigen::Vector3d::Zero();
  double mass = 1.0;
  double c = 1.0;
};

struct DispersionPoint {
  double p = 0.0;  // p in (2+1)-d, |p| in (4+1)-d
  int branch = 1;  // +1 / -1 picks the sigma_3 = +-1 component in (4+1)-d
  double E = 0.0;
  double kappa = 0.0;
  double v = 0.0;
  double mu = 0.0;
  bool normalizable = false;
};

// E = S mc^2 - C pc, c kappa = C mc^2 + S pc with S = 2 eta/(1+eta^2),
// C = (1-eta^2)/(1+eta^2); eta = +-inf is the limit S = 0, C = -1.
DispersionPoint dispersion_2p1(const EtaWall& wall, double p);
// Same relation with pc -> branch |p| c. Throws UnsupportedConfiguration
// for eta_vec != 0.
DispersionPoint dispersion_4p1(const EtaWall& wall, double p_mag, int branch);

// Solves the bulk 2x2 equations for (E, kappa) under the wall condition by
// Newton iteration, independently of the closed forms. branch = 0 selects
// the (2+1)-d problem.
DispersionPoint numeric_oracle(const EtaWall& wall, double p, int branch = 0);

struct NormalizabilityWindow {
  // kappa > 0 for p > threshold (direction +1) or p < threshold (-1).
  std::optional<double> threshold;
  int direction = 0;
  bool always = false;
  bool never = false;
};

NormalizabilityWindow normalizability_window(const EtaWall& wall);

}  // namespace sae::dirac
