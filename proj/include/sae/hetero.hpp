#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

// Interface matrices joining two regions with different effective masses.
// The state on each side is the pair (Psi, (1/2m) n.grad Psi) with n the
// same unit vector on both sides, and (Psi_I, flux_I) = Gamma (Psi_II, flux_II).
namespace sae::hetero {

using cplx = std::complex<double>;

struct IdentityResiduals {
  double phase = 0.0;        // max |Im(exp(-i theta) Gamma_ij)|
  double determinant = 0.0;  // |det Gamma - exp(2 i theta)|
  // |G11* G22 - G21* G12 - 1|, |G12* G21 - G22* G11 + 1|,
  // |G11* G21 - G21* G11|, |G12* G22 - G22* G12|
  std::array<double, 4> bilinear{};
  double max() const;
};

struct InterfaceMatrix {
  Eigen::Matrix2cd gamma;
  double theta = 0.0;          // in (-pi/2, pi/2]
  Eigen::Matrix2d real_part;   // exp(-i theta) Gamma, determinant 1
  IdentityResiduals residuals;
};

struct RegionParams {
  double mass = 1.0;
  double V = 0.0;
};

struct InterfaceState {
  cplx value;
  cplx flux;  // (1/2m) n.grad Psi
};

inline constexpr double kIdentityTolerance = 1e-12;

// arg of the largest-magnitude entry, reduced to (-pi/2, pi/2].
double extract_phase(const Eigen::Matrix2cd& gamma);

IdentityResiduals identity_residuals(const Eigen::Matrix2cd& gamma, double theta);

// Phase from the largest-magnitude entry. Throws NotSelfAdjoint naming the
// violated identities when any residual exceeds kIdentityTolerance.
InterfaceMatrix validate_interface(const Eigen::Matrix2cd& gamma);

InterfaceState match_across(const InterfaceState& state_II, const InterfaceMatrix& gamma);

// n.j = 2 Im(Psi* flux)
double normal_current(const InterfaceState& s);
double current_mismatch(const InterfaceState& state_I, const InterfaceState& state_II);

struct ScatterAmplitudes {
  cplx R;
  cplx T;
  double reflection_probability = 0.0;
  double transmission_probability = 0.0;  // transmitted / incident current
  bool evanescent = false;                // right side closed
  double flux_residual = 0.0;             // |1 - |R|^2 - P_T|
};

// Plane wave exp(i k1 x) incident from region I (x < 0) on region II.
// Amplitude normalisation follows the step-potential convention:
// Psi_I = e^{ik1x} + R e^{-ik1x}, Psi_II = T e^{ik2x} (or T e^{-kappa x}).
ScatterAmplitudes scatter_interface(double E, const RegionParams& left, const RegionParams& right,
                                    const InterfaceMatrix& gamma);

}  // namespace sae::hetero
