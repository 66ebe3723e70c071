#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sae/extended_real.hpp"
#include "sae/uncertainty.hpp"

// Particle in [-L/2, L/2] with the parity-symmetric Robin wall
//
//    gamma Psi(L/2) + Psi'(L/2) = 0,   -gamma Psi(-L/2) + Psi'(-L/2) = 0,
//
// solved in closed form up to one transcendental root per level. hbar = 1.
//
// Levels are indexed by strict energy order (index 0 is the lowest state).
// The classic labelling that keeps even states on even n and shifts the
// oscillatory indices when bound wall states appear is not used.
namespace sae::box1d {

struct BoxSpec {
  double mass = 1.0;
  double length = 1.0;
  ExtendedReal gamma = ExtendedReal::pos_inf();
};

enum class Parity { Even, Odd };
enum class Branch { Oscillatory, Evanescent, Zero };

struct Eigenstate1D {
  int index = 0;
  Parity parity = Parity::Even;
  Branch branch = Branch::Oscillatory;
  // k for oscillatory states, kappa for evanescent ones, empty for zero
  // modes. +inf for the two wall states of gamma = -inf.
  std::optional<double> wavenumber;
  double energy = 0.0;
  // A in A cos(kx), A sin(kx), A cosh(kx), A sinh(kx) or the constant/linear
  // zero-mode prefactor. May underflow to 0 for very deep wall states; the
  // wavefunction is evaluated from edge_value instead.
  double amplitude = 0.0;
  // Psi(L/2). Used for evanescent states so that cosh/sinh never overflow.
  double edge_value = 0.0;
  BoxSpec spec;

  // gamma = -inf wall states of infinitely negative energy.
  bool singular() const { return wavenumber && std::isinf(*wavenumber); }
};

struct BoundaryObservables1D {
  double a = 0.0;  // (L/2)(rho(L/2) + rho(-L/2))
  double b = 0.0;  // gamma (rho(L/2) + rho(-L/2))
  double c = 0.0;  // rho(L/2) - rho(-L/2)
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  double pbar = 0.0;
  double mean_x = 0.0;
  double var_x = 0.0;
  double mean_p2 = 0.0;
};

// Zero-mode points are recognised within this absolute distance of
// gamma = 0 and gamma = -2/L.
inline constexpr double kZeroModeTolerance = 1e-12;

// The `count` lowest eigenstates, sorted by energy.
std::vector<Eigenstate1D> solve_spectrum(const BoxSpec& spec, int count);

double eval_wavefunction(const Eigenstate1D& state, double x);
double eval_derivative(const Eigenstate1D& state, double x);

BoundaryObservables1D boundary_observables(const Eigenstate1D& state);

UncertaintyReport uncertainty_report_1d(const Eigenstate1D& state);

// dE/dgamma from the boundary density, (rho(L/2) + rho(-L/2)) / (2m).
double spectral_flow(const Eigenstate1D& state);

}  // namespace sae::box1d
