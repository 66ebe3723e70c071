#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sae/eigensolver.hpp"
#include "sae/grid.hpp"
#include "sae/uncertainty.hpp"

// -(1/2m) Laplacian + V on a masked grid with the Robin condition
// gamma Psi + n.grad Psi = 0 on every boundary face.
//
// Boundary faces use the face value Psi_f = s Psi_c with s = 1/(1 + gamma h/2)
// (from (Psi_f - Psi_c)/(h/2) = -gamma Psi_f), so the outward flux through
// the face is -gamma s Psi_c. Dirichlet faces have s = 0 and flux -2 Psi_c/h.
// The result is the energy form
//
//   <Psi, H Psi> = (1/2m) [sum_links h^d |grad Psi|^2 + sum_faces h^(d-1) gamma s |Psi_c|^2]
//                  + sum_cells h^d V |Psi|^2
//
// whose gamma derivative (1/2m) h^(d-1) s^2 |Psi_c|^2 is positive
// semidefinite. gamma must exceed -2/h on every face.
namespace sae::fd {

struct DiscreteHamiltonian {
  Eigen::SparseMatrix<double> matrix;  // symmetric, acts on cell values
  double mass = 1.0;
  std::vector<double> potential;  // per cell
  int dim = 1;
  double h = 1.0;
  std::vector<double> face_scale;     // s per boundary face
  std::vector<double> face_coupling;  // gamma s (2/h for Dirichlet)
};

struct FaceCoefficients {
  std::vector<double> scale;
  std::vector<double> coupling;
};

FaceCoefficients face_coefficients(const DomainGrid& grid, const RobinField& field);

// `potential` empty means V = 0.
DiscreteHamiltonian build_hamiltonian(const DomainGrid& grid, const RobinField& field,
                                      double mass, const std::vector<double>& potential = {});

struct EigenSolution {
  std::vector<double> energies;
  // Columns normalised so that sum h^d |psi|^2 = 1; the largest-magnitude
  // entry of each column is positive.
  Eigen::MatrixXd states;
  std::vector<double> residuals;
  int iterations = 0;
};

EigenSolution solve_lowest(const DiscreteHamiltonian& H, int count, const SolverOptions& opts = {});

struct Moments {
  Vec3 mean_x{};
  double var_x = 0.0;
  double mean_p2 = 0.0;  // 2m(<H> - <V>)
  Vec3 pbar{};
  double xp_bar = 0.0;  // Re <x.p>
  Vec3 mean_n{};
  double mean_nx = 0.0;
  double mean_gamma = 0.0;
  double p_dagger_p = 0.0;  // ||p Psi||^2, equals <p^2> - <gamma>
  double norm = 0.0;        // sum h^d |psi|^2 as given
};

// Volume sums with weight h^d, face sums with weight h^(d-1). <n> and
// <n.x> are taken in the summation-by-parts form
//   <n>_a = 2 Re <Psi, d_a Psi>,   <n.x> = d + 2 Re sum_a <x_a Psi, d_a Psi>,
// where d_a Psi on a boundary face is the one-sided Robin flux. For the
// gamma = 0 constant state these give <n> = 0 and <n.x> = d exactly, and
// both uncertainty inequalities hold exactly in the discrete model.
Moments moments(const DomainGrid& grid, const RobinField& field, const Eigen::VectorXcd& psi);
Moments moments(const DomainGrid& grid, const RobinField& field, const Eigen::VectorXd& psi);

// Throws DegenerateState when dx = 0.
UncertaintyReport uncertainty_general(const Moments& m, int dim);

struct FlowCheck {
  double lhs = 0.0;  // centred difference of E_n in gamma
  double rhs = 0.0;  // (1/2m) sum_faces h^(d-1) |psi_face|^2
  double relative_error = 0.0;
  double energy = 0.0;
  bool degenerate = false;  // within 1e-8 of a neighbouring level
};

// Flow check for levels 0..count-1 from three solves; degenerate levels are
// flagged rather than rejected.
std::vector<FlowCheck> spectral_flow_table(const DomainGrid& grid, double gamma, double mass,
                                           const std::vector<double>& potential, int count,
                                           double h_gamma, const SolverOptions& opts = {});

// Throws DegeneracyError when E_level is within 1e-8 of a neighbour.
FlowCheck spectral_flow_check(const DomainGrid& grid, double gamma, double mass,
                              const std::vector<double>& potential, int level, double h_gamma,
                              const SolverOptions& opts = {});

struct GaussianPacket {
  double alpha = 1.0;
  Vec3 beta_r{};
  Vec3 beta_i{};
  Vec3 center{};  // x0 in exp(-alpha/2 |x - x0|^2 - beta.(x - x0))
};

struct PacketReport {
  RobinField field;
  Eigen::VectorXd psi;  // normalised cell samples
  Moments moments;
  UncertaintyReport report;
};

// gamma_f = n_f.(alpha (x_f - x0) + beta_r) at each face centre, so the
// Gaussian satisfies the Robin condition there exactly. Requires
// beta_i = 0.
PacketReport minimal_packet_gamma(const DomainGrid& grid, const GaussianPacket& packet);

}  // namespace sae::fd
