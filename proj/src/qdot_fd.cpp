#include "sae/qdot_fd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sae/errors.hpp"

namespace sae::fd {

FaceCoefficients face_coefficients(const DomainGrid& grid, const RobinField& field) {
  const auto& faces = grid.boundary_faces();
  if (field.gamma.size() != faces.size())
    throw InvalidArgument("RobinField size does not match the number of boundary faces");
  const double h = grid.h();
  FaceCoefficients fc;
  fc.scale.resize(faces.size());
  fc.coupling.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (field.is_dirichlet(f)) {
      fc.scale[f] = 0.0;
      fc.coupling[f] = 2.0 / h;
      continue;
    }
    const double g = field.gamma[f];
    if (!std::isfinite(g)) throw InvalidArgument("RobinField: gamma must be finite or +inf");
    const double denom = 1.0 + 0.5 * g * h;
    if (!(denom > 0.0))
      throw InvalidArgument("RobinField: gamma must exceed -2/h on every face");
    fc.scale[f] = 1.0 / denom;
    fc.coupling[f] = g / denom;
  }
  return fc;
}

DiscreteHamiltonian build_hamiltonian(const DomainGrid& grid, const RobinField& field,
                                      double mass, const std::vector<double>& potential) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("build_hamiltonian: mass must be > 0");
  const int n = grid.cell_count();
  if (!potential.empty() && static_cast<int>(potential.size()) != n)
    throw InvalidArgument("build_hamiltonian: potential needs one sample per inside cell");
  for (double v : potential)
    if (!std::isfinite(v)) throw InvalidArgument("build_hamiltonian: potential samples must be finite");

  DiscreteHamiltonian H;
  H.mass = mass;
  H.dim = grid.dim();
  H.h = grid.h();
  H.potential = potential.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : potential;
  FaceCoefficients fc = face_coefficients(grid, field);

  const double h = grid.h();
  const double t = 1.0 / (2.0 * mass * h * h);
  std::vector<double> diag(H.potential);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) + 2 * grid.links().size());
  for (const auto& l : grid.links()) {
    diag[static_cast<std::size_t>(l.lower)] += t;
    diag[static_cast<std::size_t>(l.upper)] += t;
    trip.emplace_back(l.lower, l.upper, -t);
    trip.emplace_back(l.upper, l.lower, -t);
  }
  const auto& faces = grid.boundary_faces();
  for (std::size_t f = 0; f < faces.size(); ++f)
    diag[static_cast<std::size_t>(faces[f].cell)] += fc.coupling[f] / (2.0 * mass * h);
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, diag[static_cast<std::size_t>(i)]);

  H.matrix.resize(n, n);
  H.matrix.setFromTriplets(trip.begin(), trip.end());
  H.matrix.makeCompressed();
  H.face_scale = std::move(fc.scale);
  H.face_coupling = std::move(fc.coupling);
  return H;
}

EigenSolution solve_lowest(const DiscreteHamiltonian& H, int count, const SolverOptions& opts) {
  const EigenPairs ep = lowest_eigenpairs(H.matrix, count, opts);
  EigenSolution out;
  out.energies.assign(ep.values.data(), ep.values.data() + ep.values.size());
  out.residuals.assign(ep.residuals.data(), ep.residuals.data() + ep.residuals.size());
  out.iterations = ep.iterations;
  out.states = ep.vectors / std::sqrt(std::pow(H.h, H.dim));
  for (Eigen::Index j = 0; j < out.states.cols(); ++j) {
    Eigen::Index imax = 0;
    out.states.col(j).cwiseAbs().maxCoeff(&imax);
    if (out.states(imax, j) < 0.0) out.states.col(j) *= -1.0;
  }
  return out;
}

Moments moments(const DomainGrid& grid, const RobinField& field, const Eigen::VectorXcd& psi_in) {
  using C = std::complex<double>;
  const int n = grid.cell_count();
  if (psi_in.size() != n) throw InvalidArgument("moments: state size does not match grid");
  const FaceCoefficients fc = face_coefficients(grid, field);
  const int d = grid.dim();
  const double h = grid.h();
  const double w = grid.cell_volume();
  const double wf = grid.face_area();

  Moments m;
  m.norm = w * psi_in.squaredNorm();
  if (!(m.norm > 0.0) || !std::isfinite(m.norm)) throw InvalidArgument("moments: state has zero norm");
  const Eigen::VectorXcd psi = psi_in / std::sqrt(m.norm);

  std::vector<Vec3> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = grid.center(i);

  for (int i = 0; i < n; ++i) {
    const double rho = w * std::norm(psi[i]);
    for (int a = 0; a < d; ++a) m.mean_x[a] += x[static_cast<std::size_t>(i)][a] * rho;
  }
  for (int i = 0; i < n; ++i) {
    const double rho = w * std::norm(psi[i]);
    for (int a = 0; a < d; ++a) {
      const double dx = x[static_cast<std::size_t>(i)][a] - m.mean_x[a];
      m.var_x += dx * dx * rho;
    }
  }
  // A variance at rounding level of the coordinates is a single-point state.
  double xmax = 0.0;
  for (const auto& xi : x)
    for (int a = 0; a < d; ++a) xmax = std::max(xmax, std::abs(xi[a]));
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * xmax;
  if (m.var_x <= floor * floor) m.var_x = 0.0;

  std::array<C, 3> V{};
  C U = 0.0;
  double grad2 = 0.0;
  for (const auto& l : grid.links()) {
    const C pi = psi[l.lower];
    const C pj = psi[l.upper];
    const C g = (pj - pi) / h;
    grad2 += w * std::norm(g);
    V[l.axis] += 0.5 * w * (std::conj(pi) + std::conj(pj)) * g;
    U += 0.5 * w *
         (x[static_cast<std::size_t>(l.lower)][l.axis] * std::conj(pi) +
          x[static_cast<std::size_t>(l.upper)][l.axis] * std::conj(pj)) *
         g;
  }
  double half_face2 = 0.0;
  double face_energy = 0.0;
  const auto& faces = grid.boundary_faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& bf = faces[f];
    const C pc = psi[bf.cell];
    const C gn = -fc.coupling[f] * pc;
    const C ga = static_cast<double>(bf.orientation) * gn;
    half_face2 += 0.5 * w * std::norm(gn);
    V[bf.axis] += 0.5 * w * std::conj(pc) * ga;
    U += 0.5 * w * x[static_cast<std::size_t>(bf.cell)][bf.axis] * std::conj(pc) * ga;
    face_energy += wf * fc.coupling[f] * std::norm(pc);
    if (!field.is_dirichlet(f))
      m.mean_gamma += wf * field.gamma[f] * fc.scale[f] * fc.scale[f] * std::norm(pc);
  }

  m.p_dagger_p = grad2 + half_face2;
  m.mean_p2 = grad2 + face_energy;
  for (int a = 0; a < d; ++a) {
    m.mean_n[a] = 2.0 * V[a].real();
    m.pbar[a] = V[a].imag();
  }
  m.mean_nx = d + 2.0 * U.real();
  m.xp_bar = U.imag();
  return m;
}

Moments moments(const DomainGrid& grid, const RobinField& field, const Eigen::VectorXd& psi) {
  return moments(grid, field, Eigen::VectorXcd(psi.cast<std::complex<double>>()));
}

UncertaintyReport uncertainty_general(const Moments& m, int dim) {
  if (dim < 1 || dim > 3) throw InvalidArgument("uncertainty_general: dimension must be 1, 2 or 3");
  if (!(m.var_x > 0.0)) throw DegenerateState("uncertainty_general: Delta x = 0");
  double nx = 0.0, n2 = 0.0, p2 = 0.0, xp = 0.0;
  for (int a = 0; a < dim; ++a) {
    nx += m.mean_n[a] * m.mean_x[a];
    n2 += m.mean_n[a] * m.mean_n[a];
    p2 += m.pbar[a] * m.pbar[a];
    xp += m.mean_x[a] * m.pbar[a];
  }
  UncertaintyReport r;
  r.lhs = m.mean_p2;
  r.dx = std::sqrt(m.var_x);
  const double commutator = dim + nx - m.mean_nx;
  const double ratio = commutator / (2.0 * r.dx);
  r.rhs_general = p2 + ratio * ratio + m.mean_gamma + 0.25 * n2;
  r.slack_general = r.lhs - r.rhs_general;
  const double dp2 = m.mean_p2 - m.mean_gamma - p2 - 0.25 * n2;
  r.dp = std::sqrt(std::max(0.0, dp2));
  const double re = m.xp_bar - xp;
  r.rhs_nonhermitean = std::sqrt(re * re + 0.25 * commutator * commutator);
  r.slack_nonhermitean = r.dx * r.dp - r.rhs_nonhermitean;
  return r;
}

std::vector<FlowCheck> spectral_flow_table(const DomainGrid& grid, double gamma, double mass,
                                           const std::vector<double>& potential, int count,
                                           double h_gamma, const SolverOptions& opts) {
  if (count < 1) throw InvalidArgument("spectral_flow: need at least one level");
  if (!(h_gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidArgument("spectral_flow: need finite gamma and h_gamma > 0");
  if (count > grid.cell_count()) throw InvalidArgument("spectral_flow: level exceeds the number of cells");
  // One extra level so the gap above the last requested level is known.
  const int solve_count = std::min(count + 1, grid.cell_count());

  auto solve_at = [&](double g) {
    DiscreteHamiltonian H = build_hamiltonian(grid, RobinField::uniform(grid, g), mass, potential);
    EigenSolution s = solve_lowest(H, solve_count, opts);
    return std::make_pair(std::move(H), std::move(s));
  };
  const auto [H0, s0] = solve_at(gamma);
  const auto sp = solve_at(gamma + h_gamma).second;
  const auto sm = solve_at(gamma - h_gamma).second;

  const double wf = grid.face_area();
  const auto& faces = grid.boundary_faces();
  std::vector<FlowCheck> out(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const auto k = static_cast<std::size_t>(n);
    FlowCheck& fcheck = out[k];
    const double e = s0.energies[k];
    const double gap_tol = 1e-8 * std::max(1.0, std::abs(e));
    fcheck.energy = e;
    fcheck.degenerate = (n + 1 < solve_count && s0.energies[k + 1] - e <= gap_tol) ||
                        (n > 0 && e - s0.energies[k - 1] <= gap_tol);
    fcheck.lhs = (sp.energies[k] - sm.energies[k]) / (2.0 * h_gamma);
    double sum = 0.0;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const double v = H0.face_scale[f] * s0.states(faces[f].cell, n);
      sum += wf * v * v;
    }
    fcheck.rhs = sum / (2.0 * mass);
    const double scale = std::max(std::abs(fcheck.lhs), std::abs(fcheck.rhs));
    fcheck.relative_error = scale > 0.0 ? std::abs(fcheck.lhs - fcheck.rhs) / scale : 0.0;
  }
  return out;
}

FlowCheck spectral_flow_check(const DomainGrid& grid, double gamma, double mass,
                              const std::vector<double>& potential, int level, double h_gamma,
                              const SolverOptions& opts) {
  if (level < 0) throw InvalidArgument("spectral_flow_check: level must be >= 0");
  const FlowCheck fc =
      spectral_flow_table(grid, gamma, mass, potential, level + 1, h_gamma, opts).back();
  if (fc.degenerate) throw DegeneracyError("spectral_flow_check: level is degenerate");
  return fc;
}

PacketReport minimal_packet_gamma(const DomainGrid& grid, const GaussianPacket& packet) {
  if (!(packet.alpha >= 0.0) || !std::isfinite(packet.alpha))
    throw InvalidArgument("minimal_packet_gamma: alpha must be finite and >= 0");
  for (int a = 0; a < 3; ++a) {
    if (packet.beta_i[a] != 0.0)
      throw InvalidArgument("minimal_packet_gamma: minimal packets need beta_i = 0");
    if (!std::isfinite(packet.beta_r[a]) || !std::isfinite(packet.center[a]))
      throw InvalidArgument("minimal_packet_gamma: beta and center must be finite");
  }
  const int d = grid.dim();
  const int n = grid.cell_count();
  auto exponent = [&](const Vec3& x) {
    double e = 0.0;
    for (int a = 0; a < d; ++a) {
      const double u = x[a] - packet.center[a];
      e += -0.5 * packet.alpha * u * u - packet.beta_r[a] * u;
    }
    return e;
  };
  std::vector<double> ex(static_cast<std::size_t>(n));
  double emax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    ex[static_cast<std::size_t>(i)] = exponent(grid.center(i));
    emax = std::max(emax, ex[static_cast<std::size_t>(i)]);
  }
  PacketReport rep;
  rep.psi.resize(n);
  for (int i = 0; i < n; ++i) rep.psi[i] = std::exp(ex[static_cast<std::size_t>(i)] - emax);
  rep.psi /= std::sqrt(grid.cell_volume() * rep.psi.squaredNorm());

  const auto& faces = grid.boundary_faces();
  rep.field.gamma.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Vec3 xf = grid.face_center(faces[f]);
    const int a = faces[f].axis;
    rep.field.gamma[f] =
        faces[f].orientation * (packet.alpha * (xf[a] - packet.center[a]) + packet.beta_r[a]);
  }
  rep.moments = moments(grid, rep.field, rep.psi);
  rep.report = uncertainty_general(rep.moments, d);
  return rep;
}

}  // namespace sae::fd
