#include "sae/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "sae/errors.hpp"

namespace sae::fd {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

SpMat shifted(const SpMat& H, double sigma) {
  SpMat I(H.rows(), H.cols());
  I.setIdentity();
  return H - sigma * I;
}

class InertiaCounter {
 public:
  explicit InertiaCounter(const SpMat& H) : H_(H) { ldlt_.analyzePattern(shifted(H, 0.0)); }

  // -1 if the factorization hit an exact zero pivot.
  int below(double sigma) {
    ldlt_.factorize(shifted(H_, sigma));
    if (ldlt_.info() != Eigen::Success) return -1;
    const Eigen::VectorXd d = ldlt_.vectorD();
    int neg = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (d[i] == 0.0 || !std::isfinite(d[i])) return -1;
      if (d[i] < 0.0) ++neg;
    }
    return neg;
  }

  Eigen::SimplicialLDLT<SpMat>& solver() { return ldlt_; }

 private:
  const SpMat& H_;
  Eigen::SimplicialLDLT<SpMat> ldlt_;
};

double gershgorin_lower(const SpMat& H) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(H.rows());
  Eigen::VectorXd off = Eigen::VectorXd::Zero(H.rows());
  for (int c = 0; c < H.outerSize(); ++c)
    for (SpMat::InnerIterator it(H, c); it; ++it) {
      if (it.row() == it.col())
        diag[it.row()] += it.value();
      else
        off[it.row()] += std::abs(it.value());
    }
  return (diag - off).minCoeff();
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& Y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
}

EigenPairs dense_path(const SpMat& H, int count) {
  const Eigen::MatrixXd A = Eigen::MatrixXd(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw SolverFailure("dense eigensolver did not converge");
  EigenPairs out;
  out.values = es.eigenvalues().head(count);
  out.vectors = es.eigenvectors().leftCols(count);
  out.residuals.resize(count);
  for (int j = 0; j < count; ++j)
    out.residuals[j] = (A * out.vectors.col(j) - out.values[j] * out.vectors.col(j)).norm();
  return out;
}

}  // namespace

int count_below(const SpMat& H, double sigma) {
  InertiaCounter ic(H);
  const int n = ic.below(sigma);
  if (n < 0) throw SolverFailure("count_below: shift coincides with an eigenvalue");
  return n;
}

EigenPairs lowest_eigenpairs(const SpMat& H, int count, const SolverOptions& opts) {
  const int n = static_cast<int>(H.rows());
  if (H.rows() != H.cols()) throw InvalidArgument("eigensolver: matrix must be square");
  if (count < 1 || count > n) throw InvalidArgument("eigensolver: count must be in [1, dimension]");
  const int block = std::min(n, count + std::max(5, count));
  if (n < opts.dense_threshold || block >= n) return dense_path(H, count);

  InertiaCounter ic(H);

  // Bracket the lowest eigenvalue: no eigenvalue below lo, at least one at
  // or below hi (Rayleigh quotients bound E_0 from above).
  double lo = gershgorin_lower(H);
  double hi = H.diagonal().minCoeff();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  hi = std::min(hi, ones.dot(H * ones) / n);
  lo -= 1e-12 * std::max(1.0, std::abs(lo));
  if (!(hi > lo)) hi = lo + 1.0;
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 1e-3 * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
    double mid = 0.5 * (lo + hi);
    int nu = ic.below(mid);
    if (nu < 0) {
      mid = lo + 0.49 * (hi - lo);
      nu = ic.below(mid);
      if (nu < 0) throw SolverFailure("eigensolver: singular factorization while bracketing");
    }
    if (nu == 0)
      lo = mid;
    else
      hi = mid;
  }
  double sigma = lo - (hi - lo);
  if (ic.below(sigma) != 0) {
    sigma -= hi - lo;
    if (ic.below(sigma) != 0) throw SolverFailure("eigensolver: could not place shift below E_0");
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, block);
  for (int j = 0; j < block; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = normal(rng);
  X = orthonormal_columns(X);

  EigenPairs out;
  out.shift = sigma;
  Eigen::VectorXd theta;
  Eigen::VectorXd res(count);
  double worst = 0.0;
  double prev_worst = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd Q = orthonormal_columns(ic.solver().solve(X));
    const Eigen::MatrixXd HQ = H * Q;
    Eigen::MatrixXd T = Q.transpose() * HQ;
    T = 0.5 * (T + T.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    theta = es.eigenvalues();
    X = Q * es.eigenvectors();
    const Eigen::MatrixXd HX = HQ * es.eigenvectors();
    bool tight = true;
    bool ok = true;
    prev_worst = worst > 0.0 ? worst : prev_worst;
    worst = 0.0;
    for (int j = 0; j < count; ++j) {
      res[j] = (HX.col(j) - theta[j] * X.col(j)).norm();
      const double target = opts.tol * std::max(1.0, std::abs(theta[j]));
      worst = std::max(worst, res[j] / target);
      tight = tight && res[j] <= 1e-2 * target;
      ok = ok && res[j] <= target;
    }
    out.iterations = it;
    // Stop two orders below the target, or at the target once rounding
    // stalls further progress.
    if (tight || (ok && (worst > 0.5 * prev_worst || it == opts.max_iterations))) {
      out.values = theta.head(count);
      out.vectors = X.leftCols(count);
      out.residuals = res;
      return out;
    }
  }
  std::ostringstream msg;
  msg << "eigensolver: no convergence after " << opts.max_iterations
      << " iterations (n=" << n << ", block=" << block << ", shift=" << sigma
      << ", worst residual/target=" << worst << ")";
  throw SolverFailure(msg.str());
}

}  // namespace sae::fd
