#pragma once

// Reference computations for the tests. Deliberately simple and written
// independently of the library: plain bisection, composite Simpson and a
// vertex-centred ghost-point finite-difference box.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// -psi''/(2m) on vertices x_0..x_N of [-L/2, L/2] with the Robin condition
// imposed through ghost points (second order). Returns sorted eigenvalues
// of the symmetrised matrix.
inline std::vector<double> ghost_point_box(double m, double L, double gamma, int N) {
  const double h = L / N;
  const int n = N + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 2.0;
    if (i > 0) A(i, i - 1) = -1.0;
    if (i + 1 < n) A(i, i + 1) = -1.0;
  }
  // ghost: psi_{-1} = psi_1 - 2 h gamma psi_0 (outward derivative -gamma psi)
  A(0, 1) = -2.0;
  A(0, 0) = 2.0 + 2.0 * h * gamma;
  A(n - 1, n - 2) = -2.0;
  A(n - 1, n - 1) = 2.0 + 2.0 * h * gamma;
  // D A with D = diag(1/2, 1, ..., 1, 1/2) is symmetric; same spectrum as A.
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  w[0] = w[n - 1] = 0.5;
  Eigen::MatrixXd S = w.cwiseSqrt().asDiagonal() * A * w.cwiseSqrt().cwiseInverse().asDiagonal();
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = es.eigenvalues()[i] / (2.0 * m * h * h);
  return ev;
}

}  // namespace oracle
