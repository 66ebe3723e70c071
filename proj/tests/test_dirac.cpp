#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sae/dirac_wall.hpp"
#include "sae/errors.hpp"

using namespace sae;
using namespace sae::dirac;
constexpr double pi = std::numbers::pi;

namespace {

Eigen::Matrix2cd random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::Matrix2cd m;
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = {n01(rng), n01(rng)};
  return m;
}

// lambda = n.sigma K with K anti-Hermitean makes n.sigma lambda = K.
Lambda3D random_accepted(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::Vector3d n(n01(rng), n01(rng), n01(rng));
  n.normalize();
  const Eigen::Matrix2cd A = random_matrix(rng);
  const Eigen::Matrix2cd K = A - A.adjoint();
  return {n_dot_sigma(n) * K, n};
}

Eigen::Vector2cd random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  return {cplx(n01(rng), n01(rng)), cplx(n01(rng), n01(rng))};
}

EtaWall wall(ExtendedReal eta) {
  EtaWall w;
  w.eta0 = eta;
  return w;
}

}  // namespace

TEST_CASE("one-dimensional wall") {
  const auto l = validate_lambda_1d(cplx(0, 0.7));
  CHECK(boundary_current_1d(l.lambda, 1.0, cplx(0.3, -1.2)) == 0.0);
  CHECK_THROWS_AS(validate_lambda_1d(cplx(0.1, 0.7)), NotSelfAdjoint);
  CHECK(nonrel_gamma_1d(validate_lambda_1d(cplx(0, 1))) == doctest::Approx(2.0));
  CHECK(nonrel_gamma_1d(validate_lambda_1d(0.0)) == 0.0);
  for (double g0 : {-7.5, -0.3, 0.0, 1.0, 42.0}) {
    for (double m : {0.5, 2.0}) {
      const cplx lam = lambda_from_gamma_1d(g0, m, 3.0);
      CHECK(lam.real() == 0.0);
      CHECK(std::abs(nonrel_gamma_1d(validate_lambda_1d(lam, m, 3.0)) - g0) <= 1e-14 * std::max(1.0, std::abs(g0)));
    }
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 100; ++t) {
    const cplx lam(0.0, 3 * n01(rng));
    const cplx psi(n01(rng), n01(rng));
    CHECK(std::abs(boundary_current_1d(lam, 1.0, psi)) <= 1e-12 * std::norm(psi) * (1 + std::norm(lam)));
    const double ja = axial_current_1d(lam, 2.0, psi);
    CHECK(ja == doctest::Approx(2.0 * (1 + std::norm(lam)) * std::norm(psi)));
    CHECK(ja > 0.0);
  }
  CHECK(axial_current_1d(cplx(0, 1), 1.0, 0.0) == 0.0);
  // a real part lets current through for some spinor
  CHECK(std::abs(boundary_current_1d(cplx(0.1, 0.7), 1.0, 1.0)) > 1e-3);
}

TEST_CASE("three-dimensional wall") {
  const Lambda3D ok{cplx(0, 1) * Eigen::Matrix2cd::Identity(), Eigen::Vector3d::UnitZ()};
  CHECK(validate_lambda_3d(ok).accepted);
  const Eigen::Matrix2cd g = pauli_gamma_matrix(ok, 1.0, 1.0);
  CHECK((g - 2.0 * sigma(3)).norm() < 1e-15);
  const Lambda3D bad{Eigen::Matrix2cd::Identity(), Eigen::Vector3d::UnitZ()};
  CHECK(!validate_lambda_3d(bad).accepted);
  CHECK_THROWS_AS(pauli_gamma_matrix(bad, 1.0, 1.0), NotSelfAdjoint);
  const Lambda3D zero{Eigen::Matrix2cd::Zero(), Eigen::Vector3d::UnitX()};
  CHECK(pauli_gamma_matrix(zero, 1.0, 1.0).norm() == 0.0);
  const Lambda3D tilted{Eigen::Matrix2cd::Zero(), Eigen::Vector3d(1, 1, 0)};
  CHECK_THROWS_AS(validate_lambda_3d(tilted), InvalidArgument);

  std::mt19937_64 rng(2);
  int rejected_found = 0;
  for (int t = 0; t < 200; ++t) {
    const auto lam = random_accepted(rng);
    REQUIRE(validate_lambda_3d(lam).accepted);
    const Eigen::Matrix2cd gm = pauli_gamma_matrix(lam, 1.3, 0.8);
    CHECK((gm - gm.adjoint()).norm() <= 1e-12 * std::max(1.0, gm.norm()));
    for (int s = 0; s < 10; ++s) {
      const auto u = random_spinor(rng);
      CHECK(std::abs(normal_current_3d(lam, u, 1.0)) <= 1e-12 * std::max(1.0, lam.lambda.squaredNorm()) * u.squaredNorm());
    }
    const Lambda3D rej{random_matrix(rng), lam.normal};
    if (validate_lambda_3d(rej).accepted) continue;
    double found = 0.0;
    for (int s = 0; s < 100 && found <= 1e-6; ++s) found = std::abs(normal_current_3d(rej, random_spinor(rng), 1.0));
    rejected_found += found > 1e-6;
  }
  CHECK(rejected_found == 200);
}

TEST_CASE("(2+1)-d dispersion at the special points") {
  for (double p : {-2.0, -0.3, 0.0, 1.7}) {
    const auto d = dispersion_2p1(wall(0.0), p);
    CHECK(d.E == -p);
    CHECK(d.v == 1.0);
    CHECK(d.mu == 0.0);
    CHECK(d.kappa == 1.0);
    CHECK(d.normalizable);
  }
  const auto one = dispersion_2p1(wall(1.0), 0.3);
  CHECK(one.E == doctest::Approx(1.0));
  CHECK(one.v == 0.0);
  CHECK(one.mu == 1.0);
  CHECK(one.kappa == doctest::Approx(0.3));
  for (auto eta : {ExtendedReal::pos_inf(), ExtendedReal::neg_inf()}) {
    const auto d = dispersion_2p1(wall(eta), 0.8);
    CHECK(d.v == 1.0);
    CHECK(d.mu == 0.0);
    CHECK(d.E == 0.8);
    CHECK(!d.normalizable);
  }
  const auto oracle0 = numeric_oracle(wall(0.0), -1.0);
  CHECK(oracle0.E == doctest::Approx(1.0));
  CHECK(oracle0.kappa == doctest::Approx(1.0));
}

TEST_CASE("eta = 2 threshold and the normalizability window") {
  const auto w = normalizability_window(wall(2.0));
  REQUIRE(w.threshold);
  CHECK(std::abs(*w.threshold - 0.75) <= 1e-12);
  CHECK(w.direction == 1);
  CHECK(!dispersion_2p1(wall(2.0), 0.74).normalizable);
  CHECK(dispersion_2p1(wall(2.0), 0.76).normalizable);
  const auto d = dispersion_2p1(wall(2.0), 1.0);
  CHECK(d.E == doctest::Approx(0.8 + 0.6));
  CHECK(d.kappa == doctest::Approx(-0.6 + 0.8));
  CHECK(normalizability_window(wall(0.0)).always);
  CHECK(normalizability_window(wall(ExtendedReal::pos_inf())).never);
  const auto neg = normalizability_window(wall(-2.0));
  CHECK(neg.direction == -1);
  CHECK(*neg.threshold == doctest::Approx(-0.75));
}

TEST_CASE("closed forms against the numeric oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-pi / 2, pi / 2), mom(-3.0, 3.0), pos(0.0, 3.0);
  for (int t = 0; t < 200; ++t) {
    EtaWall w = wall(std::tan(ang(rng)));
    w.mass = 0.5 + pos(rng);
    w.c = 0.5 + pos(rng);
    const double scale = std::max(1.0, w.mass * w.c * w.c) * 4.0 * std::max(1.0, w.c);
    const double p = mom(rng);
    const auto a = dispersion_2p1(w, p);
    const auto b = numeric_oracle(w, p);
    CHECK(std::abs(a.E - b.E) <= 1e-12 * scale);
    CHECK(std::abs(a.kappa - b.kappa) * w.c <= 1e-12 * scale);
    CHECK(std::abs(a.v - b.v) <= 1e-12 * scale);
    CHECK(std::abs(a.mu - b.mu) <= 1e-12 * scale);
    for (int s : {1, -1}) {
      const double q = pos(rng);
      const auto c4 = dispersion_4p1(w, q, s);
      const auto o4 = numeric_oracle(w, q, s);
      CHECK(std::abs(c4.E - o4.E) <= 1e-12 * scale);
      CHECK(std::abs(c4.kappa - o4.kappa) * w.c <= 1e-12 * scale);
    }
  }
  CHECK(dispersion_4p1(wall(0.0), 2.0, -1).E == 2.0);
  CHECK(dispersion_4p1(wall(0.5), 1.0, 1).E == doctest::Approx(numeric_oracle(wall(0.5), 1.0, 1).E).epsilon(1e-12));
}

TEST_CASE("speed bound, reciprocal symmetry and the Lorentz points") {
  for (int i = -60; i <= 60; ++i) {
    const double eta = i == 0 ? 0.0 : std::copysign(std::pow(10.0, std::abs(i) / 10.0 - 3.0), i);
    const auto d = dispersion_2p1(wall(eta), 0.5);
    CHECK(d.v <= 1.0);
    if (eta != 0.0) {
      const auto r = dispersion_2p1(wall(1.0 / eta), 0.5);
      CHECK(r.v == doctest::Approx(d.v).epsilon(1e-14));
      CHECK(r.mu == doctest::Approx(d.mu).epsilon(1e-14));
      CHECK(!(d.v == 1.0 && d.mu == 0.0));
    }
  }
}

TEST_CASE("unsupported and invalid configurations") {
  EtaWall w;
  w.eta_vec = Eigen::Vector3d(0, 0.1, 0);
  CHECK_THROWS_AS(dispersion_4p1(w, 1.0, 1), UnsupportedConfiguration);
  CHECK_THROWS_AS(dispersion_2p1(w, 1.0), InvalidArgument);
  CHECK_THROWS_AS(dispersion_4p1(wall(0.0), -1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(dispersion_4p1(wall(0.0), 1.0, 0), InvalidArgument);
  EtaWall m = wall(0.0);
  m.mass = 0.0;
  CHECK_THROWS_AS(dispersion_2p1(m, 1.0), InvalidArgument);
}
