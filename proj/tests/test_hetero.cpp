#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sae/errors.hpp"
#include "sae/hetero.hpp"

using namespace sae;
using namespace sae::hetero;
constexpr double pi = std::numbers::pi;

namespace {

Eigen::Matrix2cd random_valid(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 2.0), off(-2.0, 2.0), ph(-pi, pi);
  std::bernoulli_distribution sgn;
  const double a = sgn(rng) ? mag(rng) : -mag(rng);
  const double b = off(rng), c = off(rng);
  Eigen::Matrix2d r;
  r << a, b, c, (1.0 + b * c) / a;
  return std::polar(1.0, ph(rng)) * r.cast<cplx>();
}

InterfaceState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  return {{n01(rng), n01(rng)}, {n01(rng), n01(rng)}};
}

}  // namespace

TEST_CASE("spec matrices") {
  const auto id = validate_interface(Eigen::Matrix2cd::Identity());
  CHECK(id.theta == 0.0);
  CHECK(id.residuals.max() == 0.0);

  Eigen::Matrix2d r;
  r << 2, 1, 1, 1;
  const auto m = validate_interface(std::polar(1.0, pi / 3) * r.cast<cplx>());
  CHECK(m.theta == doctest::Approx(pi / 3).epsilon(1e-14));
  CHECK((m.real_part - r).norm() < 1e-14);

  Eigen::Matrix2cd bad = Eigen::Matrix2cd::Identity();
  bad(1, 1) = 2.0;
  CHECK_THROWS_AS(validate_interface(bad), NotSelfAdjoint);
  try {
    validate_interface(bad);
  } catch (const NotSelfAdjoint& e) {
    CHECK(std::string(e.what()).find("G11* G22 - G21* G12 = 1") != std::string::npos);
  }
}

TEST_CASE("phase is reduced to (-pi/2, pi/2]") {
  const Eigen::Matrix2cd minus = -Eigen::Matrix2cd::Identity();
  const auto m = validate_interface(minus);
  CHECK(m.theta == doctest::Approx(0.0));
  CHECK(m.real_part(0, 0) == doctest::Approx(-1.0));
  const auto j = validate_interface(cplx(0, 1) * Eigen::Matrix2cd::Identity());
  CHECK(j.theta == doctest::Approx(pi / 2));
}

TEST_CASE("random valid matrices conserve current, perturbed ones are rejected") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> ph(-pi, pi);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::Matrix2cd g = random_valid(rng);
    const auto m = validate_interface(g);
    CHECK(std::abs(m.real_part.determinant() - 1.0) < 1e-12);
    for (int s = 0; s < 5; ++s) {
      const auto II = random_state(rng);
      worst = std::max(worst, current_mismatch(match_across(II, m), II));
    }
    Eigen::Matrix2cd p = g;
    const int k = pick(rng);
    p(k / 2, k % 2) += std::polar(1e-6, ph(rng));
    CHECK_THROWS_AS(validate_interface(p), NotSelfAdjoint);

    // a rejected matrix violates current conservation for some state
    double found = 0.0;
    for (int s = 0; s < 100 && found <= 1e-6; ++s) {
      const auto II = random_state(rng);
      InterfaceState I{p(0, 0) * II.value + p(0, 1) * II.flux, p(1, 0) * II.value + p(1, 1) * II.flux};
      found = current_mismatch(I, II);
    }
    CHECK(found > 1e-6);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("products of valid matrices are valid") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto a = validate_interface(random_valid(rng));
    const auto b = validate_interface(random_valid(rng));
    CHECK_NOTHROW(validate_interface(a.gamma * b.gamma));
  }
}

TEST_CASE("matching applies the matrix to (value, flux)") {
  const auto id = validate_interface(Eigen::Matrix2cd::Identity());
  const InterfaceState s{{0.3, -0.2}, {1.5, 0.7}};
  const auto same = match_across(s, id);
  CHECK(same.value == s.value);
  CHECK(same.flux == s.flux);
  Eigen::Matrix2cd r;
  r << 1.0, 2.0, 0.0, 1.0;
  const auto mixed = match_across(s, validate_interface(r));
  CHECK(std::abs(mixed.value - (s.value + 2.0 * s.flux)) < 1e-15);
  const InterfaceState real_state{0.4, -1.1};
  CHECK(normal_current(real_state) == 0.0);
  CHECK(normal_current(match_across(real_state, validate_interface(r))) == 0.0);
  // plane wave exp(ikx), flux = ik/(2m) psi
  const double k = 1.3, m = 0.5;
  const InterfaceState wave{1.0, cplx(0, k / (2 * m))};
  CHECK(normal_current(wave) == doctest::Approx(k / m));
  CHECK(current_mismatch(match_across(wave, id), wave) == 0.0);
}

TEST_CASE("scattering") {
  const auto id = validate_interface(Eigen::Matrix2cd::Identity());
  const auto free = scatter_interface(2.0, {1.0, 0.0}, {1.0, 0.0}, id);
  CHECK(std::abs(free.R) < 1e-15);
  CHECK(std::abs(free.T - 1.0) < 1e-15);

  // mass step: psi and psi'/2m continuous
  const double E = 1.7, m1 = 1.0, m2 = 0.067, V2 = 0.4;
  const double u1 = std::sqrt(2 * m1 * E) / m1, u2 = std::sqrt(2 * m2 * (E - V2)) / m2;
  const auto step = scatter_interface(E, {m1, 0.0}, {m2, V2}, id);
  CHECK(std::abs(step.T - 2 * u1 / (u1 + u2)) < 1e-14);
  CHECK(std::abs(step.R - (u1 - u2) / (u1 + u2)) < 1e-14);
  CHECK(step.transmission_probability == doctest::Approx(u2 / u1 * std::norm(step.T)));
  CHECK(step.flux_residual < 1e-12);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int t = 0; t < 200; ++t) {
    const auto g = validate_interface(random_valid(rng));
    const RegionParams L{u(rng), 0.0}, R{u(rng), u(rng) - 1.5};
    const auto s = scatter_interface(u(rng) + 1.5, L, R, g);
    CHECK(s.flux_residual < 1e-12);
    CHECK(std::abs(std::norm(s.R) + s.transmission_probability - 1.0) < 1e-12);
  }
  const auto closed = scatter_interface(0.2, {1.0, 0.0}, {1.0, 1.0}, id);
  CHECK(closed.evanescent);
  CHECK(std::abs(std::abs(closed.R) - 1.0) < 1e-14);
  CHECK(closed.transmission_probability == 0.0);
  CHECK_THROWS_AS(scatter_interface(-1.0, {1.0, 0.0}, {1.0, 0.0}, id), InvalidArgument);
}
