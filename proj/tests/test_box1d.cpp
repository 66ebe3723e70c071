#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sae/box1d.hpp"
#include "sae/errors.hpp"

using namespace sae;
using namespace sae::box1d;
constexpr double pi = std::numbers::pi;

namespace {

int negative_count(const std::vector<Eigenstate1D>& s) {
  int n = 0;
  for (const auto& e : s) n += e.energy < 0;
  return n;
}

double norm2(const Eigenstate1D& s) {
  const double h = 0.5 * s.spec.length;
  return oracle::simpson([&](double x) { double p = eval_wavefunction(s, x); return p * p; }, -h, h);
}

}  // namespace

TEST_CASE("Dirichlet and Neumann spectra") {
  const auto d = solve_spectrum({1.0, 1.0, ExtendedReal::pos_inf()}, 5);
  for (int n = 0; n < 5; ++n) CHECK(d[n].energy == doctest::Approx(pi * pi * (n + 1) * (n + 1) / 2).epsilon(1e-13));
  const auto z = solve_spectrum({1.0, 1.0, 0.0}, 5);
  CHECK(z[0].energy == 0.0);
  CHECK(z[0].branch == Branch::Zero);
  CHECK(z[0].amplitude == doctest::Approx(1.0));
  CHECK(eval_wavefunction(z[0], 0.3) == doctest::Approx(1.0));
  for (int n = 1; n < 5; ++n) CHECK(z[n].energy == doctest::Approx(pi * pi * n * n / 2).epsilon(1e-13));
}

TEST_CASE("gamma = 1 ground state against bisection and a ghost-point grid") {
  const auto s = solve_spectrum({1.0, 1.0, 1.0}, 4);
  const double k0 = oracle::bisect([](double k) { return k * std::sin(k / 2) - std::cos(k / 2); }, 1e-9, pi);
  CHECK(*s[0].wavenumber == doctest::Approx(k0).epsilon(1e-13));
  CHECK(*s[0].wavenumber == doctest::Approx(1.3065).epsilon(1e-4));
  const auto fd = oracle::ghost_point_box(1.0, 1.0, 1.0, 2000);
  for (int n = 0; n < 4; ++n) CHECK(s[n].energy == doctest::Approx(fd[n]).epsilon(1e-5));
}

TEST_CASE("strongly attractive wall has two bound wall states") {
  const auto s = solve_spectrum({1.0, 1.0, -4.0}, 3);
  CHECK(negative_count(s) == 2);
  const double ke = oracle::bisect([](double k) { return k * std::tanh(k / 2) - 4.0; }, 0.0, 10.0);
  const double ko = oracle::bisect([](double k) { return k / std::tanh(k / 2) - 4.0; }, 1e-6, 10.0);
  CHECK(s[0].parity == Parity::Even);
  CHECK(*s[0].wavenumber == doctest::Approx(ke).epsilon(1e-12));
  CHECK(*s[1].wavenumber == doctest::Approx(ko).epsilon(1e-12));
  CHECK(s[0].energy == doctest::Approx(-ke * ke / 2));
  CHECK(ke == doctest::Approx(4.1).epsilon(0.01));
  const auto fd = oracle::ghost_point_box(1.0, 1.0, -4.0, 2000);
  for (int n = 0; n < 3; ++n) CHECK(s[n].energy == doctest::Approx(fd[n]).epsilon(1e-5));
}

TEST_CASE("wavefunctions satisfy the Robin condition and are normalised") {
  for (double g : {-30.0, -4.0, -2.0, -1.0, -0.3, 0.0, 0.7, 1.0, 5.0, 80.0}) {
    const BoxSpec spec{1.3, 0.8, g};
    const double h = spec.length / 2;
    for (const auto& s : solve_spectrum(spec, 6)) {
      CAPTURE(g);
      CAPTURE(s.index);
      const double scale = std::max(1.0, std::abs(g)) * std::abs(s.edge_value) + 1.0;
      CHECK(std::abs(g * eval_wavefunction(s, h) + eval_derivative(s, h)) < 1e-12 * scale);
      CHECK(std::abs(-g * eval_wavefunction(s, -h) + eval_derivative(s, -h)) < 1e-12 * scale);
      CHECK(norm2(s) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(s.amplitude > 0.0);
      const double sign = s.parity == Parity::Even ? 1.0 : -1.0;
      CHECK(eval_wavefunction(s, -0.2) == doctest::Approx(sign * eval_wavefunction(s, 0.2)));
    }
  }
}

TEST_CASE("Dirichlet walls vanish at the boundary") {
  for (const auto& s : solve_spectrum({1.0, 2.0, ExtendedReal::pos_inf()}, 4)) {
    CHECK(std::abs(eval_wavefunction(s, 1.0)) < 1e-14);
    CHECK(s.edge_value == 0.0);
  }
}

TEST_CASE("linear zero mode at gamma = -2/L") {
  const double L = 1.7;
  const auto s = solve_spectrum({1.0, L, -2.0 / L}, 3);
  const auto& z = s[1];
  REQUIRE(z.branch == Branch::Zero);
  CHECK(z.parity == Parity::Odd);
  CHECK(eval_wavefunction(z, L / 2) == doctest::Approx(std::sqrt(12 / (L * L * L)) * L / 2));
  const auto o = boundary_observables(z);
  CHECK(o.a == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(o.b == doctest::Approx(-12.0 / (L * L)).epsilon(1e-12));
  CHECK(o.c == 0.0);
  CHECK(std::sqrt(o.var_x) == doctest::Approx(std::sqrt(3.0 / 20.0) * L).epsilon(1e-12));
  const auto r = uncertainty_report_1d(z);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs_general == doctest::Approx(-16.0 / (3 * L * L)).epsilon(1e-12));
  CHECK(r.slack_general == doctest::Approx(16.0 / (3 * L * L)).epsilon(1e-12));
  CHECK(s[0].energy < 0.0);
}

TEST_CASE("constant zero mode saturates the uncertainty relation") {
  const auto s = solve_spectrum({1.0, 1.0, 0.0}, 1)[0];
  const auto o = boundary_observables(s);
  CHECK(o.a == doctest::Approx(1.0));
  CHECK(o.b == 0.0);
  CHECK(o.c == 0.0);
  CHECK(std::abs(uncertainty_report_1d(s).slack_general) < 1e-12);
  CHECK(spectral_flow(s) == doctest::Approx(1.0));
}

TEST_CASE("branch counting, monotonicity and continuity over a gamma grid") {
  const double L = 1.0;
  std::vector<double> prev;
  for (int i = 0; i <= 400; ++i) {
    const double g = -12.0 + 0.05 * i;
    const auto s = solve_spectrum({1.0, L, g}, 5);
    const int expect = g >= 0 ? 0 : (g > -2.0 / L ? 1 : 2);
    CAPTURE(g);
    // At exactly -2/L the odd state sits at E = 0.
    if (std::abs(g + 2.0) > 1e-9) CHECK(negative_count(s) == expect);
    for (int n = 0; n + 1 < 5; ++n) CHECK(s[n].energy < s[n + 1].energy);
    if (!prev.empty())
      for (int n = 0; n < 5; ++n) CHECK(s[n].energy >= prev[n]);
    prev.clear();
    for (const auto& e : s) prev.push_back(e.energy);
  }
  for (double g0 : {0.0, -2.0}) {
    const auto a = solve_spectrum({1.0, L, g0 - 1e-9}, 4);
    const auto b = solve_spectrum({1.0, L, g0}, 4);
    const auto c = solve_spectrum({1.0, L, g0 + 1e-9}, 4);
    for (int n = 0; n < 4; ++n) {
      CHECK(std::abs(a[n].energy - b[n].energy) < 1e-7);
      CHECK(std::abs(c[n].energy - b[n].energy) < 1e-7);
    }
  }
}

TEST_CASE("large negative gamma asymptotics") {
  // oscillatory levels approach the Dirichlet ones as E (1 + 4/|gamma L|)
  for (double g : {-50.0, -200.0, -1e4}) {
    const auto s = solve_spectrum({1.0, 1.0, g}, 5);
    CHECK(s[0].energy == doctest::Approx(-g * g / 2).epsilon(g < -100 ? 1e-10 : 1e-2));
    CHECK(s[1].energy == doctest::Approx(-g * g / 2).epsilon(g < -100 ? 1e-10 : 1e-2));
    if (g >= -200) CHECK(norm2(s[0]) == doctest::Approx(1.0).epsilon(1e-6));
    for (int n = 2; n < 5; ++n)
      CHECK(s[n].energy == doctest::Approx(pi * pi * (n - 1) * (n - 1) / 2).epsilon(-5.0 / g));
  }
  const auto s = solve_spectrum({1.0, 1.0, ExtendedReal::neg_inf()}, 5);
  CHECK(s[0].singular());
  CHECK(s[1].singular());
  for (int n = 2; n < 5; ++n) CHECK(s[n].energy == doctest::Approx(pi * pi * (n - 1) * (n - 1) / 2));
  CHECK_THROWS_AS(eval_wavefunction(s[0], 0.0), DomainError);
}

TEST_CASE("spectral flow matches the gamma derivative of the energy") {
  for (double g : {-6.0, -1.0, 0.5, 1.0, 3.0}) {
    const BoxSpec spec{1.0, 1.0, g};
    const auto s = solve_spectrum(spec, 4);
    const auto sp = solve_spectrum({1.0, 1.0, g + 1e-5}, 4);
    const auto sm = solve_spectrum({1.0, 1.0, g - 1e-5}, 4);
    for (int n = 0; n < 4; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      const double fd = (sp[n].energy - sm[n].energy) / 2e-5;
      CHECK(spectral_flow(s[n]) == doctest::Approx(fd).epsilon(1e-6));
      if (s[n].branch == Branch::Oscillatory && s[n].parity == Parity::Even) {
        const double k = *s[n].wavenumber;
        const double c = std::cos(k / 2);
        CHECK(spectral_flow(s[n]) == doctest::Approx(2 * k * c * c / (k + std::sin(k))).epsilon(1e-12));
      }
    }
  }
  for (const auto& s : solve_spectrum({1.0, 1.0, ExtendedReal::pos_inf()}, 3)) CHECK(spectral_flow(s) == 0.0);
}

TEST_CASE("uncertainty slack is non-negative over a sweep") {
  for (int i = 0; i < 50; ++i) {
    const double phi = -1.5 + 3.0 * i / 49.0;
    const double g = 2.0 * std::tan(phi);
    for (const auto& s : solve_spectrum({1.0, 1.0, g}, 6)) {
      const double slack = uncertainty_report_1d(s).slack_general;
      CHECK(slack >= -1e-9);
    }
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(solve_spectrum({1.0, 1.0, 1.0}, 0), InvalidArgument);
  CHECK_THROWS_AS(solve_spectrum({0.0, 1.0, 1.0}, 1), InvalidArgument);
  CHECK_THROWS_AS(solve_spectrum({1.0, std::nan(""), 1.0}, 1), InvalidArgument);
  CHECK_THROWS_AS(solve_spectrum({1.0, INFINITY, 1.0}, 1), InvalidArgument);
  const auto s = solve_spectrum({1.0, 1.0, 1.0}, 1)[0];
  CHECK_THROWS_AS(eval_wavefunction(s, 0.6), DomainError);
  CHECK_NOTHROW(eval_wavefunction(s, 0.5));
}
