#include "sae/box1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sae/errors.hpp"
#include "sae/quadrature.hpp"
#include "sae/root_find.hpp"

namespace sae::box1d {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const BoxSpec& spec) {
  if (!std::isfinite(spec.mass) || spec.mass <= 0.0)
    throw InvalidArgument("box1d: mass must be a finite positive number");
  if (!std::isfinite(spec.length) || spec.length <= 0.0)
    throw InvalidArgument("box1d: length must be a finite positive number");
  if (spec.gamma.is_finite() && std::isnan(spec.gamma.value()))
    throw InvalidArgument("box1d: gamma is NaN");
}

double x_cot_x(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 3.0 - x * x * x * x / 45.0;
  return x / std::tan(x);
}

double x_coth_x(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 3.0 - x * x * x * x / 45.0;
  return x / std::tanh(x);
}

// 1 - sin(u)/u without cancellation for small u.
double one_minus_sinc(double u) {
  if (std::abs(u) < 0.1) {
    const double u2 = u * u;
    return u2 * (1.0 / 6.0 - u2 * (1.0 / 120.0 - u2 * (1.0 / 5040.0 - u2 / 362880.0)));
  }
  return 1.0 - std::sin(u) / u;
}

// coth(p)/p - 1/sinh(p)^2, which tends to 2/3 at p -> 0.
double sinh_norm_factor(double p) {
  if (p < 1e-2) {
    const double p2 = p * p;
    return 2.0 / 3.0 - 4.0 * p2 / 45.0 + 4.0 * p2 * p2 / 315.0;
  }
  const double e = std::exp(-2.0 * p);
  const double em = -std::expm1(-2.0 * p);  // 1 - e^{-2p}
  return (1.0 + e) / (em * p) - 4.0 * e / (em * em);
}

// theta * tan(theta) = g in one bracket; roots of theta sin - g cos.
double even_oscillatory_root(double g, double lo, double hi) {
  auto f = [g](double t) { return t * std::sin(t) - g * std::cos(t); };
  auto df = [g](double t) { return std::sin(t) + t * std::cos(t) + g * std::sin(t); };
  return bracketed_root(f, df, lo, hi);
}

// -theta * cot(theta) = g; roots of theta cos + g sin.
double odd_oscillatory_root(double g, double lo, double hi) {
  auto f = [g](double t) { return t * std::cos(t) + g * std::sin(t); };
  auto df = [g](double t) { return std::cos(t) - t * std::sin(t) + g * std::cos(t); };
  return bracketed_root(f, df, lo, hi);
}

// First odd root for -1 < g < 0 in (0, pi/2], where theta cos + g sin has
// a spurious root at 0. Uses theta cot(theta) + g instead.
double odd_first_root_small(double g) {
  auto f = [g](double t) { return x_cot_x(t) + g; };
  auto df = [](double t) {
    if (t < 1e-4) return -2.0 * t / 3.0;
    const double s = std::sin(t);
    return std::cos(t) / s - t / (s * s);
  };
  return bracketed_root(f, df, 0.0, kPi / 2.0);
}

// phi tanh(phi) = G, G > 0.
double even_evanescent_root(double big_g) {
  auto f = [big_g](double p) { return p * std::tanh(p) - big_g; };
  auto df = [](double p) {
    const double ch = std::cosh(p);
    return std::tanh(p) + p / (ch * ch);
  };
  return bracketed_root(f, df, 0.0, big_g + 1.0);
}

// phi coth(phi) = G, G > 1.
double odd_evanescent_root(double big_g) {
  auto f = [big_g](double p) { return x_coth_x(p) - big_g; };
  auto df = [](double p) {
    if (p < 1e-4) return 2.0 * p / 3.0;
    const double sh = std::sinh(p);
    return 1.0 / std::tanh(p) - p / (sh * sh);
  };
  return bracketed_root(f, df, 0.0, big_g);
}

struct Candidate {
  Parity parity;
  Branch branch;
  double half_angle;  // theta = kL/2 or phi = kappa L/2; 0 for zero modes
};

void append_oscillatory(std::vector<Candidate>& out, Parity parity, double g, int count,
                        bool zero_even, bool zero_odd) {
  for (int j = 0, found = 0; found < count; ++j) {
    const double jp = j * kPi;
    double theta = -1.0;
    if (parity == Parity::Even) {
      if (zero_even) {
        if (j >= 1) theta = jp;
      } else if (g > 0.0) {
        theta = even_oscillatory_root(g, jp, jp + kPi / 2.0);
      } else if (j >= 1) {
        theta = even_oscillatory_root(g, jp - kPi / 2.0, jp);
      }
    } else {
      if (zero_even) {
        theta = jp + kPi / 2.0;
      } else if (g > 0.0) {
        theta = odd_oscillatory_root(g, jp + kPi / 2.0, jp + kPi);
      } else if (j >= 1) {
        theta = odd_oscillatory_root(g, jp, jp + kPi / 2.0);
      } else if (!zero_odd && g > -1.0) {
        theta = odd_first_root_small(g);
      }
    }
    if (theta > 0.0) {
      out.push_back({parity, Branch::Oscillatory, theta});
      ++found;
    }
  }
}

Eigenstate1D make_state(const BoxSpec& spec, const Candidate& c) {
  const double L = spec.length;
  const double m = spec.mass;
  Eigenstate1D s;
  s.parity = c.parity;
  s.branch = c.branch;
  s.spec = spec;
  switch (c.branch) {
    case Branch::Zero:
      s.energy = 0.0;
      if (c.parity == Parity::Even) {
        s.amplitude = std::sqrt(1.0 / L);
        s.edge_value = s.amplitude;
      } else {
        s.amplitude = std::sqrt(12.0 / (L * L * L));
        s.edge_value = s.amplitude * L / 2.0;
      }
      break;
    case Branch::Oscillatory: {
      const double theta = c.half_angle;
      const double k = 2.0 * theta / L;
      s.wavenumber = k;
      s.energy = k * k / (2.0 * m);
      const double u = 2.0 * theta;
      if (c.parity == Parity::Even) {
        s.amplitude = 1.0 / std::sqrt(0.5 * L * (1.0 + std::sin(u) / u));
        s.edge_value = s.amplitude * std::cos(theta);
      } else {
        s.amplitude = 1.0 / std::sqrt(0.5 * L * one_minus_sinc(u));
        s.edge_value = s.amplitude * std::sin(theta);
      }
      if (!spec.gamma.is_finite()) s.edge_value = 0.0;
      break;
    }
    case Branch::Evanescent: {
      if (std::isinf(c.half_angle)) {
        s.wavenumber = kInf;
        s.energy = -kInf;
        break;
      }
      const double phi = c.half_angle;
      const double kappa = 2.0 * phi / L;
      s.wavenumber = kappa;
      s.energy = -kappa * kappa / (2.0 * m);
      const double e2 = std::exp(-2.0 * phi);
      if (c.parity == Parity::Even) {
        // int (cosh(kx)/cosh(kL/2))^2 = L / (2 cosh^2) + tanh(phi) / kappa
        const double inv_cosh = 2.0 * std::exp(-phi) / (1.0 + e2);
        const double norm2 = 0.5 * L * inv_cosh * inv_cosh + std::tanh(phi) / kappa;
        s.edge_value = 1.0 / std::sqrt(norm2);
        s.amplitude = s.edge_value * inv_cosh;
      } else {
        const double norm2 = 0.5 * L * sinh_norm_factor(phi);
        s.edge_value = 1.0 / std::sqrt(norm2);
        s.amplitude = s.edge_value * 2.0 * std::exp(-phi) / (-std::expm1(-2.0 * phi));
      }
      break;
    }
  }
  return s;
}

void check_inside(const Eigenstate1D& state, double x) {
  const double half = 0.5 * state.spec.length;
  if (!(std::abs(x) <= half * (1.0 + 1e-14)))
    throw DomainError("box1d: x outside [-L/2, L/2]");
  if (state.singular())
    throw DomainError("box1d: gamma = -inf wall state has no finite wavefunction");
}

}  // namespace

std::vector<Eigenstate1D> solve_spectrum(const BoxSpec& spec, int count) {
  validate(spec);
  if (count < 1) throw InvalidArgument("box1d: count must be at least 1");

  const double L = spec.length;
  std::vector<Candidate> cands;

  if (spec.gamma.is_pos_inf()) {
    for (int j = 0; j < count; ++j) {
      cands.push_back({Parity::Even, Branch::Oscillatory, (j + 0.5) * kPi});
      cands.push_back({Parity::Odd, Branch::Oscillatory, (j + 1.0) * kPi});
    }
  } else if (spec.gamma.is_neg_inf()) {
    cands.push_back({Parity::Even, Branch::Evanescent, kInf});
    cands.push_back({Parity::Odd, Branch::Evanescent, kInf});
    for (int j = 1; j <= count; ++j) {
      cands.push_back({Parity::Even, Branch::Oscillatory, (j - 0.5) * kPi});
      cands.push_back({Parity::Odd, Branch::Oscillatory, j * kPi});
    }
  } else {
    const double gamma = spec.gamma.value();
    const bool zero_even = std::abs(gamma) < kZeroModeTolerance;
    const bool zero_odd = std::abs(gamma + 2.0 / L) < kZeroModeTolerance;
    double g = 0.5 * gamma * L;
    if (zero_even) g = 0.0;
    if (zero_odd) g = -1.0;

    if (zero_even) cands.push_back({Parity::Even, Branch::Zero, 0.0});
    if (zero_odd) cands.push_back({Parity::Odd, Branch::Zero, 0.0});
    if (g < 0.0) cands.push_back({Parity::Even, Branch::Evanescent, even_evanescent_root(-g)});
    if (g < -1.0) cands.push_back({Parity::Odd, Branch::Evanescent, odd_evanescent_root(-g)});
    append_oscillatory(cands, Parity::Even, g, count, zero_even, zero_odd);
    append_oscillatory(cands, Parity::Odd, g, count, zero_even, zero_odd);
  }

  std::vector<Eigenstate1D> states;
  states.reserve(cands.size());
  for (const auto& c : cands) states.push_back(make_state(spec, c));
  std::stable_sort(states.begin(), states.end(), [](const auto& a, const auto& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.parity == Parity::Even && b.parity == Parity::Odd;
  });
  states.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) states[static_cast<std::size_t>(i)].index = i;
  return states;
}

double eval_wavefunction(const Eigenstate1D& state, double x) {
  check_inside(state, x);
  const double half = 0.5 * state.spec.length;
  switch (state.branch) {
    case Branch::Zero:
      return state.parity == Parity::Even ? state.amplitude : state.amplitude * x;
    case Branch::Oscillatory: {
      const double k = *state.wavenumber;
      return state.parity == Parity::Even ? state.amplitude * std::cos(k * x)
                                          : state.amplitude * std::sin(k * x);
    }
    case Branch::Evanescent: {
      const double kappa = *state.wavenumber;
      const double ax = std::abs(x);
      const double decay = std::exp(kappa * (ax - half));
      if (state.parity == Parity::Even)
        return state.edge_value * decay * (1.0 + std::exp(-2.0 * kappa * ax)) /
               (1.0 + std::exp(-2.0 * kappa * half));
      const double sign = x < 0.0 ? -1.0 : 1.0;
      return sign * state.edge_value * decay * std::expm1(-2.0 * kappa * ax) /
             std::expm1(-2.0 * kappa * half);
    }
  }
  return 0.0;
}

double eval_derivative(const Eigenstate1D& state, double x) {
  check_inside(state, x);
  const double half = 0.5 * state.spec.length;
  switch (state.branch) {
    case Branch::Zero:
      return state.parity == Parity::Even ? 0.0 : state.amplitude;
    case Branch::Oscillatory: {
      const double k = *state.wavenumber;
      return state.parity == Parity::Even ? -state.amplitude * k * std::sin(k * x)
                                          : state.amplitude * k * std::cos(k * x);
    }
    case Branch::Evanescent: {
      const double kappa = *state.wavenumber;
      const double ax = std::abs(x);
      const double decay = std::exp(kappa * (ax - half));
      const double sign = x < 0.0 ? -1.0 : 1.0;
      if (state.parity == Parity::Even)
        return sign * state.edge_value * kappa * decay * (-std::expm1(-2.0 * kappa * ax)) /
               (1.0 + std::exp(-2.0 * kappa * half));
      return state.edge_value * kappa * decay * (1.0 + std::exp(-2.0 * kappa * ax)) /
             (-std::expm1(-2.0 * kappa * half));
    }
  }
  return 0.0;
}

BoundaryObservables1D boundary_observables(const Eigenstate1D& state) {
  if (state.singular())
    throw DomainError("box1d: gamma = -inf wall state has no finite observables");
  const double L = state.spec.length;
  const double half = 0.5 * L;
  BoundaryObservables1D obs;
  const double edge = state.edge_value;
  obs.rho_plus = edge * edge;
  obs.rho_minus = edge * edge;  // |Psi(-L/2)| = |Psi(L/2)| for either parity
  obs.a = half * (obs.rho_plus + obs.rho_minus);
  obs.b = state.spec.gamma.is_finite() ? state.spec.gamma.value() * (obs.rho_plus + obs.rho_minus)
                                       : 0.0;
  obs.c = obs.rho_plus - obs.rho_minus;
  obs.pbar = 0.0;  // real wavefunction

  auto density = [&](double x) {
    const double psi = eval_wavefunction(state, x);
    return psi * psi;
  };
  obs.mean_x = integrate_adaptive([&](double x) { return x * density(x); }, -half, half).value;
  const double mean_x2 =
      integrate_adaptive([&](double x) { return x * x * density(x); }, -half, half).value;
  obs.var_x = mean_x2 - obs.mean_x * obs.mean_x;
  obs.mean_p2 = 2.0 * state.spec.mass * state.energy;
  return obs;
}

UncertaintyReport uncertainty_report_1d(const Eigenstate1D& state) {
  const BoundaryObservables1D o = boundary_observables(state);
  UncertaintyReport r;
  r.lhs = o.mean_p2;
  r.dx = std::sqrt(o.var_x);
  const double commutator = 1.0 + o.c * o.mean_x - o.a;
  const double ratio = commutator / (2.0 * r.dx);
  r.rhs_general = o.pbar * o.pbar + ratio * ratio + o.b + 0.25 * o.c * o.c;
  r.slack_general = r.lhs - r.rhs_general;
  const double dp2 = o.mean_p2 - o.b - o.pbar * o.pbar - 0.25 * o.c * o.c;
  r.dp = std::sqrt(std::max(0.0, dp2));
  // Real eigenfunctions: Re<x p> = 0 and pbar = 0.
  r.rhs_nonhermitean = 0.5 * std::abs(commutator);
  r.slack_nonhermitean = r.dx * r.dp - r.rhs_nonhermitean;
  return r;
}

double spectral_flow(const Eigenstate1D& state) {
  if (state.singular())
    throw DomainError("box1d: gamma = -inf wall state has no spectral flow");
  const double rho = state.edge_value * state.edge_value;
  return 2.0 * rho / (2.0 * state.spec.mass);
}

}  // namespace sae::box1d
