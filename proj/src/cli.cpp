#include "sae/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "sae/box1d.hpp"
#include "sae/dirac_wall.hpp"
#include "sae/errors.hpp"
#include "sae/grid.hpp"
#include "sae/hetero.hpp"
#include "sae/qdot_fd.hpp"
#include "sae/wall_models.hpp"

namespace sae::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using ojson = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

ojson json_cell(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return std::isfinite(*d) ? ojson(*d) : ojson(nullptr);
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

// Runs f(0..n-1) on up to thread_limit() workers. Each call writes only its
// own slot, so results do not depend on scheduling; the exception from the
// lowest failing index is rethrown.
template <class F>
void parallel_for(int n, F&& f) {
  const int workers = std::min(n, thread_limit());
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  auto guarded = [&](int i) {
    try {
      f(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double extended_to_double(const ExtendedReal& x) { return x.value(); }

// Samples uniform in atan(scale * x) between two extended reals; the
// endpoints keep their exact (possibly infinite) values.
std::vector<ExtendedReal> angle_grid(const ExtendedReal& lo, const ExtendedReal& hi, int steps,
                                     double scale, std::vector<double>* angles) {
  auto angle = [scale](const ExtendedReal& x) {
    if (x.is_pos_inf()) return kPi / 2;
    if (x.is_neg_inf()) return -kPi / 2;
    return std::atan(scale * x.value());
  };
  const double a = angle(lo);
  const double b = angle(hi);
  if (steps < 2) throw InvalidArgument("sweep needs at least 2 steps");
  if (!(a < b)) throw InvalidArgument("sweep range must satisfy min < max");
  std::vector<ExtendedReal> out(static_cast<std::size_t>(steps));
  angles->assign(static_cast<std::size_t>(steps), 0.0);
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / (steps - 1);
    const double phi = a * (1.0 - t) + b * t;
    (*angles)[static_cast<std::size_t>(i)] = phi;
    if (i == 0)
      out[0] = lo;
    else if (i == steps - 1)
      out[static_cast<std::size_t>(i)] = hi;
    else
      out[static_cast<std::size_t>(i)] = ExtendedReal(std::tan(phi) / scale);
  }
  return out;
}

struct Common {
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", c.output, "Write to this file instead of stdout");
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOpts {
  Common common;
  double mass = 1.0;
  double length = 1.0;
  std::string gamma;
  std::string gamma_min = "-inf";
  std::string gamma_max = "inf";
  int steps = 201;
  int count = 5;
  bool raw = false;
};

Table cmd_spectrum(const SpectrumOpts& o) {
  if (o.count < 1) throw InvalidArgument("--count must be >= 1");
  std::vector<ExtendedReal> gammas;
  std::vector<double> phis;
  if (!o.gamma.empty()) {
    const ExtendedReal g = ExtendedReal::parse(o.gamma);
    gammas.push_back(g);
    phis.push_back(g.is_finite() ? std::atan(0.5 * g.value() * o.length) : (g.is_pos_inf() ? kPi / 2 : -kPi / 2));
  } else {
    gammas = angle_grid(ExtendedReal::parse(o.gamma_min), ExtendedReal::parse(o.gamma_max), o.steps,
                        0.5 * o.length, &phis);
  }
  const double unit = o.raw ? 1.0 : kPi * kPi / (2.0 * o.mass * o.length * o.length);

  Table t;
  t.command = "spectrum";
  t.columns = {"phi", "gamma"};
  for (int n = 0; n < o.count; ++n) t.columns.push_back("E" + std::to_string(n));
  t.rows.resize(gammas.size());
  parallel_for(static_cast<int>(gammas.size()), [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    const auto states = box1d::solve_spectrum({o.mass, o.length, gammas[k]}, o.count);
    auto& row = t.rows[k];
    row.push_back(phis[k]);
    row.push_back(extended_to_double(gammas[k]));
    for (const auto& s : states) row.push_back(s.energy / unit);
  });
  t.meta["mass"] = o.mass;
  t.meta["length"] = o.length;
  t.meta["energy_unit"] = o.raw ? "raw" : "pi^2/(2 m L^2)";
  t.meta["abscissa"] = "phi = atan(gamma L / 2)";
  return t;
}

// --------------------------------------------------------------------- dot

struct DotOpts {
  Common common;
  std::string shape = "interval";
  std::string grid_file;
  double resolution = 64.0;
  double length = 1.0;
  double width = 1.0;
  double radius = 0.5;
  double inner_radius = 0.25;
  double mass = 1.0;
  std::string gamma = "0";
  std::string gamma_faces;
  std::optional<double> gamma_min;
  std::optional<double> gamma_max;
  int steps = 11;
  int count = 5;
  double flow_step = 1e-3;
};

fd::DomainGrid make_grid(const DotOpts& o) {
  if (!o.grid_file.empty()) return fd::DomainGrid::load(o.grid_file);
  if (!(o.resolution > 0.0)) throw InvalidArgument("--resolution must be > 0");
  const double h = 1.0 / o.resolution;
  if (o.shape == "interval")
    return fd::DomainGrid::interval(o.length, static_cast<int>(std::lround(o.length * o.resolution)));
  if (o.shape == "rect") return fd::DomainGrid::rectangle(o.length, o.width, h);
  if (o.shape == "disk") return fd::DomainGrid::disk(o.radius, h);
  if (o.shape == "annulus") return fd::DomainGrid::annulus(o.inner_radius, o.radius, h);
  throw InvalidArgument("unknown shape '" + o.shape + "'");
}

Table cmd_dot(const DotOpts& o) {
  if (o.count < 1) throw InvalidArgument("--count must be >= 1");
  const fd::DomainGrid grid = make_grid(o);
  if (o.count > grid.cell_count()) throw InvalidArgument("--count exceeds the number of inside cells");

  struct Case {
    fd::RobinField field;
    std::optional<double> uniform;  // set when the flow check applies
    double label = 0.0;
  };
  std::vector<Case> cases;
  if (!o.gamma_faces.empty()) {
    cases.push_back({fd::RobinField::load_csv(grid, o.gamma_faces), std::nullopt,
                     std::numeric_limits<double>::quiet_NaN()});
  } else if (o.gamma_min || o.gamma_max) {
    if (!o.gamma_min || !o.gamma_max) throw InvalidArgument("--gamma-min and --gamma-max go together");
    if (o.steps < 2 || !(*o.gamma_min < *o.gamma_max))
      throw InvalidArgument("gamma scan needs steps >= 2 and min < max");
    for (int i = 0; i < o.steps; ++i) {
      const double t = static_cast<double>(i) / (o.steps - 1);
      const double g = *o.gamma_min * (1.0 - t) + *o.gamma_max * t;
      cases.push_back({fd::RobinField::uniform(grid, g), g, g});
    }
  } else {
    const ExtendedReal g = ExtendedReal::parse(o.gamma);
    cases.push_back({fd::RobinField::uniform(grid, g),
                     g.is_finite() ? std::optional<double>(g.value()) : std::nullopt, g.value()});
  }

  Table t;
  t.command = "dot";
  t.columns = {"gamma", "level", "energy", "slack_general", "slack_nonhermitean",
               "flow_lhs", "flow_rhs", "degenerate"};
  std::vector<std::vector<std::vector<Value>>> blocks(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int ci) {
    const Case& c = cases[static_cast<std::size_t>(ci)];
    const fd::DiscreteHamiltonian H = fd::build_hamiltonian(grid, c.field, o.mass);
    const fd::EigenSolution sol = fd::solve_lowest(H, o.count);
    std::vector<fd::FlowCheck> flow;
    if (c.uniform) flow = fd::spectral_flow_table(grid, *c.uniform, o.mass, {}, o.count, o.flow_step);
    auto& rows = blocks[static_cast<std::size_t>(ci)];
    for (int n = 0; n < o.count; ++n) {
      const auto k = static_cast<std::size_t>(n);
      double sg = std::numeric_limits<double>::quiet_NaN();
      double sn = sg;
      try {
        const auto rep = fd::uncertainty_general(
            fd::moments(grid, c.field, Eigen::VectorXd(sol.states.col(n))), grid.dim());
        sg = rep.slack_general;
        sn = rep.slack_nonhermitean;
      } catch (const DegenerateState&) {
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rows.push_back({c.label, static_cast<long long>(n), sol.energies[k], sg, sn,
                      flow.empty() ? nan : flow[k].lhs, flow.empty() ? nan : flow[k].rhs,
                      flow.empty() ? false : flow[k].degenerate});
    }
  });
  for (auto& b : blocks)
    for (auto& r : b) t.rows.push_back(std::move(r));
  t.meta["grid"] = {{"dim", grid.dim()},
                    {"h", grid.h()},
                    {"cells", grid.cell_count()},
                    {"boundary_faces", grid.boundary_faces().size()}};
  t.meta["mass"] = o.mass;
  return t;
}

// ----------------------------------------------------------------- scatter

struct ScatterOpts {
  Common common;
  std::string gamma = "1";
  double k_min = 0.1;
  double k_max = 10.0;
  int k_steps = 100;
};

Table cmd_scatter(const ScatterOpts& o) {
  if (o.k_steps < 1 || !(o.k_min > 0.0) || !(o.k_max >= o.k_min) || (o.k_steps > 1 && !(o.k_max > o.k_min)))
    throw InvalidArgument("k grid needs 0 < k-min < k-max and k-steps >= 1");
  std::vector<double> ks(static_cast<std::size_t>(o.k_steps));
  for (int i = 0; i < o.k_steps; ++i) {
    const double t = o.k_steps == 1 ? 0.0 : static_cast<double>(i) / (o.k_steps - 1);
    ks[static_cast<std::size_t>(i)] = o.k_min * (1.0 - t) + o.k_max * t;
  }
  const auto scan = wall::reflection_scan(ks, ExtendedReal::parse(o.gamma));
  Table t;
  t.command = "scatter";
  t.columns = {"k", "R_re", "R_im", "abs_R", "delta"};
  for (const auto& r : scan) t.rows.push_back({r.k, r.R.real(), r.R.imag(), std::abs(r.R), r.delta});
  t.meta["gamma"] = o.gamma;
  return t;
}

// -------------------------------------------------------------------- wall

struct WallOpts {
  Common common;
  double gamma = 1.0;
  double epsilon = 0.02;
  int points = 4;
  double mass = 1.0;
};

Table cmd_wall(const WallOpts& o) {
  if (o.points < 1) throw InvalidArgument("--points must be >= 1");
  Table t;
  t.command = "wall";
  t.columns = {"epsilon", "q", "V0", "gamma_eff", "error"};
  std::vector<double> lx, ly;
  double eps = o.epsilon;
  for (int i = 0; i < o.points; ++i, eps *= 0.5) {
    const auto w = wall::square_well_parameters(o.gamma, eps, o.mass);
    const double g = wall::effective_gamma(w, o.mass);
    const double err = g - o.gamma;
    t.rows.push_back({eps, w.q, w.V0, g, err});
    if (err != 0.0) {
      lx.push_back(std::log(eps));
      ly.push_back(std::log(std::abs(err)));
    }
  }
  // Least-squares slope of log|error| against log(epsilon).
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (lx.size() >= 2 && lx.size() == static_cast<std::size_t>(o.points)) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    slope = sxy / sxx;
  }
  t.meta["gamma"] = o.gamma;
  t.meta["mass"] = o.mass;
  t.meta["loglog_slope"] = std::isfinite(slope) ? ojson(slope) : ojson(nullptr);
  return t;
}

// ------------------------------------------------------------------ hetero

struct HeteroOpts {
  Common common;
  std::string matrix_file;
  std::optional<double> energy;
  double mass_left = 1.0;
  double mass_right = 1.0;
  double v_left = 0.0;
  double v_right = 0.0;
};

Eigen::Matrix2cd read_interface_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("matrix file '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != 4) throw IoError("matrix file: 'entries' must hold 4 [re, im] pairs");
    Eigen::Matrix2cd g;
    for (int k = 0; k < 4; ++k) {
      const auto& pair = e.at(static_cast<std::size_t>(k));
      if (!pair.is_array() || pair.size() != 2) throw IoError("matrix file: each entry must be [re, im]");
      g(k / 2, k % 2) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
    }
    if (j.contains("theta") && !j["theta"].is_null()) g *= std::polar(1.0, j["theta"].get<double>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("matrix file: ") + e.what());
  }
}

Table cmd_hetero(const HeteroOpts& o) {
  const Eigen::Matrix2cd g = read_interface_json(o.matrix_file);
  Table t;
  t.command = "hetero";
  t.columns = {"accepted", "theta", "phase_residual", "det_residual",
               "bilinear_1", "bilinear_2", "bilinear_3", "bilinear_4"};
  bool finite = g.allFinite();
  const double theta = finite ? hetero::extract_phase(g) : std::numeric_limits<double>::quiet_NaN();
  const hetero::IdentityResiduals r = finite ? hetero::identity_residuals(g, theta) : hetero::IdentityResiduals{};
  std::optional<hetero::InterfaceMatrix> accepted;
  try {
    accepted = hetero::validate_interface(g);
  } catch (const NotSelfAdjoint& e) {
    t.meta["reason"] = e.what();
  }
  std::vector<Value> row{accepted.has_value(), theta, r.phase, r.determinant,
                         r.bilinear[0], r.bilinear[1], r.bilinear[2], r.bilinear[3]};
  if (o.energy) {
    if (!accepted) throw NotSelfAdjoint("cannot scatter off a rejected interface matrix");
    const auto s = hetero::scatter_interface(*o.energy, {o.mass_left, o.v_left},
                                             {o.mass_right, o.v_right}, *accepted);
    for (const char* c : {"R_re", "R_im", "T_re", "T_im", "P_reflect", "P_transmit", "evanescent", "flux_residual"})
      t.columns.push_back(c);
    row.insert(row.end(), {s.R.real(), s.R.imag(), s.T.real(), s.T.imag(), s.reflection_probability,
                           s.transmission_probability, s.evanescent, s.flux_residual});
  }
  t.rows.push_back(std::move(row));
  return t;
}

// ------------------------------------------------------------------- dirac

struct DiracOpts {
  Common common;
  std::string eta;
  std::string eta_min = "-inf";
  std::string eta_max = "inf";
  int steps = 41;
  double mass = 1.0;
  double c = 1.0;
};

Table cmd_dirac(const DiracOpts& o) {
  std::vector<ExtendedReal> etas;
  std::vector<double> angles;
  if (!o.eta.empty())
    etas.push_back(ExtendedReal::parse(o.eta));
  else
    etas = angle_grid(ExtendedReal::parse(o.eta_min), ExtendedReal::parse(o.eta_max), o.steps, 1.0, &angles);

  Table t;
  t.command = "dirac";
  t.columns = {"eta", "v_over_c", "mu_over_mc2", "p_threshold_over_mc", "normalizable_when"};
  const double mc2 = o.mass * o.c * o.c;
  for (const auto& e : etas) {
    dirac::EtaWall w;
    w.eta0 = e;
    w.mass = o.mass;
    w.c = o.c;
    const auto d = dirac::dispersion_2p1(w, 0.0);
    const auto win = dirac::normalizability_window(w);
    std::string when = win.always ? "all" : win.never ? "none" : win.direction > 0 ? "p>threshold" : "p<threshold";
    t.rows.push_back({e.value(), d.v / o.c, d.mu / mc2,
                      win.threshold ? *win.threshold / (o.mass * o.c) : std::numeric_limits<double>::quiet_NaN(),
                      when});
  }
  t.meta["mass"] = o.mass;
  t.meta["c"] = o.c;
  return t;
}

void write_output(const Table& t, const Common& c, std::ostream& out) {
  const std::string text = c.format == "json" ? to_json(t) : to_csv(t);
  if (c.output.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file '" + c.output + "'");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing output file '" + c.output + "'");
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + csv_cell(t.columns[i]);
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += '\n';
  }
  return s;
}

std::string to_json(const Table& t) {
  ojson j;
  j["schema"] = 1;
  j["command"] = t.command;
  for (const auto& [k, v] : t.meta.items()) j[k] = v;
  j["columns"] = t.columns;
  ojson rows = ojson::array();
  for (const auto& row : t.rows) {
    ojson r = ojson::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

int thread_limit() {
  if (const char* env = std::getenv("SAE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 1024L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-adjoint extension laboratory: spectra, uncertainty relations and wall models",
               "sae_lab"};
  app.require_subcommand(1);

  SpectrumOpts sp;
  auto* s_sp = app.add_subcommand("spectrum", "1-d box spectrum over a gamma sweep (Figure 1 units)");
  add_common(s_sp, sp.common);
  s_sp->add_option("--mass", sp.mass);
  s_sp->add_option("--length", sp.length);
  s_sp->add_option("--gamma", sp.gamma, "Single gamma (number, inf or -inf)");
  s_sp->add_option("--gamma-min", sp.gamma_min);
  s_sp->add_option("--gamma-max", sp.gamma_max);
  s_sp->add_option("--gamma-steps", sp.steps, "Samples uniform in atan(gamma L/2)");
  s_sp->add_option("--count", sp.count);
  s_sp->add_flag("--raw", sp.raw, "Energies in raw units instead of pi^2/(2mL^2)");

  DotOpts dt;
  auto* s_dt = app.add_subcommand("dot", "Finite-difference quantum dot with a Robin boundary");
  add_common(s_dt, dt.common);
  s_dt->add_option("--shape", dt.shape)->check(CLI::IsMember({"interval", "rect", "disk", "annulus"}));
  s_dt->add_option("--grid", dt.grid_file, "Mask file: 'd h nx [ny [nz]]' then 0/1 characters");
  s_dt->add_option("--resolution", dt.resolution, "Cells per unit length");
  s_dt->add_option("--length", dt.length, "Interval length or rectangle x extent");
  s_dt->add_option("--width", dt.width, "Rectangle y extent");
  s_dt->add_option("--radius", dt.radius, "Disk or outer annulus radius");
  s_dt->add_option("--inner-radius", dt.inner_radius);
  s_dt->add_option("--mass", dt.mass);
  s_dt->add_option("--gamma", dt.gamma, "Uniform gamma (number or inf)");
  s_dt->add_option("--gamma-faces", dt.gamma_faces, "CSV 'face_index,gamma'");
  s_dt->add_option("--gamma-min", dt.gamma_min);
  s_dt->add_option("--gamma-max", dt.gamma_max);
  s_dt->add_option("--gamma-steps", dt.steps);
  s_dt->add_option("--count", dt.count);
  s_dt->add_option("--flow-step", dt.flow_step, "Gamma step of the centred difference");

  ScatterOpts sc;
  auto* s_sc = app.add_subcommand("scatter", "Reflection phase shift off a gamma wall");
  add_common(s_sc, sc.common);
  s_sc->add_option("--gamma", sc.gamma);
  s_sc->add_option("--k-min", sc.k_min);
  s_sc->add_option("--k-max", sc.k_max);
  s_sc->add_option("--k-steps", sc.k_steps);

  WallOpts wl;
  auto* s_wl = app.add_subcommand("wall", "Square-well construction of a gamma wall");
  add_common(s_wl, wl.common);
  s_wl->add_option("--gamma", wl.gamma);
  s_wl->add_option("--epsilon", wl.epsilon, "Largest well width; halved --points - 1 times");
  s_wl->add_option("--points", wl.points);
  s_wl->add_option("--mass", wl.mass);

  HeteroOpts ht;
  auto* s_ht = app.add_subcommand("hetero", "Validate a heterostructure interface matrix");
  add_common(s_ht, ht.common);
  s_ht->add_option("--matrix", ht.matrix_file, "JSON {\"theta\": opt, \"entries\": [[re,im] x4]}")->required();
  s_ht->add_option("--energy", ht.energy, "Also scatter a plane wave at this energy");
  s_ht->add_option("--mass-left", ht.mass_left);
  s_ht->add_option("--mass-right", ht.mass_right);
  s_ht->add_option("--v-left", ht.v_left);
  s_ht->add_option("--v-right", ht.v_right);

  DiracOpts dc;
  auto* s_dc = app.add_subcommand("dirac", "Domain-wall speed, chemical potential and normalizability");
  add_common(s_dc, dc.common);
  s_dc->add_option("--eta", dc.eta);
  s_dc->add_option("--eta-min", dc.eta_min);
  s_dc->add_option("--eta-max", dc.eta_max);
  s_dc->add_option("--eta-steps", dc.steps, "Samples uniform in atan(eta)");
  s_dc->add_option("--mass", dc.mass);
  s_dc->add_option("--c", dc.c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (s_sp->parsed()) write_output(cmd_spectrum(sp), sp.common, out);
    if (s_dt->parsed()) write_output(cmd_dot(dt), dt.common, out);
    if (s_sc->parsed()) write_output(cmd_scatter(sc), sc.common, out);
    if (s_wl->parsed()) write_output(cmd_wall(wl), wl.common, out);
    if (s_ht->parsed()) write_output(cmd_hetero(ht), ht.common, out);
    if (s_dc->parsed()) write_output(cmd_dirac(dc), dc.common, out);
  } catch (const IoError& e) {
    err << "sae_lab: " << e.what() << "\n";
    return kExitIo;
  } catch (const SolverFailure& e) {
    err << "sae_lab: " << e.what() << "\n";
    return kExitSolver;
  } catch (const DegeneracyError& e) {
    err << "sae_lab: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    err << "sae_lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sae_lab: unexpected failure: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"sae_lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sae::cli
