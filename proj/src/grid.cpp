#include "sae/grid.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "sae/errors.hpp"

namespace sae::fd {

namespace {

std::array<int, 3> centred_shape(int dim, std::array<int, 3> n) {
  for (int a = dim; a < 3; ++a) n[a] = 1;
  return n;
}

Vec3 centred_origin(int dim, double h, const std::array<int, 3>& n) {
  Vec3 o{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) o[a] = -0.5 * n[a] * h;
  return o;
}

int cells_along(double extent, double h) {
  const double r = std::round(extent / h);
  if (!(r >= 1.0) || r > 1e8) throw InvalidArgument("grid: extent/h must give at least one cell");
  return static_cast<int>(r);
}

template <class Pred>
DomainGrid from_predicate(int dim, double h, std::array<int, 3> n, Pred inside) {
  n = centred_shape(dim, n);
  const Vec3 o = centred_origin(dim, h, n);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n[0]) * n[1] * n[2], 0);
  std::size_t s = 0;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i, ++s) {
        const Vec3 c{o[0] + (i + 0.5) * h, o[1] + (j + 0.5) * h, o[2] + (k + 0.5) * h};
        mask[s] = inside(c) ? 1 : 0;
      }
  return DomainGrid(dim, h, n, std::move(mask), o);
}

}  // namespace

DomainGrid::DomainGrid(int dim, double h, std::array<int, 3> shape,
                       std::vector<std::uint8_t> mask, Vec3 origin)
    : dim_(dim), h_(h), shape_(shape), origin_(origin), mask_(std::move(mask)) {
  if (dim < 1 || dim > 3) throw InvalidArgument("grid: dimension must be 1, 2 or 3");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("grid: spacing must be > 0");
  for (int a = 0; a < 3; ++a) {
    if (shape_[a] < 1) throw InvalidArgument("grid: shape entries must be >= 1");
    if (a >= dim && shape_[a] != 1) throw InvalidArgument("grid: unused axes must have size 1");
  }
  const std::size_t sites = static_cast<std::size_t>(shape_[0]) * shape_[1] * shape_[2];
  if (mask_.size() != sites) throw InvalidArgument("grid: mask size does not match shape");

  index_.assign(sites, -1);
  std::size_t s = 0;
  for (int k = 0; k < shape_[2]; ++k)
    for (int j = 0; j < shape_[1]; ++j)
      for (int i = 0; i < shape_[0]; ++i, ++s)
        if (mask_[s]) {
          index_[s] = static_cast<int>(cells_.size());
          cells_.push_back({i, j, k});
        }
  if (cells_.empty()) throw InvalidArgument("grid: mask has no inside cells");

  auto lookup = [&](std::array<int, 3> p) {
    for (int a = 0; a < 3; ++a)
      if (p[a] < 0 || p[a] >= shape_[a]) return -1;
    return index_[static_cast<std::size_t>(p[0]) +
                  static_cast<std::size_t>(shape_[0]) * (p[1] + static_cast<std::size_t>(shape_[1]) * p[2])];
  };
  for (int c = 0; c < cell_count(); ++c) {
    for (int a = 0; a < dim_; ++a) {
      for (int o : {-1, 1}) {
        auto p = cells_[static_cast<std::size_t>(c)];
        p[a] += o;
        const int nb = lookup(p);
        if (nb < 0)
          faces_.push_back({c, a, o});
        else if (o == 1)
          links_.push_back({c, nb, a});
      }
    }
  }
}

Vec3 DomainGrid::center(int cell) const {
  const auto& p = cells_[static_cast<std::size_t>(cell)];
  Vec3 x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = origin_[a] + (p[a] + 0.5) * h_;
  return x;
}

Vec3 DomainGrid::face_center(const BoundaryFace& f) const {
  Vec3 x = center(f.cell);
  x[f.axis] += 0.5 * h_ * f.orientation;
  return x;
}

double DomainGrid::cell_volume() const { return std::pow(h_, dim_); }
double DomainGrid::face_area() const { return std::pow(h_, dim_ - 1); }

DomainGrid DomainGrid::translated(const Vec3& offset) const {
  Vec3 o = origin_;
  for (int a = 0; a < dim_; ++a) o[a] += offset[a];
  return DomainGrid(dim_, h_, shape_, mask_, o);
}

DomainGrid DomainGrid::interval(double length, int cells) {
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("interval: length must be > 0");
  if (cells < 1) throw InvalidArgument("interval: need at least one cell");
  const double h = length / cells;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(cells), 1);
  return DomainGrid(1, h, {cells, 1, 1}, std::move(mask), {-0.5 * length, 0.0, 0.0});
}

DomainGrid DomainGrid::rectangle(double lx, double ly, double h) {
  return from_predicate(2, h, {cells_along(lx, h), cells_along(ly, h), 1},
                        [](const Vec3&) { return true; });
}

DomainGrid DomainGrid::disk(double radius, double h) {
  if (!(radius > 0.0)) throw InvalidArgument("disk: radius must be > 0");
  const int n = 2 * static_cast<int>(std::ceil(radius / h - 1e-12));
  return from_predicate(2, h, {n, n, 1}, [radius](const Vec3& c) {
    return c[0] * c[0] + c[1] * c[1] < radius * radius;
  });
}

DomainGrid DomainGrid::annulus(double inner, double outer, double h) {
  if (!(inner > 0.0) || !(outer > inner)) throw InvalidArgument("annulus: need 0 < inner < outer");
  const int n = 2 * static_cast<int>(std::ceil(outer / h - 1e-12));
  return from_predicate(2, h, {n, n, 1}, [inner, outer](const Vec3& c) {
    const double r2 = c[0] * c[0] + c[1] * c[1];
    return r2 >= inner * inner && r2 < outer * outer;
  });
}

DomainGrid DomainGrid::box(double lx, double ly, double lz, double h) {
  return from_predicate(3, h, {cells_along(lx, h), cells_along(ly, h), cells_along(lz, h)},
                        [](const Vec3&) { return true; });
}

DomainGrid DomainGrid::parse(std::istream& in) {
  std::string header;
  while (header.find_first_not_of(" \t\r") == std::string::npos) {
    if (!std::getline(in, header)) throw IoError("grid file: missing header line");
  }
  std::istringstream hs(header);
  int dim = 0;
  double h = 0.0;
  if (!(hs >> dim >> h)) throw IoError("grid file: header must start with 'd h'");
  if (dim < 1 || dim > 3) throw IoError("grid file: d must be 1, 2 or 3");
  if (!(h > 0.0) || !std::isfinite(h)) throw IoError("grid file: h must be > 0");
  std::array<int, 3> n{1, 1, 1};
  for (int a = 0; a < dim; ++a)
    if (!(hs >> n[a]) || n[a] < 1) throw IoError("grid file: bad cell count in header");
  std::string extra;
  if (hs >> extra) throw IoError("grid file: unexpected header token '" + extra + "'");

  const std::size_t sites = static_cast<std::size_t>(n[0]) * n[1] * n[2];
  std::vector<std::uint8_t> mask;
  mask.reserve(sites);
  char ch = 0;
  while (in.get(ch)) {
    if (ch == '0' || ch == '1') {
      if (mask.size() == sites) throw IoError("grid file: more mask characters than cells");
      mask.push_back(ch == '1' ? 1 : 0);
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw IoError(std::string("grid file: unexpected character '") + ch + "'");
    }
  }
  if (mask.size() != sites) throw IoError("grid file: fewer mask characters than cells");
  bool any = false;
  for (auto v : mask) any = any || v;
  if (!any) throw IoError("grid file: mask has no inside cells");
  return DomainGrid(dim, h, n, std::move(mask), centred_origin(dim, h, n));
}

DomainGrid DomainGrid::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file '" + path + "'");
  return parse(in);
}

RobinField RobinField::uniform(const DomainGrid& grid, const ExtendedReal& gamma) {
  RobinField f;
  if (gamma.is_neg_inf())
    throw InvalidArgument("RobinField: gamma = -inf has no finite-difference representation");
  if (gamma.is_finite() && std::isnan(gamma.value())) throw InvalidArgument("RobinField: gamma is NaN");
  f.dirichlet = gamma.is_pos_inf();
  f.gamma.assign(grid.boundary_faces().size(), gamma.value());
  return f;
}

RobinField RobinField::from_csv(const DomainGrid& grid, std::istream& in, double fallback) {
  RobinField f;
  const std::size_t nf = grid.boundary_faces().size();
  f.gamma.assign(nf, fallback);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("gamma CSV line " + std::to_string(line_no) + ": expected 'face_index,gamma'");
    const std::string a = line.substr(0, comma);
    const std::string b = line.substr(comma + 1);
    long idx = 0;
    ExtendedReal g;
    try {
      std::size_t used = 0;
      idx = std::stol(a, &used);
      if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
      g = ExtendedReal::parse(b);
    } catch (const std::exception&) {
      if (line_no == 1) continue;  // header
      throw IoError("gamma CSV line " + std::to_string(line_no) + ": cannot parse '" + line + "'");
    }
    if (idx < 0 || static_cast<std::size_t>(idx) >= nf)
      throw IoError("gamma CSV line " + std::to_string(line_no) + ": face index out of range");
    if (g.is_neg_inf()) throw IoError("gamma CSV line " + std::to_string(line_no) + ": -inf not supported");
    f.gamma[static_cast<std::size_t>(idx)] = g.value();
  }
  return f;
}

RobinField RobinField::load_csv(const DomainGrid& grid, const std::string& path, double fallback) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gamma CSV '" + path + "'");
  return from_csv(grid, in, fallback);
}

bool RobinField::is_dirichlet(std::size_t face) const {
  return dirichlet || std::isinf(gamma[face]);
}

}  // namespace sae::fd
