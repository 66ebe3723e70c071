#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sae/extended_real.hpp"

namespace sae::fd {

using Vec3 = std::array<double, 3>;

// Face between an inside cell and the outside, normal along +-axis.
struct BoundaryFace {
  int cell = 0;
  int axis = 0;
  int orientation = 1;  // +1 or -1, sign of the outward normal
};

// Pair of inside cells adjacent along `axis`; `upper` sits at +h.
struct InteriorLink {
  int lower = 0;
  int upper = 0;
  int axis = 0;
};

// Uniform cell-centred grid in d = 1, 2, 3 with an occupancy mask. Cells
// are numbered in lattice order (x fastest). Boundary faces are listed per
// cell, then axis, then orientation -1 before +1.
class DomainGrid {
 public:
  // origin is the lower corner of lattice cell (0,0,0); unused axes of
  // `shape` must be 1.
  DomainGrid(int dim, double h, std::array<int, 3> shape, std::vector<std::uint8_t> mask,
             Vec3 origin);

  int dim() const { return dim_; }
  double h() const { return h_; }
  const std::array<int, 3>& shape() const { return shape_; }
  const Vec3& origin() const { return origin_; }

  int cell_count() const { return static_cast<int>(cells_.size()); }
  const std::vector<std::array<int, 3>>& cells() const { return cells_; }
  const std::vector<BoundaryFace>& boundary_faces() const { return faces_; }
  const std::vector<InteriorLink>& links() const { return links_; }

  Vec3 center(int cell) const;
  Vec3 face_center(const BoundaryFace& f) const;
  // h^d
  double cell_volume() const;
  // h^(d-1)
  double face_area() const;

  // Same mask, every coordinate shifted by `offset`.
  DomainGrid translated(const Vec3& offset) const;

  // [-L/2, L/2] split into n cells.
  static DomainGrid interval(double length, int cells);
  // Centred lx x ly rectangle with nx = round(lx/h), ny = round(ly/h).
  static DomainGrid rectangle(double lx, double ly, double h);
  // Cells whose centres satisfy |x| < radius, centred at the origin.
  static DomainGrid disk(double radius, double h);
  // inner <= |x| < outer; two disjoint boundary components.
  static DomainGrid annulus(double inner, double outer, double h);
  static DomainGrid box(double lx, double ly, double lz, double h);

  // Text format: "d h nx [ny [nz]]" then nx*ny*nz characters 0/1 with x
  // fastest; whitespace between characters is ignored. The lattice is
  // centred at the origin.
  static DomainGrid parse(std::istream& in);
  static DomainGrid load(const std::string& path);

 private:
  int dim_;
  double h_;
  std::array<int, 3> shape_;
  Vec3 origin_;
  std::vector<std::uint8_t> mask_;
  std::vector<int> index_;  // lattice site -> cell number or -1
  std::vector<std::array<int, 3>> cells_;
  std::vector<BoundaryFace> faces_;
  std::vector<InteriorLink> links_;
};

// One gamma per boundary face (same order as DomainGrid::boundary_faces).
// +inf entries are Dirichlet faces. `dirichlet` forces every face to +inf.
struct RobinField {
  std::vector<double> gamma;
  bool dirichlet = false;

  static RobinField uniform(const DomainGrid& grid, const ExtendedReal& gamma);
  // Lines "face_index,gamma" with an optional header line; faces not listed
  // keep `fallback`.
  static RobinField from_csv(const DomainGrid& grid, std::istream& in, double fallback = 0.0);
  static RobinField load_csv(const DomainGrid& grid, const std::string& path,
                             double fallback = 0.0);

  bool is_dirichlet(std::size_t face) const;
};

}  // namespace sae::fd
