#include "ucp/grid.hpp"

#include <cmath>

#include "ucp/error.hpp"

namespace ucp {

Axis Axis::centered(double half_width, int count) {
  if (count < 2 || !(half_width > 0.0))
    throw Error(ErrorKind::Structural, "grid", "an axis needs at least two nodes and a positive extent");
  return Axis{-half_width, 2.0 * half_width / (count - 1), count};
}

TensorGrid::TensorGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > 3)
    throw Error(ErrorKind::Structural, "grid", "tensor grids have one to three axes");
  size_ = 1;
  for (const auto& ax : axes_) {
    if (ax.count < 1) throw Error(ErrorKind::Structural, "grid", "empty axis");
    strides_.push_back(size_);
    size_ *= static_cast<std::size_t>(ax.count);
  }
}

double TensorGrid::cell_volume() const {
  double v = 1.0;
  for (const auto& ax : axes_) v *= ax.step;
  return v;
}

bool TensorGrid::interior(std::size_t flat) const {
  for (int a = 0; a < rank(); ++a) {
    const int i = index(flat, a);
    if (i == 0 || i == axes_[a].count - 1) return false;
  }
  return true;
}

bool TensorGrid::same_layout(const TensorGrid& other) const {
  if (rank() != other.rank()) return false;
  for (int a = 0; a < rank(); ++a) {
    const auto& p = axes_[a];
    const auto& q = other.axes_[a];
    if (p.count != q.count || std::abs(p.lo - q.lo) > 1e-12 || std::abs(p.step - q.step) > 1e-12)
      return false;
  }
  return true;
}

TensorGrid spatial_grid(int dim, double half_width, int nodes_per_axis) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorKind::Unsupported, "grid", "spatial dimension must be 1 or 2");
  return TensorGrid(std::vector<Axis>(static_cast<std::size_t>(dim), Axis::centered(half_width, nodes_per_axis)));
}

Point spatial_point(const TensorGrid& grid, std::size_t flat, int dim) {
  Point p{};
  for (int a = 0; a < dim; ++a) p[a] = grid.coordinate(flat, a);
  return p;
}

namespace {

double overlap_1d(double centre, double h, double r) {
  const double lo = std::max(centre - 0.5 * h, -r);
  const double hi = std::min(centre + 0.5 * h, r);
  return std::max(0.0, hi - lo) / h;
}

double cut_cell_fraction(const TensorGrid& grid, std::size_t flat, double r) {
  const int rank = grid.rank();
  double near2 = 0.0;
  double far2 = 0.0;
  std::array<double, 3> centre{};
  for (int a = 0; a < rank; ++a) {
    const double c = grid.coordinate(flat, a);
    const double h = grid.axis(a).step;
    centre[a] = c;
    const double lo = c - 0.5 * h;
    const double hi = c + 0.5 * h;
    const double nearest = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
    const double farthest = std::max(std::abs(lo), std::abs(hi));
    near2 += nearest * nearest;
    far2 += farthest * farthest;
  }
  const double r2 = r * r;
  if (far2 < r2) return 1.0;
  if (near2 >= r2) return 0.0;
  const int m = rank == 2 ? 16 : 8;
  int inside = 0;
  int total = 0;
  std::array<int, 3> sub{};
  const int loops = rank == 2 ? m * m : m * m * m;
  for (int s = 0; s < loops; ++s) {
    int rest = s;
    double d2 = 0.0;
    for (int a = 0; a < rank; ++a) {
      sub[a] = rest % m;
      rest /= m;
      const double h = grid.axis(a).step;
      const double x = centre[a] - 0.5 * h + (sub[a] + 0.5) * h / m;
      d2 += x * x;
    }
    ++total;
    if (d2 < r2) ++inside;
  }
  return static_cast<double>(inside) / total;
}

}  // namespace

std::vector<double> ball_weights(const TensorGrid& grid, double r) {
  std::vector<double> w(grid.size(), 0.0);
  const double vol = grid.cell_volume();
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const double frac = grid.rank() == 1 ? overlap_1d(grid.coordinate(f, 0), grid.axis(0).step, r)
                                         : cut_cell_fraction(grid, f, r);
    w[f] = frac * vol;
  }
  return w;
}

std::vector<char> ball_interior_mask(const TensorGrid& grid, double r) {
  std::vector<char> mask(grid.size(), 0);
  const double r2 = r * r * (1.0 - 1e-12);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    if (!grid.interior(f)) continue;
    double d2 = 0.0;
    for (int a = 0; a < grid.rank(); ++a) d2 += grid.coordinate(f, a) * grid.coordinate(f, a);
    mask[f] = d2 < r2 ? 1 : 0;
  }
  return mask;
}

std::vector<double> trapezoid_weights(const Axis& axis) {
  std::vector<double> w(static_cast<std::size_t>(axis.count), axis.step);
  if (axis.count == 1) {
    w[0] = 0.0;
    return w;
  }
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

}  // namespace ucp
