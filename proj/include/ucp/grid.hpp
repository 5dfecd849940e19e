#pragma once

#include <cstddef>
#include <vector>

#include "ucp/geometry.hpp"

namespace ucp {

/// Uniform 1-D node sequence lo, lo + step, ..., lo + (count - 1) * step.
struct Axis {
  double lo = 0.0;
  double step = 1.0;
  int count = 0;

  double at(int i) const { return lo + step * i; }
  double hi() const { return at(count - 1); }

  /// Nodes on [-half_width, half_width], both ends included.
  static Axis centered(double half_width, int count);
};

/// Tensor-product grid of up to three uniform axes; axis 0 varies fastest in
/// the flat index.
class TensorGrid {
 public:
  TensorGrid() = default;
  explicit TensorGrid(std::vector<Axis> axes);

  int rank() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[a]; }
  std::size_t size() const { return size_; }
  std::size_t stride(int a) const { return strides_[a]; }

  int index(std::size_t flat, int a) const {
    return static_cast<int>((flat / strides_[a]) % static_cast<std::size_t>(axes_[a].count));
  }
  double coordinate(std::size_t flat, int a) const { return axes_[a].at(index(flat, a)); }

  /// Product of the axis steps.
  double cell_volume() const;

  /// True when the node has both neighbours along every axis.
  bool interior(std::size_t flat) const;

  /// Same axes, same spacing.
  bool same_layout(const TensorGrid& other) const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// The cube [-half_width, half_width]^dim sampled with `nodes_per_axis` nodes per axis.
TensorGrid spatial_grid(int dim, double half_width, int nodes_per_axis);

/// The first `dim` coordinates of a node as a Point.
Point spatial_point(const TensorGrid& grid, std::size_t flat, int dim);

/// Quadrature weights for the open Euclidean ball of radius r (centred at the
/// origin, spanning every axis of the grid). Each node carries its cell
/// [x - h/2, x + h/2] and the weight is the measure of the cell inside the ball:
/// exact in one dimension, sub-sampled on cut cells otherwise.
std::vector<double> ball_weights(const TensorGrid& grid, double r);

/// 1 for nodes interior to the grid with |x| < r (relative slack 1e-12), else 0.
std::vector<char> ball_interior_mask(const TensorGrid& grid, double r);

/// Composite trapezoidal weights for an axis.
std::vector<double> trapezoid_weights(const Axis& axis);

}  // namespace ucp
