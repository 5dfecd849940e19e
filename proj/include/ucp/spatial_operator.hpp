#pragma once

#include <cstddef>
#include <vector>

#include "ucp/fields.hpp"
#include "ucp/grid.hpp"

namespace ucp {

/// Coefficient samples laid out for the conservative second-order stencil of
/// L(w) = div(A grad w) + b·grad w + c w on a spatial grid. The diagonal of A
/// is sampled at half-nodes, its off-diagonal entry at nodes.
struct DiscreteCoefficients {
  TensorGrid grid;
  int dim = 1;
  std::vector<double> a_half[kMaxDim];  // A_ii(x + h e_i / 2), indexed by the left node
  std::vector<double> a_cross;          // A_12(x)
  std::vector<double> b[kMaxDim];
  std::vector<double> c;
  std::vector<double> damping;  // a(x)

  static DiscreteCoefficients sample(const CoefficientSet& cs, const TensorGrid& space);
};

/// L_h w at an interior node. `w` points at a field laid out on `dc.grid`.
template <class T>
T apply_elliptic(const DiscreteCoefficients& dc, const T* w, std::size_t f) {
  const auto& g = dc.grid;
  T out = dc.c[f] * w[f];
  for (int i = 0; i < dc.dim; ++i) {
    const std::size_t s = g.stride(i);
    const double h = g.axis(i).step;
    const T flux_right = dc.a_half[i][f] * (w[f + s] - w[f]);
    const T flux_left = dc.a_half[i][f - s] * (w[f] - w[f - s]);
    out += (flux_right - flux_left) / (h * h);
    out += dc.b[i][f] * (w[f + s] - w[f - s]) / (2.0 * h);
  }
  if (dc.dim == 2) {
    const std::size_t sx = g.stride(0);
    const std::size_t sy = g.stride(1);
    const double hx = g.axis(0).step;
    const double hy = g.axis(1).step;
    const auto& m = dc.a_cross;
    const T dx_term = m[f + sx] * (w[f + sx + sy] - w[f + sx - sy]) - m[f - sx] * (w[f - sx + sy] - w[f - sx - sy]);
    const T dy_term = m[f + sy] * (w[f + sx + sy] - w[f - sx + sy]) - m[f - sy] * (w[f + sx - sy] - w[f - sx - sy]);
    out += (dx_term + dy_term) / (4.0 * hx * hy);
  }
  return out;
}

/// Centred difference along a spatial axis at an interior node.
template <class T>
T centred_difference(const TensorGrid& g, const T* w, std::size_t f, int axis) {
  const std::size_t s = g.stride(axis);
  return (w[f + s] - w[f - s]) / (2.0 * g.axis(axis).step);
}

}  // namespace ucp
