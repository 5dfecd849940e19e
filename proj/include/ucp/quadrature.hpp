#pragma once

#include <vector>

namespace ucp {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, nodes ascending. Newton iteration on the three-term recurrence.
GaussRule gauss_legendre(int n);

/// Node count that integrates polynomials of the given degree exactly, with
/// two spare nodes: ceil((degree + 1) / 2) + 2.
inline int nodes_for_degree(int degree) { return (degree + 2) / 2 + 2; }

/// Integral of f over [lo, hi] with the rule mapped affinely.
template <class F>
auto integrate(const GaussRule& rule, double lo, double hi, F&& f) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  decltype(f(mid)) acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

}  // namespace ucp
