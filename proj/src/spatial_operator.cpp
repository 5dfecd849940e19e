#include "ucp/spatial_operator.hpp"

#include "ucp/error.hpp"

namespace ucp {

DiscreteCoefficients DiscreteCoefficients::sample(const CoefficientSet& cs, const TensorGrid& space) {
  if (space.rank() != cs.dim) throw Error(ErrorKind::Structural, "fields", "grid rank does not match the dimension");
  DiscreteCoefficients dc;
  dc.grid = space;
  dc.dim = cs.dim;
  const std::size_t n = space.size();
  for (int i = 0; i < cs.dim; ++i) {
    dc.a_half[i].assign(n, 0.0);
    dc.b[i].assign(n, 0.0);
  }
  dc.a_cross.assign(n, 0.0);
  dc.c.assign(n, 0.0);
  dc.damping.assign(n, 0.0);
  for (std::size_t f = 0; f < n; ++f) {
    const Point x = spatial_point(space, f, cs.dim);
    for (int i = 0; i < cs.dim; ++i) {
      Point xh = x;
      xh[i] += 0.5 * space.axis(i).step;
      dc.a_half[i][f] = cs.A(xh)[i][i];
    }
    const Matrix A = cs.A(x);
    if (cs.dim == 2) dc.a_cross[f] = A[0][1];
    const Point b = cs.b(x);
    for (int i = 0; i < cs.dim; ++i) dc.b[i][f] = b[i];
    dc.c[f] = cs.c(x);
    dc.damping[f] = cs.a(x);
  }
  return dc;
}

}  // namespace ucp
