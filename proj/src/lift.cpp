#include "ucp/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ucp/error.hpp"
#include "ucp/parallel.hpp"
#include "ucp/spatial_operator.hpp"
#include "ucp/spline.hpp"

namespace ucp {

namespace {

constexpr const char* kModule = "lift";
constexpr double kEps = std::numeric_limits<double>::epsilon();

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, kModule, message); }

void require_normalized(const WaveSolution& ws) {
  if (!ws.grid.normalized()) fail(ErrorKind::Precondition, "the lift needs a solution normalised to rho0 = T = 1");
  if (ws.ut.size() != ws.u.size()) fail(ErrorKind::Data, "u_t is missing");
}

void require_y(const std::vector<double>& y) {
  if (y.empty()) fail(ErrorKind::Domain, "empty y grid");
  for (double v : y)
    if (!(v >= -1.0 && v <= 1.0)) fail(ErrorKind::Domain, "y outside [-1, 1]");
}

GaussRule rule_for(const KernelSpec& spec) { return gauss_legendre(nodes_for_degree(2 * spec.k + 3)); }

/// Functionals for phi, d_y phi = i phi', d_y^2 phi = -phi'' at height y.
std::array<SplineFunctional, 3> lift_functionals(const KernelSpec& spec, double y, int intervals, double h,
                                                 const GaussRule& rule) {
  const cd iu(0.0, 1.0);
  return spline_functionals<3>(-1.0, h, intervals, rule, [&](double t) {
    const cd z(t, y);
    return std::array<cd, 3>{phi(spec, z), iu * phi_d1(spec, z), -phi_d2(spec, z)};
  });
}

SplineFunctional phi_functional(const KernelSpec& spec, double y, int intervals, double h, const GaussRule& rule) {
  return spline_functionals<1>(-1.0, h, intervals, rule, [&](double t) {
    return std::array<cd, 1>{phi(spec, cd(t, y))};
  })[0];
}

/// Sum of |w_i y_i| plus the slope terms: scale of the rounding in apply().
double magnitude(const SplineFunctional& f, const double* y, std::size_t stride, double d_lo, double d_hi) {
  double s = std::abs(f.slope_lo * d_lo) + std::abs(f.slope_hi * d_hi);
  for (std::size_t i = 0; i < f.weights.size(); ++i) s += std::abs(f.weights[i]) * std::abs(y[i * stride]);
  return s;
}

std::vector<double> trapezoid_nonuniform(const std::vector<double>& y) {
  std::vector<double> w(y.size(), 0.0);
  if (y.size() == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t j = 0; j + 1 < y.size(); ++j) {
    const double h = y[j + 1] - y[j];
    w[j] += 0.5 * h;
    w[j + 1] += 0.5 * h;
  }
  return w;
}

double two_pow_mu(const KernelSpec& spec) { return std::exp(spec.log_mu + spec.k * std::log(2.0)); }

}  // namespace

std::vector<double> uniform_y_grid(int ny) {
  if (ny < 2) fail(ErrorKind::Structural, "a y grid needs at least two points");
  std::vector<double> y(static_cast<std::size_t>(ny));
  for (int j = 0; j < ny; ++j) y[j] = -1.0 + 2.0 * j / (ny - 1);
  for (int j = 0; j < ny / 2; ++j) y[ny - 1 - j] = -y[j];
  if (ny % 2 == 1) y[ny / 2] = 0.0;
  return y;
}

EllipticLift lift(const WaveSolution& ws, const KernelSpec& spec, const std::vector<double>& y_grid, double tolerance,
                  int jobs) {
  require_normalized(ws);
  if (spec.k < 1) fail(ErrorKind::Domain, "the lift needs k >= 1");
  require_y(y_grid);
  const auto& g = ws.grid;
  const std::size_t nodes = g.nodes();
  const int intervals = g.nt - 1;
  const double h = g.dt;
  const GaussRule rule = rule_for(spec);
  const bool coarse_ok = intervals % 2 == 0 && intervals >= 4;

  EllipticLift el;
  el.k = spec.k;
  el.space = g.space;
  el.dim = g.dim;
  el.y = y_grid;
  el.intervals = intervals;
  el.nodes_per_interval = static_cast<int>(rule.nodes.size());
  el.tolerance = tolerance;
  const std::size_t total = nodes * y_grid.size();
  el.v.assign(total, {});
  el.vy.assign(total, {});
  el.vyy.assign(total, {});
  std::vector<double> rich(y_grid.size(), 0.0);
  std::vector<double> scale(y_grid.size(), 0.0);

  const auto ut_lo = ws.ut_at(0);
  const auto ut_hi = ws.ut_at(g.nt - 1);
  parallel_for(y_grid.size(), jobs, [&](std::size_t iy) {
    const auto fine = lift_functionals(spec, y_grid[iy], intervals, h, rule);
    std::array<SplineFunctional, 3> coarse;
    if (coarse_ok) coarse = lift_functionals(spec, y_grid[iy], intervals / 2, 2.0 * h, rule);
    for (std::size_t f = 0; f < nodes; ++f) {
      const double* u = ws.u.data() + f;
      const std::size_t k = iy * nodes + f;
      el.v[k] = fine[0].apply(u, nodes, ut_lo[f], ut_hi[f]);
      el.vy[k] = fine[1].apply(u, nodes, ut_lo[f], ut_hi[f]);
      el.vyy[k] = fine[2].apply(u, nodes, ut_lo[f], ut_hi[f]);
      scale[iy] = std::max(scale[iy], std::abs(el.v[k]));
      if (coarse_ok) {
        const cd vc = coarse[0].apply(u, 2 * nodes, ut_lo[f], ut_hi[f]);
        rich[iy] = std::max(rich[iy], std::abs(el.v[k] - vc) / 15.0);
      }
    }
  });
  el.richardson = *std::max_element(rich.begin(), rich.end());
  const double vmax = *std::max_element(scale.begin(), scale.end());
  if (el.richardson > tolerance * std::max(1.0, vmax)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "time grid under-resolved for k = %d: Richardson estimate %.3e exceeds %.3e",
                  spec.k, el.richardson, tolerance * std::max(1.0, vmax));
    el.warning = buf;
  }

  for (int a = 0; a < el.dim; ++a) el.vx[a].assign(total, {});
  for (std::size_t iy = 0; iy < y_grid.size(); ++iy) {
    const cd* v = el.v.data() + iy * nodes;
    for (std::size_t f = 0; f < nodes; ++f) {
      if (!g.space.interior(f)) continue;
      for (int a = 0; a < el.dim; ++a) el.vx[a][iy * nodes + f] = centred_difference(g.space, v, f, a);
    }
  }
  return el;
}

ForcingField forcing(const WaveSolution& ws, const CoefficientSet& cs, const KernelSpec& spec,
                     const std::vector<double>& y_grid) {
  if (ws.ut.size() != ws.u.size()) fail(ErrorKind::Data, "forcing needs u_t at t = -1 and t = 1");
  require_normalized(ws);
  require_y(y_grid);
  if (cs.dim != ws.grid.dim) fail(ErrorKind::Structural, "coefficients and solution disagree on the dimension");
  const auto& g = ws.grid;
  const std::size_t nodes = g.nodes();
  ForcingField ff;
  ff.k = spec.k;
  ff.space = g.space;
  ff.dim = g.dim;
  ff.y = y_grid;
  ff.F.assign(nodes * y_grid.size(), {});
  const auto u0 = ws.u_at(0);
  const auto v0 = ws.ut_at(0);
  const auto u1 = ws.u_at(g.nt - 1);
  const auto v1 = ws.ut_at(g.nt - 1);
  std::vector<double> a(nodes);
  for (std::size_t f = 0; f < nodes; ++f) a[f] = cs.a(spatial_point(g.space, f, g.dim));
  for (std::size_t iy = 0; iy < y_grid.size(); ++iy) {
    const cd p1 = phi(spec, cd(1.0, y_grid[iy]));
    const cd d1 = phi_d1(spec, cd(1.0, y_grid[iy]));
    const cd p0 = phi(spec, cd(-1.0, y_grid[iy]));
    const cd d0 = phi_d1(spec, cd(-1.0, y_grid[iy]));
    for (std::size_t f = 0; f < nodes; ++f) {
      const cd top = p1 * (a[f] * u1[f] + v1[f]) - d1 * u1[f];
      const cd bottom = p0 * (a[f] * u0[f] + v0[f]) - d0 * u0[f];
      ff.F[iy * nodes + f] = top - bottom;
    }
  }
  return ff;
}

double elliptic_residual(const EllipticLift& el, const ForcingField& ff, const CoefficientSet& cs) {
  if (el.k != ff.k || el.y != ff.y || !el.space.same_layout(ff.space))
    fail(ErrorKind::Structural, "lift and forcing live on different grids");
  if (cs.dim != el.dim) fail(ErrorKind::Structural, "coefficients and lift disagree on the dimension");
  const DiscreteCoefficients dc = DiscreteCoefficients::sample(cs, el.space);
  const auto mask = ball_interior_mask(el.space, 1.0);
  const auto wy = trapezoid_nonuniform(el.y);
  const std::size_t nodes = el.nodes();
  const cd iu(0.0, 1.0);
  double sum = 0.0;
  for (std::size_t iy = 0; iy < el.y.size(); ++iy) {
    const cd* v = el.v.data() + iy * nodes;
    double s = 0.0;
    for (std::size_t f = 0; f < nodes; ++f) {
      if (!mask[f]) continue;
      const std::size_t k = iy * nodes + f;
      const cd r = el.vyy[k] - iu * dc.damping[f] * el.vy[k] + apply_elliptic(dc, v, f) - ff.F[k];
      s += std::norm(r);
    }
    sum += wy[iy] * s;
  }
  return std::sqrt(sum * el.space.cell_volume());
}

std::vector<double> forcing_norms(const ForcingField& ff) {
  const auto w = ball_weights(ff.space, 1.0);
  const std::size_t nodes = ff.nodes();
  std::vector<double> out(ff.y.size());
  for (std::size_t iy = 0; iy < ff.y.size(); ++iy) {
    double s = 0.0;
    for (std::size_t f = 0; f < nodes; ++f) s += w[f] * std::norm(ff.F[iy * nodes + f]);
    out[iy] = std::sqrt(s);
  }
  return out;
}

double forcing_envelope(const KernelSpec& spec, double H, double y) {
  const int k = spec.k;
  if (k == 1) return H * spec.mu;
  if (y == 0.0) return 0.0;
  return H * k * std::exp(spec.log_mu + (k - 1) * std::log(std::sqrt(5.0) * std::abs(y)));
}

IbpReport ibp_identity_check(const WaveSolution& ws, const KernelSpec& spec, const std::vector<double>& y_values) {
  require_normalized(ws);
  require_y(y_values);
  if (ws.utt.size() != ws.u.size()) fail(ErrorKind::Precondition, "the second identity needs exact u_tt");
  const auto& g = ws.grid;
  const std::size_t nodes = g.nodes();
  const int n = g.nt - 1;
  if (n % 2 != 0 || n < 8) fail(ErrorKind::Structural, "the identity check needs an even number of >= 8 time intervals");
  const double h = g.dt;
  const GaussRule rule = rule_for(spec);
  const cd iu(0.0, 1.0);
  IbpReport rep;
  const std::size_t last = static_cast<std::size_t>(g.nt - 1) * nodes;

  for (double y : y_values) {
    const auto fine = lift_functionals(spec, y, n, h, rule);
    const auto coarse = lift_functionals(spec, y, n / 2, 2.0 * h, rule);
    const SplineFunctional pf = phi_functional(spec, y, n, h, rule);
    const SplineFunctional pc = phi_functional(spec, y, n / 2, 2.0 * h, rule);
    const SplineFunctional pf_est = pf.with_estimated_slopes(h);
    const SplineFunctional pc_est = pc.with_estimated_slopes(2.0 * h);
    const cd p1 = phi(spec, cd(1.0, y));
    const cd p0 = phi(spec, cd(-1.0, y));
    const cd d1 = phi_d1(spec, cd(1.0, y));
    const cd d0 = phi_d1(spec, cd(-1.0, y));

    for (std::size_t f = 0; f < nodes; ++f) {
      const double* u = ws.u.data() + f;
      const double* v = ws.ut.data() + f;
      const double* w = ws.utt.data() + f;
      const double ulo = u[0], uhi = u[last];
      const double vlo = v[0], vhi = v[last];
      const double wlo = w[0], whi = w[last];

      auto term = [&](const SplineFunctional& fi, const SplineFunctional& co, const double* data, double dlo,
                      double dhi, double& budget) {
        const cd a = fi.apply(data, nodes, dlo, dhi);
        const cd b = co.apply(data, 2 * nodes, dlo, dhi);
        budget += std::abs(a - b) / 15.0 + 64.0 * kEps * magnitude(fi, data, nodes, dlo, dhi);
        return a;
      };

      double b1 = 0.0;
      const cd vy = term(fine[1], coarse[1], u, vlo, vhi, b1);
      const cd int_ut = term(pf, pc, v, wlo, whi, b1);
      const cd bracket_u = uhi * p1 - ulo * p0;
      b1 += 64.0 * kEps * (std::abs(uhi * p1) + std::abs(ulo * p0));
      const double e1 = std::abs(-iu * vy - (-int_ut + bracket_u));

      double b2 = 0.0;
      const cd vyy = term(fine[2], coarse[2], u, vlo, vhi, b2);
      const cd int_utt = term(pf_est, pc_est, w, 0.0, 0.0, b2);
      const cd brackets = (vhi * p1 - vlo * p0) - (uhi * d1 - ulo * d0);
      b2 += 64.0 * kEps * (std::abs(vhi * p1) + std::abs(vlo * p0) + std::abs(uhi * d1) + std::abs(ulo * d0));
      const double e2 = std::abs(vyy - (-int_utt + brackets));

      rep.first_error = std::max(rep.first_error, e1);
      rep.first_budget = std::max(rep.first_budget, b1);
      rep.first_ratio = std::max(rep.first_ratio, e1 / b1);
      rep.second_error = std::max(rep.second_error, e2);
      rep.second_budget = std::max(rep.second_budget, b2);
      rep.second_ratio = std::max(rep.second_ratio, e2 / b2);
    }
  }
  return rep;
}

Lemma1Defect lemma1_defect(const WaveSolution& ws, const KernelSpec& spec, double H) {
  if (spec.k < 2) fail(ErrorKind::Domain, "the Lemma 1 envelope needs k >= 2");
  require_normalized(ws);
  if (H <= 0.0) H = h_bound_of(ws);
  const EllipticLift el = lift(ws, spec, {0.0}, std::numeric_limits<double>::infinity(), 1);
  const auto& g = ws.grid;
  const auto u0 = ws.u_at((g.nt - 1) / 2);
  const auto w = ball_weights(g.space, 1.0);
  double s = 0.0;
  for (std::size_t f = 0; f < g.nodes(); ++f) s += w[f] * std::norm(el.v[f] - u0[f]);
  Lemma1Defect out;
  out.k = spec.k;
  out.defect = std::sqrt(s);
  const double k = spec.k;
  out.rate = std::log(k) / std::sqrt(k);
  out.gamma = out.rate;
  out.gamma_flag = out.gamma >= 1.0;
  const double base = std::max(0.0, 1.0 - out.gamma * out.gamma);
  out.envelope = H * (out.gamma + std::pow(k, 0.25) * std::pow(base, 0.5 * k));
  return out;
}

LiftBounds lift_bounds_check(const EllipticLift& el, const WaveSolution& ws, const KernelSpec& spec, double r0,
                             double eps, double H) {
  if (!el.space.same_layout(ws.grid.space)) fail(ErrorKind::Structural, "lift and solution live on different grids");
  if (el.y.size() < 2) fail(ErrorKind::Structural, "the bounds need a y grid");
  const double dy = el.y[1] - el.y[0];
  for (std::size_t j = 1; j < el.y.size(); ++j)
    if (std::abs(el.y[j] - el.y[j - 1] - dy) > 1e-9) fail(ErrorKind::Structural, "the bounds need a uniform y grid");
  if (!(r0 > 0.0 && r0 <= 1.0)) fail(ErrorKind::Domain, "r0 must lie in (0, 1]");
  if (0.5 * r0 < std::max(el.space.axis(0).step, dy))
    fail(ErrorKind::Resolution, "r0 / 2 is below the x or y grid spacing");

  const std::size_t nodes = el.nodes();
  const auto w1 = ball_weights(el.space, 1.0);
  const auto wr = ball_weights(el.space, r0);
  LiftBounds b;
  for (std::size_t iy = 0; iy < el.y.size(); ++iy) {
    double s1 = 0.0;
    double sr = 0.0;
    for (std::size_t f = 0; f < nodes; ++f) {
      const double m = std::norm(el.v[iy * nodes + f]);
      s1 += w1[f] * m;
      sr += wr[f] * m;
    }
    b.sup_full = std::max(b.sup_full, std::sqrt(s1));
    b.sup_small = std::max(b.sup_small, std::sqrt(sr));
  }
  const double c2k = two_pow_mu(spec);
  b.envelope_full = c2k * H;
  b.full_holds = b.sup_full <= b.envelope_full * (1.0 + 1e-12);
  b.envelope_small = c2k * eps;
  b.ratio_small = b.envelope_small > 0.0 ? b.sup_small / b.envelope_small : (b.sup_small > 0.0 ? INFINITY : 0.0);

  std::vector<Axis> axes;
  for (int a = 0; a < el.dim; ++a) axes.push_back(el.space.axis(a));
  axes.push_back(Axis{el.y.front(), dy, static_cast<int>(el.y.size())});
  const TensorGrid xy(axes);
  const auto wb = ball_weights(xy, 0.5 * r0);
  double cac = 0.0;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    if (wb[i] == 0.0) continue;
    double grad = std::norm(el.vy[i]);
    for (int a = 0; a < el.dim; ++a) grad += std::norm(el.vx[a][i]);
    cac += wb[i] * (std::norm(el.v[i]) + r0 * r0 * grad);
  }
  b.caccioppoli = cac;
  const double k = spec.k;
  b.caccioppoli_envelope =
      r0 * std::pow(4.0, k) * k * eps * eps + H * H * k * k * k * std::pow(std::sqrt(5.0) * r0, 2.0 * (k + 2));
  b.caccioppoli_ratio = b.caccioppoli_envelope > 0.0 ? cac / b.caccioppoli_envelope : (cac > 0.0 ? INFINITY : 0.0);
  return b;
}

}  // namespace ucp
