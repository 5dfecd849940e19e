#include "ucp/carleman.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "ucp/error.hpp"
#include "ucp/spatial_operator.hpp"

namespace ucp {

namespace {

constexpr const char* kModule = "carleman";

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, kModule, message); }

double integrand(double c, double eta) { return std::expm1(-c * eta) / eta; }

double smoothstep(double x) { return std::clamp(x * x * x * (10.0 + x * (-15.0 + 6.0 * x)), 0.0, 1.0); }
double smoothstep_d1(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }
double smoothstep_d2(double x) { return 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x); }

long double log_sum_exp(const std::vector<long double>& logs) {
  if (logs.empty()) return -std::numeric_limits<long double>::infinity();
  const long double m = *std::max_element(logs.begin(), logs.end());
  long double s = 0.0L;
  for (long double l : logs) s += std::exp(l - m);
  return m + std::log(s);
}

}  // namespace

double psi_exponent_series(double c_star, double r) {
  // sum_{j >= 1} (-C r)^j / (j j!)
  const double x = -c_star * r;
  double term = 1.0;
  double sum = 0.0;
  for (int j = 1; j < 200; ++j) {
    term *= x / j;
    const double add = term / j;
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

PsiProfile::PsiProfile(double c_star, double r_max) : c_star_(c_star), r_min_(1e-8), r_max_(r_max) {
  if (!(c_star > 0.0)) fail(ErrorKind::Domain, "C* must be positive");
  log_step_ = std::log(10.0) / 256.0;
  const int count = static_cast<int>(std::ceil(std::log(r_max_ / r_min_) / log_step_)) + 1;
  values_.resize(count);
  slopes_.resize(count);
  double prev_r = r_min_;
  values_[0] = psi_exponent_series(c_star_, r_min_);
  slopes_[0] = std::expm1(-c_star_ * r_min_);
  for (int j = 1; j < count; ++j) {
    const double r = r_min_ * std::exp(j * log_step_);
    if (r <= kEtaSwitch) {
      values_[j] = psi_exponent_series(c_star_, r);
    } else {
      const double lo = std::max(prev_r, kEtaSwitch);
      const double base = prev_r < kEtaSwitch ? psi_exponent_series(c_star_, kEtaSwitch) : values_[j - 1];
      using boost::math::quadrature::gauss_kronrod;
      const double c = c_star_;
      values_[j] = base + gauss_kronrod<double, 15>::integrate([c](double e) { return integrand(c, e); }, lo, r, 0, 1e-15);
    }
    slopes_[j] = std::expm1(-c_star_ * r);
    prev_r = r;
  }
  r_max_ = r_min_ * std::exp((count - 1) * log_step_);
  for (int j = 0; j + 1 < count; j += 7) {
    const double r = r_min_ * std::exp((j + 0.5) * log_step_);
    error_bound_ = std::max(error_bound_, std::abs(log_ratio(r) - exponent_direct(r)));
  }
}

double PsiProfile::exponent_direct(double r) const {
  if (!(r > 0.0)) fail(ErrorKind::Domain, "Psi needs r > 0");
  if (r <= kEtaSwitch) return psi_exponent_series(c_star_, r);
  using boost::math::quadrature::gauss_kronrod;
  const double c = c_star_;
  double sum = psi_exponent_series(c_star_, kEtaSwitch);
  for (double lo = kEtaSwitch; lo < r; lo *= 2.0) {
    const double hi = std::min(r, 2.0 * lo);
    sum += gauss_kronrod<double, 15>::integrate([c](double e) { return integrand(c, e); }, lo, hi, 4, 1e-14);
  }
  return sum;
}

double PsiProfile::log_ratio(double r) const {
  if (!(r > 0.0)) fail(ErrorKind::Domain, "Psi needs r > 0");
  if (r <= r_min_) return psi_exponent_series(c_star_, r);
  if (r >= r_max_) return exponent_direct(r);
  const double pos = std::log(r / r_min_) / log_step_;
  std::size_t j = static_cast<std::size_t>(pos);
  if (j + 1 >= values_.size()) j = values_.size() - 2;
  const double s = pos - static_cast<double>(j);
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * values_[j] + (s3 - 2 * s2 + s) * log_step_ * slopes_[j] +
         (-2 * s3 + 3 * s2) * values_[j + 1] + (s3 - s2) * log_step_ * slopes_[j + 1];
}

double PsiProfile::operator()(double r) const { return r * std::exp(log_ratio(r)); }

CarlemanWeight::CarlemanWeight(double c_star, double lambda, const Matrix& A0, int dim)
    : c_star_(c_star), lambda_(lambda), dim_(dim) {
  if (!(c_star > 1.0)) fail(ErrorKind::Domain, "C* must exceed 1");
  if (!(lambda > 0.0 && lambda <= 1.0)) fail(ErrorKind::Domain, "lambda must lie in (0, 1]");
  if (dim < 1 || dim > kMaxDim) fail(ErrorKind::Unsupported, "spatial dimension must be 1 or 2");
  if (asymmetry(A0, dim) > 1e-12 * (1.0 + symmetric_norm(A0, dim)) || !(symmetric_eigen_range(A0, dim).min > 0.0))
    fail(ErrorKind::Structural, "A(0) must be symmetric positive definite");
  A0inv_ = inverse(A0, dim);
  const double r_max = std::max(64.0, 4.0 / lambda);
  profile_ = std::make_shared<const PsiProfile>(c_star, r_max);
}

double CarlemanWeight::radius(const Point& x, double y) const {
  return std::sqrt(std::max(0.0, quadratic_form(A0inv_, x, dim_) + y * y));
}

double CarlemanWeight::psi0(double r) const {
  if (r <= 0.0) return 0.0;
  return (*profile_)(r / (2.0 * std::sqrt(lambda_)));
}

double CarlemanWeight::psi(const Point& x, double y) const { return psi0(radius(x, y)); }

double CarlemanWeight::probe_radius() const { return 2.0 * std::sqrt(lambda_) / c_star_; }

double anisotropic_radius(const CarlemanWeight& w, const Point& x, double y) { return w.radius(x, y); }
double psi_profile(const CarlemanWeight& w, double r) { return w.profile()(r); }
double weight(const CarlemanWeight& w, const Point& x, double y) { return w.psi(x, y); }

double psi_lower_constant(const PsiProfile& p) {
  double c = 1.0;
  for (int j = 0; j <= 4000; ++j) {
    const double r = std::pow(10.0, -8.0 + 8.0 * j / 4000.0);
    c = std::max(c, r / p(r));
  }
  return c;
}

double weight_comparability(const CarlemanWeight& w, std::size_t samples, std::uint64_t seed) {
  const int d = w.dim() + 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, 3> shift{};
  for (auto& s : shift) s = seed == 0 ? 0.5 : unit(rng);
  const unsigned bases[3] = {2, 3, 5};
  double c2 = 1.0;
  auto visit = [&](const std::array<double, 3>& p) {
    double n2 = 0.0;
    for (int a = 0; a < d; ++a) n2 += p[a] * p[a];
    if (n2 >= 1.0 || n2 == 0.0) return false;
    Point x{};
    for (int a = 0; a < w.dim(); ++a) x[a] = p[a];
    const double psi = w.psi(x, p[w.dim()]);
    const double r = std::sqrt(n2);
    c2 = std::max({c2, psi / r, r / psi});
    return true;
  };
  std::size_t taken = 0;
  for (std::uint64_t i = 1; taken < samples; ++i) {
    std::array<double, 3> p{};
    for (int a = 0; a < d; ++a) {
      double h = 0.0, f = 1.0 / bases[a];
      for (std::uint64_t k = i; k > 0; k /= bases[a], f /= bases[a]) h += f * static_cast<double>(k % bases[a]);
      h += shift[a];
      h -= std::floor(h);
      p[a] = 2.0 * h - 1.0;
    }
    if (visit(p)) ++taken;
  }
  // axis directions at small and large radii
  for (double r : {1e-6, 1e-3, 0.5, 0.999})
    for (int a = 0; a < d; ++a) {
      std::array<double, 3> p{};
      p[a] = r;
      visit(p);
    }
  return c2;
}

double CutoffSpec::h(double s) const {
  if (s <= psi_r1) return 0.0;
  if (s < psi_2r1) return smoothstep((s - psi_r1) / (psi_2r1 - psi_r1));
  if (s <= psi_R) return 1.0;
  if (s < psi_3R2) return smoothstep((psi_3R2 - s) / (psi_3R2 - psi_R));
  return 0.0;
}

double CutoffSpec::h_d1(double s) const {
  if (s > psi_r1 && s < psi_2r1) {
    const double w = psi_2r1 - psi_r1;
    return smoothstep_d1((s - psi_r1) / w) / w;
  }
  if (s > psi_R && s < psi_3R2) {
    const double w = psi_3R2 - psi_R;
    return -smoothstep_d1((psi_3R2 - s) / w) / w;
  }
  return 0.0;
}

double CutoffSpec::h_d2(double s) const {
  if (s > psi_r1 && s < psi_2r1) {
    const double w = psi_2r1 - psi_r1;
    return smoothstep_d2((s - psi_r1) / w) / (w * w);
  }
  if (s > psi_R && s < psi_3R2) {
    const double w = psi_3R2 - psi_R;
    return smoothstep_d2((psi_3R2 - s) / w) / (w * w);
  }
  return 0.0;
}

double CutoffSpec::inner_ramp_bound(int samples) const {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = psi_r1 + (psi_2r1 - psi_r1) * i / (samples - 1.0);
    m = std::max(m, r1 * std::abs(h_d1(s)) + r1 * r1 * std::abs(h_d2(s)));
  }
  return m;
}

double CutoffSpec::outer_ramp_bound(int samples) const {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = psi_R + (psi_3R2 - psi_R) * i / (samples - 1.0);
    m = std::max(m, std::abs(h_d1(s)) + std::abs(h_d2(s)));
  }
  return m;
}

CutoffSpec cutoff_build(const CarlemanWeight& w, double r0) {
  if (!(r0 > 0.0)) fail(ErrorKind::Domain, "r0 must be positive");
  CutoffSpec c;
  c.r1 = std::sqrt(w.lambda()) * r0 / 8.0;
  c.R = std::sqrt(w.lambda()) / (2.0 * w.c_star());
  if (c.r1 > 0.5 * c.R) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "cutoff needs r1 <= R/2 (r1 = sqrt(lambda) r0/8 = %.6g, R = sqrt(lambda)/(2C*) = %.6g)",
                  c.r1, c.R);
    fail(ErrorKind::Configuration, buf);
  }
  c.psi_r1 = w.psi0(c.r1);
  c.psi_2r1 = w.psi0(2.0 * c.r1);
  c.psi_R = w.psi0(c.R);
  c.psi_3R2 = w.psi0(1.5 * c.R);
  c.psi_2R = w.psi0(2.0 * c.R);
  return c;
}

Point XYField::x_at(std::size_t i) const { return spatial_point(grid, i, dim); }

TensorGrid xy_grid(int dim, double half_width, int n) {
  if (dim < 1 || dim > kMaxDim) fail(ErrorKind::Unsupported, "spatial dimension must be 1 or 2");
  return TensorGrid(std::vector<Axis>(static_cast<std::size_t>(dim + 1), Axis::centered(half_width, n)));
}

std::vector<double> sample_cutoff(const CutoffSpec& c, const CarlemanWeight& w, const TensorGrid& xy, int dim) {
  std::vector<double> z(xy.size());
  for (std::size_t i = 0; i < xy.size(); ++i) z[i] = c.h(w.psi(spatial_point(xy, i, dim), xy.coordinate(i, dim)));
  return z;
}

XYField operator_apply(const CoefficientSet& cs, const XYField& w) {
  const int dim = w.dim;
  if (cs.dim != dim || w.grid.rank() != dim + 1) fail(ErrorKind::Structural, "field and coefficients disagree on the dimension");
  for (int a = 0; a <= dim; ++a)
    if (w.grid.axis(a).count < 5) fail(ErrorKind::Structural, "operator_apply needs at least 5 nodes per axis");
  std::vector<Axis> axes;
  for (int a = 0; a < dim; ++a) axes.push_back(w.grid.axis(a));
  const TensorGrid space(axes);
  const DiscreteCoefficients dc = DiscreteCoefficients::sample(cs, space);
  const std::size_t nodes = space.size();
  const std::size_t sy = w.grid.stride(dim);
  const double dy = w.grid.axis(dim).step;
  const cd iu(0.0, 1.0);
  XYField out{w.grid, dim, std::vector<cd>(w.values.size())};
  const cd* v = w.values.data();
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    if (!w.grid.interior(i)) continue;
    const std::size_t f = i % nodes;
    const std::size_t j = i / nodes;
    const cd wyy = (v[i + sy] - 2.0 * v[i] + v[i - sy]) / (dy * dy);
    const cd wy = (v[i + sy] - v[i - sy]) / (2.0 * dy);
    out.values[i] = wyy + apply_elliptic(dc, v + j * nodes, f) - iu * dc.damping[f] * wy;
  }
  return out;
}

const char* to_string(BumpFamily f) noexcept {
  switch (f) {
    case BumpFamily::Radial: return "radial";
    case BumpFamily::Dipole: return "dipole";
    case BumpFamily::Vortex: return "vortex";
  }
  return "unknown";
}

BumpFamily parse_bump_family(const std::string& name) {
  if (name == "radial") return BumpFamily::Radial;
  if (name == "dipole") return BumpFamily::Dipole;
  if (name == "vortex") return BumpFamily::Vortex;
  fail(ErrorKind::Configuration, "unknown bump family '" + name + "'");
}

XYField bump(const CarlemanWeight& w, const TensorGrid& xy, BumpFamily family, double inner, double outer) {
  if (!(0.0 < inner && inner < outer && outer <= 1.0)) fail(ErrorKind::Configuration, "bump annulus must satisfy 0 < inner < outer <= 1");
  const int dim = w.dim();
  if (xy.rank() != dim + 1) fail(ErrorKind::Structural, "grid rank must be dim + 1");
  const double P = w.probe_radius();
  const double a = inner * P;
  const double b = outer * P;
  XYField out{xy, dim, std::vector<cd>(xy.size())};
  for (std::size_t i = 0; i < xy.size(); ++i) {
    const Point x = spatial_point(xy, i, dim);
    const double y = xy.coordinate(i, dim);
    const double rho = w.radius(x, y);
    if (rho <= a || rho >= b) continue;
    const double s = 2.0 * (rho - a) / (b - a) - 1.0;
    const double q = 1.0 - s * s;
    const double base = q * q * q;
    switch (family) {
      case BumpFamily::Radial: out.values[i] = base; break;
      case BumpFamily::Dipole: out.values[i] = base * y / rho; break;
      case BumpFamily::Vortex: out.values[i] = base * cd(x[0], y) / rho; break;
    }
  }
  return out;
}

CarlemanProbe carleman_ratio(const CoefficientSet& cs, const CarlemanWeight& w, const XYField& test_w, double tau) {
  if (!(tau > 0.0)) fail(ErrorKind::Domain, "tau must be positive");
  if (test_w.dim != w.dim()) fail(ErrorKind::Structural, "field and weight disagree on the dimension");
  const auto& g = test_w.grid;
  const int d = test_w.dim + 1;
  double guard = 0.0;
  for (int a = 0; a < d; ++a) guard = std::max(guard, g.axis(a).step);
  const double P = w.probe_radius();
  std::vector<double> psi(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = test_w.x_at(i);
    const double y = test_w.y_at(i);
    const double rho = w.radius(x, y);
    double e2 = y * y;
    for (int a = 0; a < test_w.dim; ++a) e2 += x[a] * x[a];
    const bool outside = rho >= P * (1.0 - 1e-12) || std::sqrt(e2) <= guard || !g.interior(i);
    if (outside && test_w.values[i] != cd(0.0, 0.0))
      fail(ErrorKind::Precondition, "test function must vanish near the origin, on the grid boundary and outside the probe ball");
    psi[i] = w.psi(x, y);
  }
  const XYField Pw = operator_apply(cs, test_w);
  const long double lt = std::log(static_cast<long double>(tau));
  const long double cell = std::log(static_cast<long double>(g.cell_volume()));
  std::vector<long double> lhs;
  std::vector<long double> rhs;
  const cd* v = test_w.values.data();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g.interior(i) || psi[i] <= 0.0) continue;
    const long double lp = std::log(static_cast<long double>(psi[i]));
    double grad2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const std::size_t s = g.stride(a);
      grad2 += std::norm((v[i + s] - v[i - s]) / (2.0 * g.axis(a).step));
    }
    const double w2 = std::norm(v[i]);
    const double p2 = std::norm(Pw.values[i]);
    if (grad2 > 0.0) lhs.push_back(cell + lt + (1.0L - 2.0L * tau) * lp + std::log(static_cast<long double>(grad2)));
    if (w2 > 0.0) lhs.push_back(cell + 3.0L * lt + (-1.0L - 2.0L * tau) * lp + std::log(static_cast<long double>(w2)));
    if (p2 > 0.0) rhs.push_back(cell + (2.0L - 2.0L * tau) * lp + std::log(static_cast<long double>(p2)));
  }
  CarlemanProbe out;
  out.tau = tau;
  const long double L = log_sum_exp(lhs);
  const long double R = log_sum_exp(rhs);
  out.log_lhs = static_cast<double>(L);
  out.log_rhs = static_cast<double>(R);
  out.ratio = static_cast<double>(std::exp(L - R));
  return out;
}

}  // namespace ucp
