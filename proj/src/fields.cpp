#include "ucp/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ucp/error.hpp"

namespace ucp {

FieldPreset parse_field_preset(const std::string& name) {
  if (name == "identity") return FieldPreset::Identity;
  if (name == "diag") return FieldPreset::Diag;
  if (name == "lipschitz-bump") return FieldPreset::LipschitzBump;
  throw Error(ErrorKind::Configuration, "fields", "unknown coefficient preset '" + name + "'");
}

const char* to_string(FieldPreset preset) noexcept {
  switch (preset) {
    case FieldPreset::Identity: return "identity";
    case FieldPreset::Diag: return "diag";
    case FieldPreset::LipschitzBump: return "lipschitz-bump";
  }
  return "unknown";
}

CoefficientSet make_coefficients(const PresetSpec& spec) {
  if (spec.dim < 1 || spec.dim > kMaxDim)
    throw Error(ErrorKind::Unsupported, "fields", "spatial dimension must be 1 or 2");
  if (!(spec.lambda > 0.0 && spec.lambda <= 1.0))
    throw Error(ErrorKind::Domain, "fields", "lambda must lie in (0, 1]");
  if (!(spec.Lambda > 0.0 && spec.Lambda1 > 0.0 && spec.rho0 > 0.0 && spec.T > 0.0))
    throw Error(ErrorKind::Domain, "fields", "Lambda, Lambda1, rho0 and T must be positive");

  CoefficientSet cs;
  cs.dim = spec.dim;
  cs.lambda = spec.lambda;
  cs.Lambda = spec.Lambda;
  cs.Lambda1 = spec.Lambda1;
  cs.rho0 = spec.rho0;
  cs.T = spec.T;

  const int dim = spec.dim;
  switch (spec.preset) {
    case FieldPreset::Identity:
      cs.A = [dim](const Point&) { return identity_matrix(dim); };
      cs.constant = true;
      break;
    case FieldPreset::Diag: {
      if (spec.diag.size() != static_cast<std::size_t>(dim))
        throw Error(ErrorKind::Configuration, "fields", "diag preset needs one entry per dimension");
      Matrix m{};
      for (int i = 0; i < dim; ++i) m[i][i] = spec.diag[i];
      cs.A = [m](const Point&) { return m; };
      cs.constant = true;
      break;
    }
    case FieldPreset::LipschitzBump: {
      const double kappa = spec.kappa;
      const double slope = spec.slope;
      const double rho0 = spec.rho0;
      cs.A = [=](const Point& x) { return scaled(identity_matrix(dim), kappa + slope * norm(x, dim) / rho0); };
      cs.constant = slope == 0.0;
      break;
    }
  }
  const double a = spec.a;
  const double c = spec.c;
  Point b{};
  for (int i = 0; i < dim; ++i) b[i] = spec.b[i];
  cs.a = [a](const Point&) { return a; };
  cs.b = [b](const Point&) { return b; };
  cs.c = [c](const Point&) { return c; };
  cs.description = to_string(spec.preset);
  return cs;
}

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

bool finite_matrix(const Matrix& m) {
  for (const auto& row : m)
    for (double v : row)
      if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

std::vector<Point> sample_ball(int dim, double rho0, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::array<double, kMaxDim> shift{};
  for (auto& s : shift) s = seed == 0 ? 0.0 : unit(rng);

  std::vector<Point> pts;
  pts.reserve(2 * count + 1);
  const unsigned bases[kMaxDim] = {2, 3};
  for (std::uint64_t i = 1; pts.size() < count; ++i) {
    Point p{};
    for (int a = 0; a < dim; ++a) {
      double h = radical_inverse(i, bases[a]) + shift[a];
      h -= std::floor(h);
      p[a] = rho0 * (2.0 * h - 1.0);
    }
    if (norm(p, dim) < rho0) pts.push_back(p);
  }

  const int per_axis = std::max(2, static_cast<int>(std::ceil(std::pow(static_cast<double>(count), 1.0 / dim))));
  const double h = 2.0 * rho0 / (per_axis + 1);
  if (dim == 1) {
    for (int i = 1; i <= per_axis; ++i) pts.push_back({-rho0 + i * h, 0.0});
  } else {
    for (int j = 1; j <= per_axis; ++j)
      for (int i = 1; i <= per_axis; ++i) {
        Point p{-rho0 + i * h, -rho0 + j * h};
        if (norm(p, dim) < rho0) pts.push_back(p);
      }
  }
  return pts;
}

ValidationVerdict validate(const CoefficientSet& cs, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 2) throw Error(ErrorKind::Domain, "fields", "sample_count must be at least 2");
  const int dim = cs.dim;
  const auto pts = sample_ball(dim, cs.rho0, sample_count, seed);

  std::vector<Matrix> As;
  As.reserve(pts.size());
  ValidationVerdict v;
  v.samples = pts.size();
  v.lambda_hat = std::numeric_limits<double>::infinity();
  double worst_min = std::numeric_limits<double>::infinity();
  double worst_max = -std::numeric_limits<double>::infinity();

  for (const auto& x : pts) {
    const Matrix A = cs.A(x);
    const double a = cs.a(x);
    const Point b = cs.b(x);
    const double c = cs.c(x);
    if (!finite_matrix(A) || !std::isfinite(a) || !std::isfinite(c) || !std::isfinite(b[0]) || !std::isfinite(b[1]))
      throw Error(ErrorKind::Data, "fields", "non-finite coefficient value");
    if (asymmetry(A, dim) > 1e-12 * (1.0 + symmetric_norm(A, dim)))
      throw Error(ErrorKind::Structural, "fields", "A is not symmetric at a sample point");
    As.push_back(A);

    const auto e = symmetric_eigen_range(A, dim);
    if (e.min < worst_min) {
      worst_min = e.min;
      v.ellipticity_lower.witness = x;
    }
    if (e.max > worst_max) {
      worst_max = e.max;
      v.ellipticity_upper.witness = x;
    }
    v.lambda_hat = std::min({v.lambda_hat, e.min, 1.0 / e.max});

    const double lower = cs.T * std::abs(a) + cs.T * cs.T / cs.rho0 * norm(b, dim) + cs.T * cs.T * std::abs(c);
    if (lower >= v.Lambda1_hat) {
      v.Lambda1_hat = lower;
      v.lower_order.witness = x;
    }
  }

  // Pass/fail uses the quotient with the rounding of |A(x) - A(x*)| removed;
  // close pairs otherwise inflate it by eps |A| / |x - x*|.
  double Lambda_rounded = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dist = norm(difference(pts[i], pts[j]), dim);
      if (dist <= 0.0) continue;
      const double diff = symmetric_norm(subtract(As[i], As[j]), dim);
      const double q = cs.rho0 * diff / dist;
      const double noise = 8.0 * eps * (symmetric_norm(As[i], dim) + symmetric_norm(As[j], dim));
      Lambda_rounded = std::max(Lambda_rounded, cs.rho0 * std::max(0.0, diff - noise) / dist);
      if (q > v.Lambda_hat) {
        v.Lambda_hat = q;
        v.lipschitz.witness = pts[i];
        v.lipschitz.witness_pair = pts[j];
      }
    }

  constexpr double slack = 1e-12;
  v.ellipticity_lower.measured = worst_min;
  v.ellipticity_lower.allowed = cs.lambda;
  v.ellipticity_lower.pass = worst_min >= cs.lambda * (1.0 - slack);
  v.ellipticity_upper.measured = worst_max;
  v.ellipticity_upper.allowed = 1.0 / cs.lambda;
  v.ellipticity_upper.pass = worst_max <= (1.0 / cs.lambda) * (1.0 + slack);
  v.lipschitz.measured = v.Lambda_hat;
  v.lipschitz.allowed = cs.Lambda;
  v.lipschitz.pass = Lambda_rounded <= cs.Lambda * (1.0 + slack);
  v.lower_order.measured = v.Lambda1_hat;
  v.lower_order.allowed = cs.Lambda1;
  v.lower_order.pass = v.Lambda1_hat <= cs.Lambda1 * (1.0 + slack);
  return v;
}

RescaledCoefficients rescale_to_time(const CoefficientSet& cs, double t0) {
  if (!(std::abs(t0) < cs.T)) throw Error(ErrorKind::Domain, "fields", "rescaling needs |t0| < T");
  TimeRescaling s;
  s.t0 = t0;
  s.shrink = 1.0 - std::abs(t0) / cs.T;
  s.rho_t0 = s.shrink * cs.rho0;
  s.T_t0 = s.shrink * cs.T;
  const double q = cs.T / cs.rho0;
  s.lambda0 = cs.lambda * std::min(q * q, 1.0 / (q * q));
  s.Lambda0 = cs.T * cs.T / cs.rho0 * cs.Lambda;

  const double T_left = cs.T - std::abs(t0);  // T(t0)
  const double rho_t0 = s.rho_t0;
  const double a_scale = T_left;
  const double b_scale = cs.T * T_left / cs.rho0;
  const double c_scale = T_left * T_left;
  const double A_scale = q * q;

  CoefficientSet r;
  r.dim = cs.dim;
  auto A = cs.A;
  auto a = cs.a;
  auto b = cs.b;
  auto c = cs.c;
  const int dim = cs.dim;
  auto map = [rho_t0, dim](const Point& y) {
    Point x{};
    for (int i = 0; i < dim; ++i) x[i] = rho_t0 * y[i];
    return x;
  };
  r.A = [A, map, A_scale](const Point& y) { return scaled(A(map(y)), A_scale); };
  r.a = [a, map, a_scale](const Point& y) { return a_scale * a(map(y)); };
  r.b = [b, map, b_scale](const Point& y) {
    Point v = b(map(y));
    return Point{b_scale * v[0], b_scale * v[1]};
  };
  r.c = [c, map, c_scale](const Point& y) { return c_scale * c(map(y)); };
  r.lambda = s.lambda0;
  r.Lambda = s.Lambda0;
  r.Lambda1 = cs.Lambda1;
  r.rho0 = 1.0;
  r.T = 1.0;
  r.constant = cs.constant;
  r.description = cs.description + " (rescaled)";
  return {std::move(r), s};
}

}  // namespace ucp
