#include "ucp/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "ucp/error.hpp"
#include "ucp/grid.hpp"
#include "ucp/parallel.hpp"

namespace ucp {

namespace {

constexpr const char* kModule = "stability";
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, kModule, message); }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

// log((H + e eps) / eps), > 1 whenever H > 0
double log_data_ratio(double eps, double H) { return std::log((H + std::numbers::e * eps) / eps); }

}  // namespace

double theta0(double rho0, double C, double rho, double r0) {
  const double num = std::log(rho0 / (C * rho));
  const double den = std::log(rho0 / r0);
  if (!(num > 0.0)) fail(ErrorKind::Domain, "theta0 needs C rho < rho0");
  if (!(den > 0.0)) fail(ErrorKind::Domain, "theta0 needs r0 < rho0");
  return num / den;
}

double theta_prop(double C, double s, double r0) {
  const double num = std::log(1.0 / (C * s));
  const double den = std::log(1.0 / r0);
  if (!(num > 0.0)) fail(ErrorKind::Domain, "theta needs C s < 1");
  if (!(den > 0.0)) fail(ErrorKind::Domain, "theta needs r0 < 1");
  return num / den;
}

double theta_internal(double C3, double s, double r1) {
  const double num = std::log(1.0 / (C3 * s));
  const double den = 2.0 * std::log(1.0 / r1);
  if (!(num > 0.0)) fail(ErrorKind::Domain, "internal theta needs C3 s < 1");
  if (!(den > 0.0)) fail(ErrorKind::Domain, "internal theta needs r1 < 1");
  return num / den;
}

double c1_of(double lambda) {
  if (!(lambda > 0.0)) fail(ErrorKind::Domain, "lambda must be positive");
  return 2.0 * std::sqrt(5.0) / std::sqrt(lambda);
}

double log_sigma_k(int k, double eps, double H, double r1, double lambda) {
  if (k < 1) fail(ErrorKind::Domain, "sigma_k needs k >= 1");
  const double lk = std::log(static_cast<double>(k));
  const double first = k * std::log(4.0) + lk + 2.0 * safe_log(eps);
  const double second = 2.0 * safe_log(H) + 3.0 * lk + (2.0 * k + 2.0) * std::log(c1_of(lambda) * r1);
  return log_add(first, second);
}

double sigma_k(int k, double eps, double H, double r1, double lambda) {
  return std::exp(log_sigma_k(k, eps, H, r1, lambda));
}

double log_omega(int k, double tau, double eps, double H, double r1, double s_tilde, double R,
                 const CarlemanWeight& w, double C2) {
  if (!(r1 > 0.0 && r1 <= s_tilde && s_tilde <= R))
    fail(ErrorKind::Domain, "omega needs 0 < r1 <= s~ <= R");
  if (C2 <= 0.0) C2 = weight_comparability(w);
  const double p = 1.0 + 2.0 * tau;
  const double ls = std::log(w.psi0(s_tilde));
  const double first = log_sigma_k(k, eps, H, r1, w.lambda()) + p * (ls - std::log(w.psi0(r1)));
  const double second = 2.0 * safe_log(H) + 3.0 * std::log(static_cast<double>(k)) + k * std::log(5.0) +
                        2.0 * k * std::log(C2) + p * (ls - std::log(w.psi0(R)));
  return log_add(first, second);
}

double omega(int k, double tau, double eps, double H, double r1, double s_tilde, double R, const CarlemanWeight& w,
             double C2) {
  return std::exp(log_omega(k, tau, eps, H, r1, s_tilde, R, w, C2));
}

KChoice choose_k(double eps1, double r1, int k0) {
  if (!(eps1 > 0.0 && eps1 < 1.0)) fail(ErrorKind::Domain, "choose_k needs 0 < eps1 < 1");
  if (!(r1 > 0.0 && r1 < 1.0)) fail(ErrorKind::Domain, "choose_k needs 0 < r1 < 1");
  const double q = std::log(eps1) / (2.0 * std::log(r1));
  if (q > 9e15) fail(ErrorKind::Domain, "k* exceeds the integer range");
  KChoice c;
  c.k_star = static_cast<std::int64_t>(std::ceil(q));
  c.main_branch = c.k_star >= k0;
  return c;
}

double log_bound_rhs(double eps, double H, double rho0, double rho, double r0, double C, double alpha) {
  if (eps < 0.0 || H < 0.0) fail(ErrorKind::Domain, "eps and H must be non-negative");
  const double th = theta0(rho0, C, rho, r0);
  if (eps == 0.0) return kNegInf;
  const double denom = th * log_data_ratio(eps, H);
  if (!(denom > 0.0)) fail(ErrorKind::Domain, "theta log((H + e eps) / eps) must be positive");
  return std::log(C) + C * std::log(rho0 / rho) + 2.0 * std::log(H + std::numbers::e * eps) - alpha * std::log(denom);
}

double bound_rhs(double eps, double H, double rho0, double rho, double r0, double C, double alpha) {
  return std::exp(log_bound_rhs(eps, H, rho0, rho, r0, C, alpha));
}

double prop_rhs(double eps, double H, double s, double r0, double C, double alpha) {
  if (eps < 0.0 || H < 0.0) fail(ErrorKind::Domain, "eps and H must be non-negative");
  const double th = theta_prop(C, s, r0);
  if (eps == 0.0) return 0.0;
  const double denom = th * log_data_ratio(eps, H);
  if (!(denom > 0.0)) fail(ErrorKind::Domain, "theta log((H + e eps) / eps) must be positive");
  const double h1 = H + std::numbers::e * eps;
  return C * std::pow(s, -C) * h1 * h1 / std::pow(denom, alpha);
}

const char* to_string(SolutionFamily f) noexcept {
  switch (f) {
    case SolutionFamily::StandingWave: return "standing-wave";
    case SolutionFamily::Zero: return "zero";
  }
  return "unknown";
}

SolutionFamily parse_solution_family(const std::string& name) {
  if (name == "standing-wave") return SolutionFamily::StandingWave;
  if (name == "zero") return SolutionFamily::Zero;
  fail(ErrorKind::Configuration, "unknown solution family '" + name + "'");
}

SolutionSource parse_solution_source(const std::string& name) {
  if (name == "analytic") return SolutionSource::Analytic;
  if (name == "fd") return SolutionSource::FiniteDifference;
  fail(ErrorKind::Configuration, "unknown solution source '" + name + "'");
}

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::Main: return "main";
    case Regime::Fallback: return "fallback";
    case Regime::SucpLimit: return "sucp-limit";
  }
  return "unknown";
}

const char* to_string(SucpVerdict v) noexcept {
  switch (v) {
    case SucpVerdict::Consistent: return "consistent with SUCP";
    case SucpVerdict::Vacuous: return "vacuously consistent";
    case SucpVerdict::NotFlat: return "not flat";
    case SucpVerdict::Inconsistent: return "inconsistent";
  }
  return "unknown";
}

WaveSolution rescale_solution(const WaveSolution& ws, const TimeRescaling& scale) {
  const auto& g = ws.grid;
  WaveSolution out;
  out.grid = SpaceTimeGrid::make(g.dim, 1.0, 1.0, g.nx(), g.nt);
  out.source = ws.source;
  const std::size_t nodes = out.grid.nodes();
  out.u.assign(nodes * g.nt, 0.0);
  out.ut.assign(nodes * g.nt, 0.0);
  parallel_for(static_cast<std::size_t>(g.nt), 0, [&](std::size_t it) {
    const double t = std::clamp(out.grid.time(static_cast<int>(it)) * scale.T_t0 + scale.t0, -g.T, g.T);
    for (std::size_t f = 0; f < nodes; ++f) {
      const Point y = spatial_point(out.grid.space, f, g.dim);
      Point x{};
      for (int a = 0; a < g.dim; ++a) x[a] = scale.rho_t0 * y[a];
      const auto pv = interpolate(ws, x, t);
      out.u[it * nodes + f] = pv.u;
      out.ut[it * nodes + f] = scale.T_t0 * pv.ut;
    }
  });
  return out;
}

WaveSolution generate_solution(const CoefficientSet& cs, const SolutionSpec& spec) {
  const SpaceTimeGrid grid = spec.nt > 0 ? SpaceTimeGrid::make(cs.dim, cs.rho0, cs.T, spec.nx, spec.nt)
                                         : SpaceTimeGrid::with_cfl(cs.dim, cs.rho0, cs.T, spec.nx, cs.lambda, spec.cfl);
  if (spec.family == SolutionFamily::Zero) {
    SolutionFunction zero;
    zero.u = [](const Point&, double) { return 0.0; };
    zero.ut = zero.u;
    zero.utt = zero.u;
    return sample_solution(cs, grid, zero);
  }
  if (spec.source == SolutionSource::Analytic) return standing_wave(cs, spec.mode, grid, spec.amplitude);

  const double xi = spec.mode * std::numbers::pi / cs.rho0;
  const double rho0 = cs.rho0;
  const int dim = cs.dim;
  const double amp = spec.amplitude;
  auto u0 = sample_on(grid.space, dim, [=](const Point& x) {
    double v = amp * std::sin(xi * x[0]);
    if (dim == 2) {
      const double q = std::max(0.0, 1.0 - dot(x, x, dim) / (rho0 * rho0));
      v *= q * q;
    }
    return v;
  });
  const std::vector<double> v0(u0.size(), 0.0);
  return solve_fd(cs, u0, v0, grid, spec.cfl);
}

namespace {

double ball_integral(const TensorGrid& grid, std::span<const double> values, double r) {
  const auto w = ball_weights(grid, r);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * values[i] * values[i];
  return s;
}

// u(x, t) squared over B_r on the cube [-half, half]^n with `count` nodes per axis, through interpolate().
double interpolated_ball_integral(const WaveSolution& ws, double half, int count, double scale, double t, double r) {
  const TensorGrid grid = spatial_grid(ws.grid.dim, half, count);
  std::vector<double> values(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) {
    Point x = spatial_point(grid, f, ws.grid.dim);
    for (int a = 0; a < ws.grid.dim; ++a) x[a] *= scale;
    values[f] = interpolate(ws, x, t).u;
  }
  return ball_integral(grid, values, r);
}

void pipeline(const ExperimentSpec& spec, StabilityReport& r) {
  const auto& k = spec.constants;
  r.failed_stage = "coefficients";
  const CoefficientSet cs = make_coefficients(spec.coefficients);
  if (!(spec.constants.alpha > 0.0 && spec.constants.alpha < 0.5)) fail(ErrorKind::Domain, "alpha must lie in (0, 1/2)");
  if (!(spec.r0 > 0.0 && spec.r0 <= spec.rho && spec.rho <= k.s0 * cs.rho0))
    fail(ErrorKind::Domain, "the radii must satisfy 0 < r0 <= rho <= s0 rho0");
  const int n = cs.dim;

  r.failed_stage = "rescale";
  const auto rescaled = rescale_to_time(cs, spec.t0);
  const auto& sc = rescaled.scale;
  r.shrink = sc.shrink;
  r.lambda0 = sc.lambda0;
  r.Lambda0 = sc.Lambda0;
  r.s = spec.rho / cs.rho0;

  r.failed_stage = "solve";
  const WaveSolution ws = generate_solution(cs, spec.solution);
  r.residual = ws.residual_norm;

  r.failed_stage = "data";
  r.eps = epsilon_of(ws, spec.r0);
  r.H_measured = h_bound_of(ws);
  if (spec.H_declared > 0.0) {
    if (spec.H_declared < r.H_measured * (1.0 - 1e-12))
      fail(ErrorKind::Domain, "declared H is below the measured a priori bound");
    r.H = spec.H_declared;
  } else {
    r.H = r.H_measured;
  }
  r.eps_rescaled_bound = r.eps * std::pow(sc.shrink, -0.5 * n);
  r.H_rescaled_bound = r.H * std::pow(sc.shrink, -0.5 * n);

  r.failed_stage = "lhs";
  const double rn = std::pow(cs.rho0, -n);
  const double radius = sc.shrink * spec.rho;
  const auto slice = time_slice(ws, spec.t0);
  r.lhs = rn * ball_integral(ws.grid.space, slice, radius);
  const int coarse = (ws.grid.nx() + 1) / 2;
  const double lhs_coarse = rn * interpolated_ball_integral(ws, cs.rho0, coarse, 1.0, spec.t0, radius);

  r.failed_stage = "rescaled solution";
  const WaveSolution U = rescale_solution(ws, sc);
  r.residual_rescaled = discrete_residual(rescaled.coefficients, U.grid, U.u);
  const int mid = (U.grid.nt - 1) / 2;
  const double shn = std::pow(sc.shrink, n);
  r.prop_lhs = ball_integral(U.grid.space, U.u_at(mid), r.s);
  r.lhs_rescaled = shn * r.prop_lhs;
  const double res_coarse = shn * interpolated_ball_integral(ws, 1.0, coarse, sc.rho_t0, spec.t0, r.s);
  r.lhs_tolerance = std::abs(r.lhs - lhs_coarse) + std::abs(r.lhs_rescaled - res_coarse) +
                    64.0 * std::numeric_limits<double>::epsilon() * std::abs(r.lhs);
  r.lhs_consistent = std::abs(r.lhs - r.lhs_rescaled) <= 2.0 * r.lhs_tolerance;
  r.internal_lhs = ball_integral(U.grid.space, U.u_at(mid), 0.5 * sc.lambda0 * r.s);
  r.eps_rescaled = epsilon_of(U, spec.r0 / cs.rho0);
  r.H_rescaled = h_bound_of(U);

  r.failed_stage = "parameters";
  const double r0p = spec.r0 / cs.rho0;
  r.r1 = std::sqrt(sc.lambda0) * r0p / 8.0;
  r.R = std::sqrt(sc.lambda0) / (2.0 * k.C_star);
  r.s_tilde = std::sqrt(sc.lambda0) * r.s;
  r.C1 = c1_of(sc.lambda0);
  r.theta0 = theta0(cs.rho0, k.C, spec.rho, spec.r0);
  r.theta_prop = theta_prop(k.C, r.s, r0p);
  r.theta_internal = theta_internal(k.C3, r.s, r.r1);

  // eps and H in the rescaled variables; a declared H is carried over in proportion
  const double eps_p = r.eps_rescaled;
  const double H_p = r.H_measured > 0.0 ? r.H_rescaled * (r.H / r.H_measured) : r.H_rescaled_bound;
  const double e = std::numbers::e;
  r.H1 = H_p + e * eps_p;
  if (r.eps == 0.0 || eps_p == 0.0) {
    r.eps1 = 0.0;
    r.regime = Regime::SucpLimit;
    r.k_star = 0;
  } else {
    r.eps1 = eps_p / r.H1;
    const auto kc = choose_k(r.eps1, r.r1, k.k0);
    r.k_star = kc.k_star;
    r.regime = kc.main_branch ? Regime::Main : Regime::Fallback;
  }
  if (r.eps1 > 0.0) {
    r.main_branch_rhs = 2.0 * k.C3 * r.H1 * r.H1 *
                        (std::pow(r.eps1, 2.0 * r.theta_internal) +
                         std::pow(2.0 * std::log(1.0 / r.r1) / std::log(1.0 / r.eps1), k.alpha)) /
                        r.s;
  }
  r.fallback_rhs = std::pow(k.C3 * r.s, -2.0 * k.k0) * std::pow(r.H1, 2.0 * (1.0 - r.theta_internal)) *
                   std::pow(eps_p, 2.0 * r.theta_internal);

  r.failed_stage = "weight";
  const CarlemanWeight w(k.C_star, sc.lambda0, rescaled.coefficients.A(Point{}), n);
  r.C2 = k.C2 > 0.0 ? k.C2 : weight_comparability(w);
  std::vector<int> ks = spec.k_table;
  if (r.regime == Regime::Main && r.k_star <= 4096) ks.push_back(static_cast<int>(r.k_star));
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (int kk : ks) {
    SigmaOmegaRow row;
    row.k = kk;
    row.tau = kk;
    row.tau_admissible = kk >= k.tau0;
    row.log_sigma = log_sigma_k(kk, eps_p, H_p, r.r1, sc.lambda0);
    row.log_omega = log_omega(kk, row.tau, eps_p, H_p, r.r1, r.s_tilde, r.R, w, r.C2);
    r.table.push_back(row);
  }

  r.failed_stage = "bound";
  r.log_rhs = log_bound_rhs(r.eps, r.H, cs.rho0, spec.rho, spec.r0, k.C, k.alpha);
  r.rhs = std::exp(r.log_rhs);
  r.margin = r.rhs - r.lhs;
  r.prop_rhs = prop_rhs(r.eps, r.H, r.s, r0p, k.C, k.alpha) / shn;
  r.prop_margin = r.prop_rhs - r.prop_lhs;
  r.failed_stage.clear();
}

std::string strip_prefix(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = e.module() + ": " + to_string(e.kind()) + " error: ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

}  // namespace

StabilityReport run_experiment(const ExperimentSpec& spec) {
  StabilityReport r;
  try {
    pipeline(spec, r);
  } catch (const Error& e) {
    throw Error(e.kind(), e.module(), "stage " + r.failed_stage + ": " + strip_prefix(e));
  }
  return r;
}

std::vector<StabilityReport> delta_sweep(const ExperimentSpec& spec, const std::vector<double>& deltas, int jobs) {
  ExperimentSpec base = spec;
  if (base.H_declared <= 0.0) {
    const CoefficientSet cs = make_coefficients(base.coefficients);
    base.H_declared = h_bound_of(generate_solution(cs, base.solution));
  }
  std::vector<StabilityReport> out(deltas.size());
  parallel_for(deltas.size(), jobs, [&](std::size_t i) {
    ExperimentSpec s = base;
    s.solution.amplitude = base.solution.amplitude * deltas[i];
    StabilityReport& r = out[i];
    try {
      pipeline(s, r);
    } catch (const Error& e) {
      r.failure = e.what();
    }
  });
  return out;
}

SucpFit sucp_extrapolate(const std::vector<SucpSample>& samples, double alpha, double tolerance) {
  std::map<int, std::vector<SucpSample>> by_n;
  for (const auto& s : samples) by_n[s.N].push_back(s);
  if (by_n.size() < 3) fail(ErrorKind::InsufficientData, "sucp_extrapolate needs at least 3 values of N");

  SucpFit fit;
  fit.target = 0.5 * alpha;
  const bool vacuous =
      std::all_of(samples.begin(), samples.end(), [](const SucpSample& s) { return s.eps == 0.0 && s.lhs == 0.0; });

  bool flat = true;
  for (auto& [N, group] : by_n) {
    std::sort(group.begin(), group.end(), [](const SucpSample& a, const SucpSample& b) { return a.r0 > b.r0; });
    // eps <= C_N r0^N with C_N taken at the largest r0
    const double first = safe_log(group.front().eps) - N * std::log(group.front().r0);
    for (const auto& s : group) {
      const double l = safe_log(s.eps) - N * std::log(s.r0);
      if (l != kNegInf && l > first + std::log1p(tolerance)) flat = false;
    }
    fit.N.push_back(N);
    fit.envelope.push_back(std::sqrt(group.back().rhs));
  }
  if (vacuous) {
    fit.verdict = SucpVerdict::Vacuous;
    return fit;
  }
  if (!flat) {
    fit.verdict = SucpVerdict::NotFlat;
    return fit;
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < fit.N.size(); ++i) {
    if (!(fit.envelope[i] > 0.0)) continue;
    const double x = std::log(static_cast<double>(fit.N[i]));
    const double y = std::log(fit.envelope[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 3) fail(ErrorKind::InsufficientData, "fewer than 3 positive bound values");
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.exponent = -slope;
  fit.verdict = fit.exponent >= fit.target * (1.0 - tolerance) ? SucpVerdict::Consistent : SucpVerdict::Inconsistent;
  return fit;
}

std::vector<SucpSample> synthetic_sucp_series(const std::vector<int>& Ns, const std::vector<double>& r0s,
                                              double rho0, double rho, double C, double alpha) {
  std::vector<SucpSample> out;
  for (int N : Ns)
    for (double r0 : r0s) {
      SucpSample s;
      s.N = N;
      s.r0 = r0;
      s.eps = std::pow(r0, N);
      s.H = 1.0;
      s.lhs = 0.0;
      s.rhs = bound_rhs(s.eps, s.H, rho0, rho, r0, C, alpha);
      out.push_back(s);
    }
  return out;
}

}  // namespace ucp
