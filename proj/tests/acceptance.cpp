// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ucp/carleman.hpp"
#include "ucp/error.hpp"
#include "ucp/kernel.hpp"
#include "ucp/lift.hpp"
#include "ucp/quadrature.hpp"
#include "ucp/stability.hpp"

using namespace ucp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// tests/oracles/stability_oracle.py
constexpr double kSigma8a = 0.524288001;
constexpr double kSigma8b = 0.000262668288;
constexpr double kOmega8 = 167310073.19976712;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CoefficientSet unit_identity() { return make_coefficients(PresetSpec{}); }

WaveSolution eigenmode(int nx) {
  return standing_wave(unit_identity(), 1, SpaceTimeGrid::with_cfl(1, 1.0, 1.0, nx, 1.0));
}

ExperimentSpec wave_spec() {
  ExperimentSpec s;
  s.solution.nx = 257;
  s.r0 = 0.01;
  s.rho = 0.05;
  return s;
}

Outcome kernel_normalization() {
  double worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const auto s = KernelSpec::make(k);
    const double v = integrate(gauss_legendre(k + 1), -1.0, 1.0, [&](double t) { return phi(s, t).real(); });
    worst = std::max(worst, std::abs(v - 1.0));
  }
  bool asym = true;
  std::string a;
  for (int k : {200, 400}) {
    const double m = KernelSpec::make(k).mu * std::sqrt(std::numbers::pi / k);
    asym = asym && m >= 0.99 && m <= 1.01;
    a += fmt(" mu_%d sqrt(pi/k) = %.6f", k, m);
  }
  return {worst <= 1e-12 && asym, fmt("max |int phi_k - 1| = %.2e over k=1..100;", worst) + a};
}

Outcome boundary_magnitudes() {
  double worst = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const auto s = KernelSpec::make(k);
    for (double y : {-1.0, -0.5, 0.1, 1.0})
      for (double side : {-1.0, 1.0})
        for (int order : {0, 1}) {
          const cd z(side, y);
          const double direct = std::abs(order == 0 ? phi(s, z) : phi_d1(s, z));
          worst = std::max(worst, rel(boundary_magnitude(s, y, order), direct));
        }
  }
  int violations = 0, first = 0;
  double worst_excess = 0.0;
  bool corner = true;
  for (int k = 1; k <= 50; ++k) {
    const auto c = sup_on_square(KernelSpec::make(k), 201);
    corner = corner && c.within_corner;
    if (!c.within_2k) {
      ++violations;
      if (!first) first = k;
      worst_excess = std::max(worst_excess, c.sup / c.bound_2k);
    }
  }
  return {worst <= 1e-10 && violations == 0,
          fmt("closed forms max rel err %.2e; |phi_k| <= 2^k mu_k fails for %d of 50 k (first k=%d, worst sup/bound "
              "%.3g); sup equals the corner value 5^(k/2) mu_k: %s",
              worst, violations, first, worst_excess, corner ? "yes" : "no")};
}

Outcome lemma1_rate() {
  const auto ws = eigenmode(129);
  std::vector<double> lk, lr;
  std::string d;
  for (int k : {4, 8, 16, 32, 64}) {
    const auto r = lemma1_defect(ws, KernelSpec::make(k));
    const double ratio = r.defect * std::sqrt(k) / std::log(k);
    lk.push_back(std::log(k));
    lr.push_back(std::log(ratio));
    d += fmt(" %.4f", ratio);
  }
  const double s = slope(lk, lr);
  return {s <= 0.05, fmt("defect sqrt(k)/log k over k=4..64:%s; slope %.4f", d.c_str(), s)};
}

Outcome elliptic_order() {
  const auto cs = unit_identity();
  double worst = INFINITY;
  std::string d;
  for (int k : {2, 4, 8}) {
    const auto spec = KernelSpec::make(k);
    const auto y = uniform_y_grid(9);
    std::vector<double> res;
    for (int nx : {33, 65, 129}) {
      const auto ws = eigenmode(nx);
      res.push_back(elliptic_residual(lift(ws, spec, y), forcing(ws, cs, spec, y), cs));
    }
    const double o1 = std::log2(res[0] / res[1]), o2 = std::log2(res[1] / res[2]);
    worst = std::min({worst, o1, o2});
    d += fmt(" k=%d: %.3f %.3f;", k, o1, o2);
  }
  return {worst >= 1.7, "observed orders" + d};
}

Outcome ibp_identities() {
  const auto ws = eigenmode(129);
  double worst = 0.0;
  for (int k : {2, 4, 8}) {
    const auto r = ibp_identity_check(ws, KernelSpec::make(k), {0.0, 0.5, -0.5});
    worst = std::max({worst, r.first_ratio, r.second_ratio});
  }
  return {worst <= 10.0, fmt("max error / budget = %.3f", worst)};
}

double forcing_envelope_max(int nx) {
  const auto ws = eigenmode(nx);
  const auto cs = unit_identity();
  const double H = h_bound_of(ws);
  const std::vector<double> y{-1.0, -0.5, -0.25, 0.25, 0.5, 1.0};
  double m = 0.0;
  for (int k = 2; k <= 12; ++k) {
    const auto spec = KernelSpec::make(k);
    const auto n = forcing_norms(forcing(ws, cs, spec, y));
    for (std::size_t j = 0; j < y.size(); ++j) m = std::max(m, n[j] / forcing_envelope(spec, H, y[j]));
  }
  return m;
}

Outcome forcing_envelope_check() {
  const double a = forcing_envelope_max(65), b = forcing_envelope_max(129), c = forcing_envelope_max(257);
  const double change = rel(b, c);
  return {std::isfinite(c) && change <= 0.2,
          fmt("max ratio %.6f / %.6f / %.6f on 65/129/257 nodes; last change %.2e", a, b, c, change)};
}

Outcome weight_properties() {
  const CarlemanWeight w(4.0, 1.0, identity_matrix(1), 1);
  const auto& p = w.profile();
  constexpr int n = 10000;
  bool increasing = true, concave = true, below = true;
  double prev = 0.0, prev_step = INFINITY;
  for (int i = 1; i <= n; ++i) {
    const double r = 2.0 * i / n;
    const double v = p(r);
    const double step = v - prev;
    increasing = increasing && step > 0.0;
    concave = concave && step <= prev_step * (1 + 1e-9) + 1e-15;
    below = below && v <= r;
    prev = v;
    prev_step = step;
  }
  const double C = psi_lower_constant(p);
  const double small = p(1e-6) / 1e-6;
  const double C2 = weight_comparability(w);
  const bool ok = increasing && concave && below && std::isfinite(C) && small >= 0.9999 && small <= 1.0001 &&
                  std::isfinite(C2);
  return {ok, fmt("increasing %s, concave %s, Psi <= r %s on 1e4 points of (0, 2]; C = %.4f; Psi(1e-6)/1e-6 = "
                  "%.8f; C2 = %.4f",
                  increasing ? "yes" : "no", concave ? "yes" : "no", below ? "yes" : "no", C, small, C2)};
}

Outcome carleman_probe() {
  const auto cs = unit_identity();
  const CarlemanWeight w(4.0, 1.0, identity_matrix(1), 1);
  const double tau0 = 4.0;
  const std::vector<int> grids{65, 129, 257};
  bool finite = true;
  double invariance = 0.0, variation = 0.0;
  std::string d;
  for (auto fam : {BumpFamily::Radial, BumpFamily::Dipole, BumpFamily::Vortex}) {
    std::vector<double> maxima;
    for (int n : grids) {
      const TensorGrid xy = xy_grid(1, 1.1 * w.probe_radius(), n);
      const auto b = bump(w, xy, fam);
      XYField scaled = b;
      for (auto& v : scaled.values) v *= cd(2.0, -3.0);
      double m = 0.0;
      for (int i = 0; i < 8; ++i) {
        const double tau = tau0 + 3.0 * tau0 * i / 7.0;
        const double r = carleman_ratio(cs, w, b, tau).ratio;
        finite = finite && std::isfinite(r) && r > 0.0;
        invariance = std::max(invariance, rel(carleman_ratio(cs, w, scaled, tau).ratio, r));
        m = std::max(m, r);
      }
      maxima.push_back(m);
    }
    const double v = rel(maxima[1], maxima[2]);
    variation = std::max(variation, v);
    d += fmt(" %s %.4f/%.4f/%.4f;", to_string(fam), maxima[0], maxima[1], maxima[2]);
  }
  return {finite && invariance <= 1e-12 && variation < 0.25,
          fmt("max ratio over tau on 65/129/257 nodes:%s", d.c_str()) +
              fmt(" finest-grid variation %.3f, scale invariance %.1e", variation, invariance)};
}

Outcome parameter_rules() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> le(-30.0, -1e-3), lr(-9.0, -0.01);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const double eps1 = std::exp(le(rng)), r1 = std::exp(lr(rng));
    const double q = std::log(eps1) / (2.0 * std::log(r1));
    std::int64_t brute = 1;
    while (static_cast<double>(brute) < q) ++brute;
    if (choose_k(eps1, r1, 4).k_star != brute) ++mismatches;
  }
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  double theta_err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double m = scale(rng);
    theta_err = std::max(theta_err, std::abs(theta0(m, 3.0, m * 0.07, m * 0.002) - theta0(1.0, 3.0, 0.07, 0.002)));
    theta_err = std::max(theta_err, std::abs(theta_prop(3.0, (m * 0.07) / m, (m * 0.002) / m) -
                                             theta_prop(3.0, 0.07, 0.002)));
  }
  const CarlemanWeight w(4.0, 1.0, identity_matrix(1), 1);
  const double e1 = rel(sigma_k(8, 1e-3, 1.0, 0.05, 1.0), kSigma8a);
  const double e2 = rel(sigma_k(8, 1e-6, 1.0, 0.1, 1.0), kSigma8b);
  const double e3 = rel(omega(8, 8, 1e-3, 1.0, 0.05, 0.1, 0.25, w, 2.0), kOmega8);
  const double oracle = std::max({e1, e2, e3});
  return {mismatches == 0 && theta_err <= 1e-12 && oracle <= 1e-8,
          fmt("choose_k mismatches %d/1000; theta rescaling error %.1e; sigma/omega max rel err %.1e", mismatches,
              theta_err, oracle)};
}

Outcome stability_experiment() {
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  const auto reports = delta_sweep(wave_spec(), deltas, 4);
  double min_margin = INFINITY, emin = INFINITY, emax = 0.0;
  int failures = 0;
  for (const auto& r : reports) {
    if (!r.failure.empty()) ++failures;
    min_margin = std::min(min_margin, r.margin);
    emin = std::min(emin, r.eps);
    emax = std::max(emax, r.eps);
  }
  const double decades = std::log10(emax / emin);
  double worst = 0.0;
  bool consistent = true;
  for (double alpha : {0.1, 0.25, 0.4}) {
    const auto fit =
        sucp_extrapolate(synthetic_sucp_series({2, 4, 8, 16, 32}, {1e-2, 1e-3, 1e-4}, 1.0, 0.05, 10.0, alpha), alpha);
    consistent = consistent && fit.verdict == SucpVerdict::Consistent;
    worst = std::max(worst, rel(fit.exponent, alpha / 2));
  }
  return {failures == 0 && min_margin >= 0.0 && decades >= 6.0 && consistent && worst <= 0.1,
          fmt("min margin %.3g over %zu runs spanning %.1f decades of eps (%d failed); sucp exponent max rel err %.1e",
              min_margin, reports.size(), decades, failures, worst)};
}

Outcome rescaling_consistency() {
  bool ok = true;
  std::string d;
  for (const auto& [rho0, T] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {1.2, 0.8}}) {
    for (double f : {0.0, 0.25, 0.5}) {
      auto s = wave_spec();
      s.coefficients.rho0 = rho0;
      s.coefficients.T = T;
      s.t0 = f * T;
      const auto r = run_experiment(s);
      const double q = T / rho0;
      const double lambda0 = 1.0 * std::min(q * q, 1.0 / (q * q));
      const double Lambda0 = T * T / rho0 * 1.0;
      const bool exact = r.lambda0 == lambda0 && r.Lambda0 == Lambda0;
      const bool agree = std::abs(r.lhs - r.lhs_rescaled) <= 2.0 * r.lhs_tolerance;
      ok = ok && exact && agree;
      d += fmt(" (rho0 %.1f, T %.1f, t0 %.2f): |diff|/tol %.3f%s;", rho0, T, s.t0,
               r.lhs_tolerance > 0 ? std::abs(r.lhs - r.lhs_rescaled) / r.lhs_tolerance : 0.0,
               exact ? "" : " lambda0/Lambda0 mismatch");
    }
  }
  return {ok, "lhs vs rescaled" + d};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"kernel normalization", kernel_normalization},
      {"boundary magnitudes and global bound", boundary_magnitudes},
      {"Lemma 1 rate", lemma1_rate},
      {"elliptic residual order", elliptic_order},
      {"integration by parts identities", ibp_identities},
      {"F_k envelope", forcing_envelope_check},
      {"weight properties", weight_properties},
      {"Carleman probe", carleman_probe},
      {"parameter rules", parameter_rules},
      {"stability experiment", stability_experiment},
      {"rescaling consistency", rescaling_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
