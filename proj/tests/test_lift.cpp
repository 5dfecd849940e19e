#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ucp/error.hpp"
#include "ucp/lift.hpp"

using namespace ucp;
using std::numbers::pi;

namespace {

CoefficientSet unit_identity() { return make_coefficients(PresetSpec{}); }

WaveSolution eigenmode(int nx, double amplitude = 1.0) {
  const auto cs = unit_identity();
  return standing_wave(cs, 1, SpaceTimeGrid::with_cfl(1, 1.0, 1.0, nx, 1.0), amplitude);
}

WaveSolution from(std::function<double(double, double)> u, std::function<double(double, double)> ut,
                  std::function<double(double, double)> utt, int nx = 65) {
  SolutionFunction fn;
  fn.u = [u](const Point& x, double t) { return u(x[0], t); };
  fn.ut = [ut](const Point& x, double t) { return ut(x[0], t); };
  fn.utt = [utt](const Point& x, double t) { return utt(x[0], t); };
  return sample_solution(unit_identity(), SpaceTimeGrid::with_cfl(1, 1.0, 1.0, nx, 1.0), fn);
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("lift reproduces simple profiles at y = 0") {
  const auto still = from([](double x, double) { return std::sin(2 * x) + 0.5; }, [](double, double) { return 0.0; },
                          [](double, double) { return 0.0; });
  const auto odd = from([](double x, double t) { return t * (1 + x); }, [](double x, double) { return 1 + x; },
                        [](double, double) { return 0.0; });
  const auto sq = from([](double, double t) { return t * t; }, [](double, double t) { return 2 * t; },
                       [](double, double) { return 2.0; });
  for (int k : {1, 3, 8}) {
    const auto spec = KernelSpec::make(k);
    const auto a = lift(still, spec, {0.0});
    for (std::size_t f = 0; f < a.nodes(); ++f) {
      CHECK(std::abs(a.v[f] - (std::sin(2 * a.space.coordinate(f, 0)) + 0.5)) < 1e-13);
    }
    const auto b = lift(odd, spec, {0.0});
    for (std::size_t f = 0; f < b.nodes(); ++f) CHECK(std::abs(b.v[f]) < 1e-14);
  }
  const auto c = lift(sq, KernelSpec::make(1), {0.0});
  for (std::size_t f = 0; f < c.nodes(); ++f) CHECK(c.v[f].real() == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("lift symmetries") {
  const auto ws = eigenmode(65);
  const auto y = uniform_y_grid(9);
  const auto el = lift(ws, KernelSpec::make(4), y);
  const std::size_t n = el.nodes();
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t f = 0; f < n; ++f) {
      const cd a = el.v[j * n + f];
      const cd b = el.v[(y.size() - 1 - j) * n + f];
      CHECK(std::abs(a - std::conj(b)) <= 1e-14 * (1 + std::abs(a)));
    }
  const std::size_t mid = y.size() / 2;
  for (std::size_t f = 0; f < n; ++f) CHECK(std::abs(el.v[mid * n + f].imag()) < 1e-15);
}

TEST_CASE("lift preconditions") {
  const auto ws = eigenmode(33);
  CHECK(kind_of([&] { lift(ws, KernelSpec::make(2), {1.5}); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { lift(ws, KernelSpec::make(0), {0.0}); }) == ErrorKind::Domain);
  PresetSpec p;
  p.rho0 = 2.0;
  const auto cs = make_coefficients(p);
  const auto wide = standing_wave(cs, 1, SpaceTimeGrid::with_cfl(1, 2.0, 1.0, 33, 1.0));
  CHECK(kind_of([&] { lift(wide, KernelSpec::make(2), {0.0}); }) == ErrorKind::Precondition);

  // a coarse time grid with a large order is flagged, not rejected
  const auto coarse = eigenmode(17);
  const auto el = lift(coarse, KernelSpec::make(60), {0.0, 1.0}, 1e-12);
  CHECK_FALSE(el.warning.empty());
}

TEST_CASE("elliptic residual converges at second order") {
  const auto cs = unit_identity();
  for (int k : {2, 4, 8}) {
    const auto spec = KernelSpec::make(k);
    std::vector<double> res;
    for (int nx : {33, 65, 129}) {
      const auto ws = eigenmode(nx);
      const auto y = uniform_y_grid(9);
      const auto el = lift(ws, spec, y);
      const auto ff = forcing(ws, cs, spec, y);
      res.push_back(elliptic_residual(el, ff, cs));
    }
    CHECK(std::log2(res[0] / res[1]) >= 1.7);
    CHECK(std::log2(res[1] / res[2]) >= 1.7);
  }
  const auto zero = eigenmode(33, 0.0);
  const auto spec = KernelSpec::make(3);
  const auto y = uniform_y_grid(5);
  CHECK(elliptic_residual(lift(zero, spec, y), forcing(zero, cs, spec, y), cs) == 0.0);
  const auto other = forcing(zero, cs, KernelSpec::make(4), y);
  CHECK(kind_of([&] { elliptic_residual(lift(zero, spec, y), other, cs); }) == ErrorKind::Structural);
}

TEST_CASE("forcing") {
  const auto cs = unit_identity();
  const auto one = from([](double, double) { return 1.0; }, [](double, double) { return 0.0; },
                        [](double, double) { return 0.0; });
  for (int k : {2, 5}) {
    const auto ff = forcing(one, cs, KernelSpec::make(k), {0.0});
    for (const cd& v : ff.F) CHECK(std::abs(v) < 1e-15);
  }
  const auto ws = eigenmode(65);
  for (int k : {2, 4, 7}) {
    const auto spec = KernelSpec::make(k);
    const auto ff = forcing(ws, cs, spec, {-1.0, 1.0});
    double sup = 0.0;
    for (std::size_t i = 0; i < ws.u.size(); ++i) sup = std::max({sup, std::abs(ws.u[i]), std::abs(ws.ut[i])});
    const double bound = 4 * sup *
                         std::max(spec.mu * std::pow(5.0, k / 2.0),
                                  2 * k * spec.mu * std::sqrt(2.0) * std::pow(5.0, (k - 1) / 2.0));
    for (const cd& v : ff.F) CHECK(std::abs(v) <= bound);
  }
  WaveSolution no_ut = ws;
  no_ut.ut.clear();
  CHECK(kind_of([&] { forcing(no_ut, cs, KernelSpec::make(2), {0.0}); }) == ErrorKind::Data);
}

TEST_CASE("integration by parts identities") {
  const auto ws = eigenmode(129);
  for (int k : {2, 4, 8}) {
    const auto rep = ibp_identity_check(ws, KernelSpec::make(k), {0.0, 0.5, -0.5});
    CHECK(rep.first_ratio <= 10.0);
    CHECK(rep.second_ratio <= 10.0);
    CHECK(rep.first_error < 1e-6);
    CHECK(rep.second_error < 1e-5);
  }
  WaveSolution no_utt = ws;
  no_utt.utt.clear();
  CHECK(kind_of([&] { ibp_identity_check(no_utt, KernelSpec::make(2), {0.0}); }) == ErrorKind::Precondition);
}

TEST_CASE("Lemma 1 defect") {
  const auto still = from([](double x, double) { return std::cos(x); }, [](double, double) { return 0.0; },
                          [](double, double) { return 0.0; });
  CHECK(lemma1_defect(still, KernelSpec::make(8)).defect < 1e-13);

  const auto d16 = lemma1_defect(still, KernelSpec::make(16), 1.0);
  CHECK(d16.gamma == doctest::Approx(0.6931471805599453).epsilon(1e-14));
  CHECK(d16.envelope == doctest::Approx(0.7037648361563128).epsilon(1e-13));
  CHECK_FALSE(d16.gamma_flag);
  CHECK(kind_of([&] { lemma1_defect(still, KernelSpec::make(1)); }) == ErrorKind::Domain);

  const auto ws = eigenmode(129);
  double prev = INFINITY;
  double worst = 0.0;
  for (int k : {4, 8, 16, 32, 64}) {
    const auto d = lemma1_defect(ws, KernelSpec::make(k));
    CHECK(d.defect < prev);
    prev = d.defect;
    worst = std::max(worst, d.defect / d.rate);
  }
  CHECK(std::isfinite(worst));
}

TEST_CASE("lift bounds") {
  const auto ws = eigenmode(129);
  const auto y = uniform_y_grid(65);
  const double H = h_bound_of(ws);
  const double eps = epsilon_of(ws, 0.25);
  for (int k : {2, 4, 8}) {
    const auto spec = KernelSpec::make(k);
    const auto el = lift(ws, spec, y);
    const auto b = lift_bounds_check(el, ws, spec, 0.25, eps, H);
    CHECK(b.full_holds);
    // Schwarz with the corner value 5^(k/2) mu_k of |phi_k| in place of 2^k mu_k
    CHECK(b.ratio_small <= std::pow(1.25, k / 2.0) * (1 + 1e-12));
    CHECK(b.caccioppoli > 0.0);
    CHECK(std::isfinite(b.caccioppoli_ratio));
  }
  const auto zero = eigenmode(65, 0.0);
  const auto el0 = lift(zero, KernelSpec::make(3), uniform_y_grid(33));
  const auto b0 = lift_bounds_check(el0, zero, KernelSpec::make(3), 0.5, 0.0, 0.0);
  CHECK(b0.sup_full == 0.0);
  CHECK(b0.sup_small == 0.0);
  CHECK(b0.caccioppoli == 0.0);
  CHECK(kind_of([&] { lift_bounds_check(el0, zero, KernelSpec::make(3), 0.05, 0.0, 0.0); }) == ErrorKind::Resolution);
}
