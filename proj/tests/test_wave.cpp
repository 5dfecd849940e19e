#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "ucp/error.hpp"
#include "ucp/wave.hpp"

using namespace ucp;
using std::numbers::pi;

namespace {

CoefficientSet constant_wave(double kappa, double rho0, double T) {
  PresetSpec p;
  p.preset = FieldPreset::LipschitzBump;
  p.kappa = kappa;
  p.slope = 0.0;
  p.lambda = std::min(kappa, 1.0 / kappa);
  p.rho0 = rho0;
  p.T = T;
  return make_coefficients(p);
}

WaveSolution constant_field(double value, const SpaceTimeGrid& g) {
  WaveSolution ws;
  ws.grid = g;
  ws.u.assign(g.nodes() * g.nt, value);
  ws.ut.assign(g.nodes() * g.nt, 0.0);
  return ws;
}

double l2_error(const WaveSolution& a, const WaveSolution& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i) s += (a.u[i] - b.u[i]) * (a.u[i] - b.u[i]);
  return std::sqrt(s * a.grid.space.cell_volume() * a.grid.dt);
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

TEST_CASE("space-time grid invariants") {
  CHECK(kind_of([] { SpaceTimeGrid::make(1, 1.0, 1.0, 33, 40); }) == ErrorKind::Structural);
  const auto g = SpaceTimeGrid::with_cfl(1, 1.0, 1.0, 65, 0.5, 0.5);
  CHECK(g.nt % 2 == 1);
  CHECK(g.dt <= 0.5 * g.dx() * std::sqrt(0.5) * (1 + 1e-12));
  CHECK(g.time((g.nt - 1) / 2) == doctest::Approx(0.0).epsilon(1e-15));
  const auto g4 = SpaceTimeGrid::with_cfl(1, 1.0, 1.0, 65, 1.0, 0.5, 4);
  CHECK((g4.nt - 1) % 4 == 0);
  CHECK(kind_of([&] { check_cfl(g, 0.5, 1.5); }) == ErrorKind::Configuration);
  auto g2 = SpaceTimeGrid::with_cfl(2, 1.0, 1.0, 33, 1.0, 0.5);
  CHECK(kind_of([&] { check_cfl(g2, 1.0, 0.9); }) == ErrorKind::Configuration);
}

TEST_CASE("standing wave reference solution") {
  const auto cs = constant_wave(1.0, pi, 1.0);
  const auto g = SpaceTimeGrid::with_cfl(1, pi, 1.0, 129, 1.0);
  const auto ws = standing_wave(cs, 1, g);
  // u = cos(t) sin(x)
  const std::size_t f = 40;
  const int it = 7;
  const double x = g.space.coordinate(f, 0);
  CHECK(ws.u[it * g.nodes() + f] == doctest::Approx(std::cos(g.time(it)) * std::sin(x)).epsilon(1e-14));
  CHECK(ws.ut[it * g.nodes() + f] == doctest::Approx(-std::sin(g.time(it)) * std::sin(x)).epsilon(1e-14));

  const auto g2 = SpaceTimeGrid::with_cfl(1, pi, 1.0, 257, 1.0);
  const auto ws2 = standing_wave(cs, 1, g2);
  CHECK(ws.residual_norm > 0.0);
  CHECK(ws.residual_norm / ws2.residual_norm == doctest::Approx(4.0).epsilon(0.1));

  CHECK(wavenumber_for(4.0, 2.0) == doctest::Approx(0.5 * wavenumber_for(1.0, 2.0)));

  const auto w3 = standing_wave(cs, 3, g2);
  const auto u0 = w3.u_at((g2.nt - 1) / 2);
  int changes = 0;
  for (std::size_t i = 2; i + 1 < u0.size(); ++i)
    if ((u0[i - 1] > 0) != (u0[i] > 0) && std::abs(u0[i]) > 1e-12 && std::abs(u0[i - 1]) > 1e-12) ++changes;
  int exact_zeros = 0;
  for (std::size_t i = 1; i + 1 < u0.size(); ++i)
    if (std::abs(u0[i]) <= 1e-12) ++exact_zeros;
  CHECK(changes + exact_zeros == 5);

  PresetSpec bump;
  bump.preset = FieldPreset::LipschitzBump;
  CHECK(kind_of([&] { standing_wave_function(make_coefficients(bump), 1); }) == ErrorKind::Unsupported);
}

TEST_CASE("finite differences converge to the eigenmode at second order") {
  const auto cs = constant_wave(1.0, pi, 1.0);
  double prev = 0.0;
  for (int nx : {65, 129, 257}) {
    const auto g = SpaceTimeGrid::with_cfl(1, pi, 1.0, nx, 1.0);
    const auto exact = standing_wave(cs, 1, g);
    const auto fd = solve_fd(cs, exact.u_at(0), exact.ut_at(0), g);
    CHECK(fd.residual_norm < 1e-9);
    const double err = l2_error(fd, exact);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.15));
    prev = err;
  }
}

TEST_CASE("finite differences: zero data, determinism, failure modes") {
  const auto cs = constant_wave(1.0, 1.0, 1.0);
  const auto g = SpaceTimeGrid::with_cfl(1, 1.0, 1.0, 65, 1.0);
  const std::vector<double> zero(g.nodes(), 0.0);
  const auto z = solve_fd(cs, zero, zero, g);
  for (double v : z.u) REQUIRE(v == 0.0);

  std::vector<double> bumpy(g.nodes());
  for (std::size_t f = 0; f < g.nodes(); ++f) {
    const double x = g.space.coordinate(f, 0);
    bumpy[f] = std::exp(-20 * x * x) * (1 - x * x);
  }
  const auto a = solve_fd(cs, bumpy, zero, g);
  const auto b = solve_fd(cs, bumpy, zero, g);
  CHECK(a.u == b.u);
  CHECK(a.ut == b.ut);

  CHECK(kind_of([&] { solve_fd(cs, bumpy, zero, g, 2.0); }) == ErrorKind::Configuration);
  auto coarse = SpaceTimeGrid::make(1, 1.0, 1.0, 65, 9);
  CHECK(kind_of([&] { solve_fd(cs, bumpy, zero, coarse); }) == ErrorKind::Configuration);

  PresetSpec hot;
  hot.c = 4e6;
  hot.Lambda1 = 1e7;
  const auto hot_cs = make_coefficients(hot);
  std::string msg;
  try {
    solve_fd(hot_cs, bumpy, zero, g);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Instability);
    msg = e.what();
  }
  CHECK(msg.find("time step") != std::string::npos);

  auto bad = bumpy;
  bad[3] = std::nan("");
  CHECK(kind_of([&] { solve_fd(cs, bad, zero, g); }) == ErrorKind::Data);
}

TEST_CASE("two-dimensional solver with variable coefficients") {
  PresetSpec p;
  p.dim = 2;
  p.preset = FieldPreset::LipschitzBump;
  p.kappa = 1.0;
  p.slope = 0.4;
  p.lambda = 0.7;
  p.a = 0.3;
  p.b = {0.1, -0.2};
  p.c = -0.5;
  const auto cs = make_coefficients(p);
  const auto g = SpaceTimeGrid::with_cfl(2, 1.0, 1.0, 41, cs.lambda, 0.5);
  std::vector<double> u0(g.nodes()), v0(g.nodes(), 0.0);
  for (std::size_t f = 0; f < g.nodes(); ++f) {
    const Point x = spatial_point(g.space, f, 2);
    const double r2 = x[0] * x[0] + x[1] * x[1];
    u0[f] = r2 < 1 ? std::pow(1 - r2, 3) : 0.0;
  }
  const auto ws = solve_fd(cs, u0, v0, g);
  CHECK(ws.residual_norm < 1e-8);
  const double H = h_bound_of(ws);
  CHECK(std::isfinite(H));
  CHECK(epsilon_of(ws, 0.5) <= std::sqrt(2.0) * H);
}

TEST_CASE("epsilon functional") {
  const auto g = SpaceTimeGrid::make(1, 1.0, 1.0, 33, 33);
  CHECK(epsilon_of(constant_field(0.0, g), 0.5) == 0.0);
  CHECK(epsilon_of(constant_field(1.0, g), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(kind_of([&] { epsilon_of(constant_field(1.0, g), 0.01); }) == ErrorKind::Resolution);
  CHECK(kind_of([&] { epsilon_of(constant_field(1.0, g), 1.5); }) == ErrorKind::Domain);

  const auto fine = SpaceTimeGrid::make(1, 1.0, 1.0, 1025, 65);
  SolutionFunction fn;
  fn.u = [](const Point& x, double t) { return std::cos(x[0]) * (1 + t * t); };
  fn.ut = [](const Point& x, double t) { return 2 * t * std::cos(x[0]); };
  const auto cs = constant_wave(1.0, 1.0, 1.0);
  const auto ws = sample_solution(cs, fine, fn);
  const double ratio = epsilon_of(ws, 0.1) / epsilon_of(ws, 0.05);
  CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-2));
}

TEST_CASE("H functional") {
  const auto g = SpaceTimeGrid::make(1, 1.0, 1.0, 33, 33);
  CHECK(h_bound_of(constant_field(1.0, g)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(h_bound_of(constant_field(2.0, g)) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));

  // u = cos(t) sin(x) on B_pi: H^2 = ||sin||^2 (cos^2(1)/pi + sin^2(1)), ||sin||^2 = pi.
  const auto cs = constant_wave(1.0, pi, 1.0);
  const auto gw = SpaceTimeGrid::with_cfl(1, pi, 1.0, 513, 1.0);
  const auto ws = standing_wave(cs, 1, gw);
  const double expect = std::sqrt(pi * (std::cos(1.0) * std::cos(1.0) / pi + std::sin(1.0) * std::sin(1.0)));
  CHECK(h_bound_of(ws) == doctest::Approx(expect).epsilon(1e-4));
  CHECK(epsilon_of(ws, pi) <= std::sqrt(2.0) * h_bound_of(ws));
  const auto ws2 = standing_wave(cs, 1, gw, 2.0);
  CHECK(h_bound_of(ws2) == doctest::Approx(2.0 * h_bound_of(ws)).epsilon(1e-14));
}

TEST_CASE("time slices and interpolation") {
  const auto cs = constant_wave(1.0, 1.0, 1.0);
  const auto g = SpaceTimeGrid::with_cfl(1, 1.0, 1.0, 129, 1.0);
  const auto ws = standing_wave(cs, 1, g);
  const auto at_node = time_slice(ws, g.time(10));
  for (std::size_t f = 0; f < g.nodes(); ++f) CHECK(at_node[f] == ws.u[10 * g.nodes() + f]);
  const double t = 0.3217;
  const auto mid = time_slice(ws, t);
  const double w = pi;
  for (std::size_t f = 0; f < g.nodes(); f += 16)
    CHECK(mid[f] == doctest::Approx(std::cos(w * t) * std::sin(w * g.space.coordinate(f, 0))).epsilon(1e-6));
  const PointValue pv = interpolate(ws, Point{0.123, 0.0}, t);
  CHECK(pv.u == doctest::Approx(std::cos(w * t) * std::sin(w * 0.123)).epsilon(1e-5));
  CHECK(pv.ut == doctest::Approx(-w * std::sin(w * t) * std::sin(w * 0.123)).epsilon(1e-4));
}

TEST_CASE("export round trip") {
  const auto cs = constant_wave(1.0, 1.0, 1.0);
  const auto g = SpaceTimeGrid::with_cfl(1, 1.0, 1.0, 17, 1.0);
  const auto ws = standing_wave(cs, 1, g);
  const auto dir = std::filesystem::temp_directory_path() / "ucp_wave_test";
  std::filesystem::create_directories(dir);
  write_binary(ws, (dir / "w.bin").string());
  const auto back = read_binary((dir / "w.bin").string());
  CHECK(back.u == ws.u);
  CHECK(back.ut == ws.ut);
  CHECK(back.grid.nt == g.nt);
  CHECK(back.residual_norm == ws.residual_norm);
  write_csv(ws, (dir / "w.csv").string());
  std::ifstream in(dir / "w.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "x_index,t_index,u,ut");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == g.nodes() * g.nt);
  CHECK(kind_of([&] { read_binary((dir / "w.csv").string()); }) == ErrorKind::Io);
}
