#include "ucp/wave.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>

#include "ucp/error.hpp"
#include "ucp/spatial_operator.hpp"

namespace ucp {

namespace {

constexpr const char* kModule = "wave";

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, kModule, message); }

/// Nodes that are updated by the scheme: interior to the cube and to B_rho0.
std::vector<char> active_mask(const SpaceTimeGrid& grid) { return ball_interior_mask(grid.space, grid.rho0); }

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) fail(ErrorKind::Data, std::string("non-finite value in ") + what);
}

std::vector<double> time_weights(const SpaceTimeGrid& grid) {
  return trapezoid_weights(Axis{-grid.T, grid.dt, grid.nt});
}

int interval_of(const SpaceTimeGrid& grid, double t, double& s) {
  if (t < -grid.T * (1.0 + 1e-12) || t > grid.T * (1.0 + 1e-12))
    fail(ErrorKind::Domain, "time outside [-T, T]");
  double pos = (t + grid.T) / grid.dt;
  int j = static_cast<int>(std::floor(pos));
  j = std::clamp(j, 0, grid.nt - 2);
  s = pos - j;
  return j;
}

struct Hermite {
  double h00, h10, h01, h11;   // value basis
  double d00, d10, d01, d11;   // derivative basis, per unit s
};

Hermite hermite(double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  return {2 * s3 - 3 * s2 + 1, s3 - 2 * s2 + s, -2 * s3 + 3 * s2, s3 - s2,
          6 * s2 - 6 * s,      3 * s2 - 4 * s + 1, -6 * s2 + 6 * s, 3 * s2 - 2 * s};
}

}  // namespace

SpaceTimeGrid SpaceTimeGrid::make(int dim, double rho0, double T, int nx, int nt) {
  if (!(rho0 > 0.0) || !(T > 0.0)) fail(ErrorKind::Domain, "rho0 and T must be positive");
  if (nx < 3) fail(ErrorKind::Structural, "nx must be at least 3");
  if (nt < 3 || nt % 2 == 0) fail(ErrorKind::Structural, "nt must be odd and at least 3 so that t = 0 is a node");
  SpaceTimeGrid g;
  g.space = spatial_grid(dim, rho0, nx);
  g.dim = dim;
  g.rho0 = rho0;
  g.T = T;
  g.nt = nt;
  g.dt = 2.0 * T / (nt - 1);
  return g;
}

SpaceTimeGrid SpaceTimeGrid::with_cfl(int dim, double rho0, double T, int nx, double lambda, double cfl,
                                      int multiple) {
  if (!(cfl > 0.0) || !(lambda > 0.0)) fail(ErrorKind::Configuration, "cfl and lambda must be positive");
  if (multiple < 1) multiple = 1;
  if (multiple % 2 != 0) multiple *= 2;
  if (nx < 3) fail(ErrorKind::Structural, "nx must be at least 3");
  const double dx = 2.0 * rho0 / (nx - 1);
  const double dt_max = cfl * dx * std::sqrt(lambda);
  long intervals = static_cast<long>(std::ceil(2.0 * T / dt_max - 1e-9));
  intervals = std::max<long>(intervals, multiple);
  intervals = ((intervals + multiple - 1) / multiple) * multiple;
  return make(dim, rho0, T, nx, static_cast<int>(intervals + 1));
}

void check_cfl(const SpaceTimeGrid& grid, double lambda, double cfl) {
  const double cap = 1.0 / std::sqrt(static_cast<double>(grid.dim));
  if (!(cfl > 0.0) || cfl > cap * (1.0 + 1e-12)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "CFL factor %.6g outside (0, %.6g] for n = %d", cfl, cap, grid.dim);
    fail(ErrorKind::Configuration, buf);
  }
  const double limit = cfl * grid.dx() * std::sqrt(lambda);
  if (grid.dt > limit * (1.0 + 1e-12)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "CFL violated: dt = %.6g exceeds %.6g (cfl dx sqrt(lambda))", grid.dt, limit);
    fail(ErrorKind::Configuration, buf);
  }
}

const char* to_string(SolutionSource source) noexcept {
  return source == SolutionSource::Analytic ? "analytic" : "fd";
}

std::vector<double> sample_on(const TensorGrid& grid, int dim, const std::function<double(const Point&)>& f) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(spatial_point(grid, i, dim));
  return out;
}

WaveSolution sample_solution(const CoefficientSet& cs, const SpaceTimeGrid& grid, const SolutionFunction& fn) {
  if (cs.dim != grid.dim) fail(ErrorKind::Structural, "grid dimension does not match the coefficients");
  WaveSolution ws;
  ws.grid = grid;
  ws.source = SolutionSource::Analytic;
  const std::size_t nodes = grid.nodes();
  const std::size_t total = nodes * static_cast<std::size_t>(grid.nt);
  ws.u.resize(total);
  ws.ut.resize(total);
  if (fn.utt) ws.utt.resize(total);
  for (int it = 0; it < grid.nt; ++it) {
    const double t = grid.time(it);
    for (std::size_t f = 0; f < nodes; ++f) {
      const Point x = spatial_point(grid.space, f, grid.dim);
      const std::size_t k = it * nodes + f;
      ws.u[k] = fn.u(x, t);
      ws.ut[k] = fn.ut(x, t);
      if (fn.utt) ws.utt[k] = fn.utt(x, t);
    }
  }
  require_finite(ws.u, "u");
  require_finite(ws.ut, "ut");
  ws.residual_norm = discrete_residual(cs, grid, ws.u);
  return ws;
}

StandingWaveMode standing_wave_mode(double kappa, int mode, double rho0) {
  if (mode < 1) fail(ErrorKind::Domain, "mode must be a positive integer");
  if (!(kappa > 0.0) || !(rho0 > 0.0)) fail(ErrorKind::Domain, "kappa and rho0 must be positive");
  StandingWaveMode m;
  m.kappa = kappa;
  m.wavenumber = mode * std::numbers::pi / rho0;
  m.omega = m.wavenumber * std::sqrt(kappa);
  return m;
}

double wavenumber_for(double kappa, double omega) {
  if (!(kappa > 0.0)) fail(ErrorKind::Domain, "kappa must be positive");
  return omega / std::sqrt(kappa);
}

SolutionFunction standing_wave_function(const CoefficientSet& cs, int mode, double amplitude) {
  if (cs.dim != 1) fail(ErrorKind::Unsupported, "standing waves are one-dimensional");
  if (!cs.constant) fail(ErrorKind::Unsupported, "standing waves need constant coefficients");
  const Point o{};
  const double kappa = cs.A(o)[0][0];
  if (cs.a(o) != 0.0 || cs.b(o)[0] != 0.0 || cs.c(o) != 0.0)
    fail(ErrorKind::Unsupported, "standing waves need a = b = c = 0");
  const StandingWaveMode m = standing_wave_mode(kappa, mode, cs.rho0);
  const double w = m.omega;
  const double xi = m.wavenumber;
  SolutionFunction fn;
  fn.u = [=](const Point& x, double t) { return amplitude * std::cos(w * t) * std::sin(xi * x[0]); };
  fn.ut = [=](const Point& x, double t) { return -amplitude * w * std::sin(w * t) * std::sin(xi * x[0]); };
  fn.utt = [=](const Point& x, double t) { return -amplitude * w * w * std::cos(w * t) * std::sin(xi * x[0]); };
  return fn;
}

WaveSolution standing_wave(const CoefficientSet& cs, int mode, const SpaceTimeGrid& grid, double amplitude) {
  return sample_solution(cs, grid, standing_wave_function(cs, mode, amplitude));
}

WaveSolution solve_fd(const CoefficientSet& cs, std::span<const double> u0, std::span<const double> v0,
                      const SpaceTimeGrid& grid, double cfl) {
  if (cs.dim != grid.dim) fail(ErrorKind::Structural, "grid dimension does not match the coefficients");
  const std::size_t nodes = grid.nodes();
  if (u0.size() != nodes || v0.size() != nodes) fail(ErrorKind::Structural, "initial data size does not match the grid");
  require_finite(u0, "initial u");
  require_finite(v0, "initial ut");
  check_cfl(grid, cs.lambda, cfl);

  const DiscreteCoefficients dc = DiscreteCoefficients::sample(cs, grid.space);
  const std::vector<char> mask = active_mask(grid);
  const double dt = grid.dt;

  WaveSolution ws;
  ws.grid = grid;
  ws.source = SolutionSource::FiniteDifference;
  ws.u.assign(nodes * grid.nt, 0.0);
  ws.ut.assign(nodes * grid.nt, 0.0);

  double* first = ws.u.data();
  for (std::size_t f = 0; f < nodes; ++f)
    if (mask[f]) first[f] = u0[f];

  double* second = first + nodes;
  for (std::size_t f = 0; f < nodes; ++f) {
    if (!mask[f]) continue;
    const double acc = apply_elliptic(dc, first, f) - dc.damping[f] * v0[f];
    second[f] = first[f] + dt * v0[f] + 0.5 * dt * dt * acc;
  }

  for (int n = 1; n + 1 < grid.nt; ++n) {
    const double* prev = ws.u.data() + (n - 1) * nodes;
    const double* cur = prev + nodes;
    double* next = ws.u.data() + (n + 1) * nodes;
    bool finite = true;
    for (std::size_t f = 0; f < nodes; ++f) {
      if (!mask[f]) continue;
      const double half = 0.5 * dc.damping[f] * dt;
      next[f] = (2.0 * cur[f] - (1.0 - half) * prev[f] + dt * dt * apply_elliptic(dc, cur, f)) / (1.0 + half);
      finite = finite && std::isfinite(next[f]);
    }
    if (!finite) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "non-finite value at time step %d", n + 1);
      fail(ErrorKind::Instability, buf);
    }
  }

  const int last = grid.nt - 1;
  for (std::size_t f = 0; f < nodes; ++f) {
    if (!mask[f]) continue;
    auto U = [&](int it) { return ws.u[it * nodes + f]; };
    ws.ut[f] = v0[f];
    for (int it = 1; it < last; ++it) ws.ut[it * nodes + f] = (U(it + 1) - U(it - 1)) / (2.0 * dt);
    ws.ut[last * nodes + f] = (3.0 * U(last) - 4.0 * U(last - 1) + U(last - 2)) / (2.0 * dt);
  }
  ws.residual_norm = discrete_residual(cs, grid, ws.u);
  return ws;
}

double discrete_residual(const CoefficientSet& cs, const SpaceTimeGrid& grid, std::span<const double> u) {
  const std::size_t nodes = grid.nodes();
  if (u.size() != nodes * static_cast<std::size_t>(grid.nt)) fail(ErrorKind::Structural, "field size does not match the grid");
  const DiscreteCoefficients dc = DiscreteCoefficients::sample(cs, grid.space);
  const std::vector<char> mask = active_mask(grid);
  const double dt = grid.dt;
  double sum = 0.0;
  for (int it = 1; it + 1 < grid.nt; ++it) {
    const double* prev = u.data() + (it - 1) * nodes;
    const double* cur = prev + nodes;
    const double* next = cur + nodes;
    for (std::size_t f = 0; f < nodes; ++f) {
      if (!mask[f]) continue;
      const double r = (next[f] - 2.0 * cur[f] + prev[f]) / (dt * dt) +
                       dc.damping[f] * (next[f] - prev[f]) / (2.0 * dt) - apply_elliptic(dc, cur, f);
      sum += r * r;
    }
  }
  return std::sqrt(sum * grid.space.cell_volume() * dt);
}

double slice_l2_squared(const WaveSolution& ws, int it, double r) {
  const auto w = ball_weights(ws.grid.space, r);
  const auto u = ws.u_at(it);
  double s = 0.0;
  for (std::size_t f = 0; f < w.size(); ++f) s += w[f] * u[f] * u[f];
  return s;
}

double epsilon_of(const WaveSolution& ws, double r0) {
  const auto& g = ws.grid;
  if (!(r0 > 0.0) || r0 > g.rho0 * (1.0 + 1e-12)) fail(ErrorKind::Domain, "r0 must lie in (0, rho0]");
  if (r0 < g.dx()) fail(ErrorKind::Resolution, "r0 is smaller than one grid cell");
  const auto ws_x = ball_weights(g.space, r0);
  const auto ws_t = time_weights(g);
  double total = 0.0;
  for (int it = 0; it < g.nt; ++it) {
    const auto u = ws.u_at(it);
    double s = 0.0;
    for (std::size_t f = 0; f < ws_x.size(); ++f) s += ws_x[f] * u[f] * u[f];
    total += ws_t[it] * s;
  }
  const double eps2 = total / (std::pow(g.rho0, g.dim) * g.T);
  if (!std::isfinite(eps2)) fail(ErrorKind::Data, "non-finite data in epsilon");
  return std::sqrt(eps2);
}

double h_bound_of(const WaveSolution& ws) {
  const auto& g = ws.grid;
  if (ws.ut.size() != ws.u.size()) fail(ErrorKind::Data, "ut is missing");
  const auto w = ball_weights(g.space, g.rho0);
  const double su = std::pow(g.rho0, -g.dim);
  const double sv = std::pow(g.rho0, 1 - g.dim);
  double best = 0.0;
  for (int it = 0; it < g.nt; ++it) {
    const auto u = ws.u_at(it);
    const auto v = ws.ut_at(it);
    double a = 0.0;
    double b = 0.0;
    for (std::size_t f = 0; f < w.size(); ++f) {
      a += w[f] * u[f] * u[f];
      b += w[f] * v[f] * v[f];
    }
    const double h2 = su * a + sv * b;
    if (!std::isfinite(h2)) fail(ErrorKind::Data, "non-finite data in H");
    best = std::max(best, h2);
  }
  return std::sqrt(best);
}

std::vector<double> time_slice(const WaveSolution& ws, double t) {
  const auto& g = ws.grid;
  double s = 0.0;
  const int j = interval_of(g, t, s);
  const Hermite h = hermite(s);
  const auto u0 = ws.u_at(j);
  const auto u1 = ws.u_at(j + 1);
  const auto v0 = ws.ut_at(j);
  const auto v1 = ws.ut_at(j + 1);
  std::vector<double> out(g.nodes());
  for (std::size_t f = 0; f < out.size(); ++f)
    out[f] = h.h00 * u0[f] + h.h10 * g.dt * v0[f] + h.h01 * u1[f] + h.h11 * g.dt * v1[f];
  return out;
}

PointValue interpolate(const WaveSolution& ws, const Point& x, double t) {
  const auto& g = ws.grid;
  const auto& space = g.space;
  int base[kMaxDim] = {0, 0};
  double lw[kMaxDim][4] = {};
  for (int a = 0; a < g.dim; ++a) {
    const Axis& ax = space.axis(a);
    if (ax.count < 4) fail(ErrorKind::Structural, "interpolation needs at least 4 nodes per axis");
    const double pos = (x[a] - ax.lo) / ax.step;
    if (pos < -1e-9 || pos > ax.count - 1 + 1e-9) fail(ErrorKind::Domain, "point outside the grid");
    int b = static_cast<int>(std::floor(pos)) - 1;
    b = std::clamp(b, 0, ax.count - 4);
    base[a] = b;
    for (int i = 0; i < 4; ++i) {
      double w = 1.0;
      for (int j = 0; j < 4; ++j)
        if (j != i) w *= (pos - (b + j)) / static_cast<double>(i - j);
      lw[a][i] = w;
    }
  }
  auto spatial = [&](std::span<const double> field) {
    double acc = 0.0;
    if (g.dim == 1) {
      for (int i = 0; i < 4; ++i) acc += lw[0][i] * field[base[0] + i];
    } else {
      const std::size_t sy = space.stride(1);
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) acc += lw[0][i] * lw[1][j] * field[(base[1] + j) * sy + base[0] + i];
    }
    return acc;
  };
  double s = 0.0;
  const int j = interval_of(g, t, s);
  const double u0 = spatial(ws.u_at(j));
  const double u1 = spatial(ws.u_at(j + 1));
  const double v0 = spatial(ws.ut_at(j));
  const double v1 = spatial(ws.ut_at(j + 1));
  const Hermite h = hermite(s);
  PointValue out;
  out.u = h.h00 * u0 + h.h10 * g.dt * v0 + h.h01 * u1 + h.h11 * g.dt * v1;
  out.ut = (h.d00 * u0 + h.d01 * u1) / g.dt + h.d10 * v0 + h.d11 * v1;
  return out;
}

void write_csv(const WaveSolution& ws, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  std::fputs("x_index,t_index,u,ut\n", fp);
  const std::size_t nodes = ws.grid.nodes();
  for (int it = 0; it < ws.grid.nt; ++it)
    for (std::size_t f = 0; f < nodes; ++f)
      std::fprintf(fp, "%zu,%d,%.17g,%.17g\n", f, it, ws.u[it * nodes + f], ws.ut[it * nodes + f]);
  if (std::fclose(fp) != 0) fail(ErrorKind::Io, "failed writing " + path);
}

namespace {

constexpr std::uint32_t kBinaryVersion = 1;
static_assert(std::endian::native == std::endian::little, "binary export assumes a little-endian host");

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) fail(ErrorKind::Io, "truncated binary solution");
  return v;
}

}  // namespace

void write_binary(const WaveSolution& ws, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  out.write("UCPW", 4);
  put(out, kBinaryVersion);
  put(out, static_cast<std::uint32_t>(ws.grid.dim));
  put(out, static_cast<std::uint32_t>(ws.grid.nx()));
  put(out, static_cast<std::uint32_t>(ws.grid.nt));
  put(out, static_cast<std::uint32_t>(ws.source == SolutionSource::Analytic ? 0 : 1));
  put(out, ws.grid.rho0);
  put(out, ws.grid.T);
  put(out, ws.residual_norm);
  out.write(reinterpret_cast<const char*>(ws.u.data()), static_cast<std::streamsize>(ws.u.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(ws.ut.data()), static_cast<std::streamsize>(ws.ut.size() * sizeof(double)));
  if (!out) fail(ErrorKind::Io, "failed writing " + path);
}

WaveSolution read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "UCPW", 4) != 0) fail(ErrorKind::Io, path + " is not a solution file");
  if (get<std::uint32_t>(in) != kBinaryVersion) fail(ErrorKind::Io, "unsupported solution file version");
  const auto dim = get<std::uint32_t>(in);
  const auto nx = get<std::uint32_t>(in);
  const auto nt = get<std::uint32_t>(in);
  const auto source = get<std::uint32_t>(in);
  const double rho0 = get<double>(in);
  const double T = get<double>(in);
  WaveSolution ws;
  ws.grid = SpaceTimeGrid::make(static_cast<int>(dim), rho0, T, static_cast<int>(nx), static_cast<int>(nt));
  ws.residual_norm = get<double>(in);
  ws.source = source == 0 ? SolutionSource::Analytic : SolutionSource::FiniteDifference;
  const std::size_t total = ws.grid.nodes() * nt;
  ws.u.resize(total);
  ws.ut.resize(total);
  in.read(reinterpret_cast<char*>(ws.u.data()), static_cast<std::streamsize>(total * sizeof(double)));
  in.read(reinterpret_cast<char*>(ws.ut.data()), static_cast<std::streamsize>(total * sizeof(double)));
  if (!in) fail(ErrorKind::Io, "truncated binary solution");
  return ws;
}

}  // namespace ucp
