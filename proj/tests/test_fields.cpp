#include <cmath>

#include "doctest.h"
#include "ucp/error.hpp"
#include "ucp/fields.hpp"

using namespace ucp;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("identity coefficients pass") {
  PresetSpec p;
  const auto v = validate(make_coefficients(p), 64);
  CHECK(v.pass());
  CHECK(v.lambda_hat == 1.0);
  CHECK(v.Lambda_hat == 0.0);
  CHECK(v.Lambda1_hat == 0.0);
}

TEST_CASE("diag(2) breaks the upper ellipticity bound") {
  PresetSpec p;
  p.preset = FieldPreset::Diag;
  p.diag = {2.0};
  const auto v = validate(make_coefficients(p), 64);
  CHECK_FALSE(v.pass());
  CHECK_FALSE(v.ellipticity_upper.pass);
  CHECK(v.ellipticity_lower.pass);
  CHECK(v.ellipticity_upper.measured == 2.0);
  CHECK(v.lambda_hat == 0.5);
}

TEST_CASE("lipschitz bump estimate") {
  PresetSpec p;
  p.preset = FieldPreset::LipschitzBump;
  p.kappa = 1.0;
  p.slope = 0.4;
  p.lambda = 0.7;
  const auto v = validate(make_coefficients(p), 256);
  CHECK(v.Lambda_hat == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(v.pass());
  const auto w = v.lipschitz.witness;
  const auto w2 = v.lipschitz.witness_pair;
  CHECK(std::abs(std::abs(w[0]) - std::abs(w2[0])) == doctest::Approx(std::abs(w[0] - w2[0])));
}

TEST_CASE("lower-order bound and its witness") {
  PresetSpec p;
  p.dim = 2;
  p.a = 0.5;
  p.b = {0.3, 0.4};
  p.c = -0.25;
  p.T = 2.0;
  p.Lambda1 = 1.0;
  const auto v = validate(make_coefficients(p), 64);
  // T|a| + T^2/rho0 |b| + T^2 |c| = 1 + 2 + 1
  CHECK(v.Lambda1_hat == doctest::Approx(4.0));
  CHECK_FALSE(v.lower_order.pass);
}

TEST_CASE("structural and data errors") {
  CoefficientSet cs = make_coefficients(PresetSpec{.dim = 2});
  cs.A = [](const Point&) { return Matrix{{{1.0, 0.2}, {0.0, 1.0}}}; };
  CHECK(kind_of([&] { validate(cs, 16); }) == ErrorKind::Structural);
  cs.A = [](const Point&) { return Matrix{{{1.0, 0.0}, {0.0, std::nan("")}}}; };
  CHECK(kind_of([&] { validate(cs, 16); }) == ErrorKind::Data);
  CHECK(kind_of([] { validate(make_coefficients(PresetSpec{}), 1); }) == ErrorKind::Domain);
  CHECK(kind_of([] { parse_field_preset("bogus"); }) == ErrorKind::Configuration);
}

TEST_CASE("validation is deterministic for a fixed seed") {
  PresetSpec p;
  p.preset = FieldPreset::LipschitzBump;
  p.dim = 2;
  p.lambda = 0.7;
  const auto cs = make_coefficients(p);
  const auto a = validate(cs, 128, 7);
  const auto b = validate(cs, 128, 7);
  CHECK(a.Lambda_hat == b.Lambda_hat);
  CHECK(a.lambda_hat == b.lambda_hat);
  CHECK(sample_ball(2, 1.0, 50, 3) == sample_ball(2, 1.0, 50, 3));
  for (const auto& x : sample_ball(2, 1.0, 50, 3)) CHECK(norm(x, 2) < 1.0);
}

TEST_CASE("rescale_to_time") {
  PresetSpec p;
  p.preset = FieldPreset::LipschitzBump;
  p.lambda = 0.7;
  p.a = 0.2;
  p.c = 0.1;
  const auto cs = make_coefficients(p);

  const auto id = rescale_to_time(cs, 0.0);
  CHECK(id.scale.lambda0 == cs.lambda);
  CHECK(id.scale.Lambda0 == cs.Lambda);
  for (double x : {-0.9, -0.3, 0.0, 0.5}) {
    const Point y{x, 0.0};
    CHECK(id.coefficients.A(y)[0][0] == cs.A(y)[0][0]);
    CHECK(id.coefficients.a(y) == cs.a(y));
    CHECK(id.coefficients.c(y) == cs.c(y));
  }

  PresetSpec q = p;
  q.T = 2.0;
  q.lambda = 0.5;
  q.slope = 0.0;
  q.kappa = 1.0;
  const auto r = rescale_to_time(make_coefficients(q), 0.0);
  CHECK(r.scale.lambda0 == doctest::Approx(0.125));

  const auto half = rescale_to_time(make_coefficients(q), 1.0);
  CHECK(half.scale.rho_t0 == doctest::Approx(0.5));
  CHECK(half.scale.T_t0 == doctest::Approx(1.0));
  CHECK(half.coefficients.rho0 == 1.0);
  CHECK(half.coefficients.T == 1.0);
  CHECK(half.coefficients.A(Point{0.3, 0.0})[0][0] == doctest::Approx(4.0));
  CHECK(half.coefficients.a(Point{}) == doctest::Approx(1.0 * 0.2));
  CHECK(half.coefficients.c(Point{}) == doctest::Approx(1.0 * 0.1));

  CHECK(kind_of([&] { rescale_to_time(cs, 1.0); }) == ErrorKind::Domain);
  CHECK(kind_of([&] { rescale_to_time(cs, -1.5); }) == ErrorKind::Domain);
}

TEST_CASE("rescaled coefficients satisfy the rescaled hypotheses") {
  for (double rho0 : {1.0, 2.0}) {
    for (double T : {0.5, 1.0, 3.0}) {
      PresetSpec p;
      p.preset = FieldPreset::LipschitzBump;
      p.kappa = 1.2;
      p.slope = 0.3;
      p.lambda = 1.0 / 1.5;
      p.Lambda = 0.3;
      p.rho0 = rho0;
      p.T = T;
      p.a = 0.1 / T;
      p.c = 0.1 / (T * T);
      p.b = {0.1 * rho0 / (T * T), 0.0};
      p.Lambda1 = 0.3;
      const auto cs = make_coefficients(p);
      REQUIRE(validate(cs, 128).pass());
      for (double frac : {0.0, 0.25, 0.5, -0.75}) {
        const auto r = rescale_to_time(cs, frac * T);
        const auto v = validate(r.coefficients, 128);
        CHECK(v.ellipticity_lower.pass);
        CHECK(v.ellipticity_upper.pass);
        CHECK(v.lipschitz.pass);
        CHECK(v.lower_order.pass);
      }
    }
  }
}
