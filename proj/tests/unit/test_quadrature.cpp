#include <cmath>
#include <numbers>

#include "doctest.h"
#include "latbound/quadrature.hpp"

using latbound::integrate;

TEST_CASE("polynomials integrate exactly") {
  const auto r = integrate([](double x) { return x * x * x - 2.0 * x; }, -1.0, 2.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.75 - 3.0).epsilon(1e-14));
}

TEST_CASE("peaked integrand converges with a small error estimate") {
  const double s = 1e-3;
  const auto r = integrate(
      [s](double x) { return std::exp(-0.5 * (x - 0.3) * (x - 0.3) / (s * s)); },
      0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(s * std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-10));
  CHECK(r.abs_error <= 1e-12);
}

TEST_CASE("reversed and empty ranges") {
  const auto f = [](double x) { return std::cos(x); };
  CHECK(integrate(f, 1.0, 0.0).value == doctest::Approx(-std::sin(1.0)).epsilon(1e-14));
  CHECK(integrate(f, 0.5, 0.5).value == 0.0);
}

TEST_CASE("non-convergence is reported, not thrown") {
  latbound::QuadratureOptions opts;
  opts.max_intervals = 3;
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
  CHECK_FALSE(r.converged);
}
