#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "latbound/channel.hpp"
#include "latbound/error.hpp"

using namespace latbound;

namespace {

double boost_integral(const NoiseModel& m, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(
      [&](double x) { return norm_pdf(m, x); }, a, b, 15, 1e-14);
}

}  // namespace

TEST_CASE("chi density closed forms") {
  CHECK(norm_pdf(make_awgn(2, 1.0), 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(norm_pdf(make_awgn(1, 1.0), 0.0) ==
        doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-14));
  CHECK(norm_pdf(make_awgn(3, 1.0), 0.0) == 0.0);
}

TEST_CASE("density integrates to one") {
  for (int n : {1, 2, 8, 24}) {
    const auto m = make_awgn(n, 1.0);
    CHECK(boost_integral(m, 0.0, 20.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("tail plus head is one over a radius sweep") {
  for (int n : {2, 4, 8, 16, 24}) {
    for (double sigma : {0.2, 1.0}) {
      const auto m = make_awgn(n, sigma);
      for (double k : {0.1, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const double r = k * sigma * std::sqrt(n);
        CHECK(norm_tail(m, r) + boost_integral(m, 0.0, r) ==
              doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("tail values") {
  CHECK(norm_tail(make_awgn(2, 1.0), 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(norm_tail(make_awgn(7, 0.3), 0.0) == 1.0);
  const auto m = make_awgn(24, 0.2);
  CHECK(norm_tail(m, 1.2) == doctest::Approx(boost_integral(m, 1.2, 5.0)).epsilon(1e-9));
  CHECK(norm_tail(m, 1.2) ==
        doctest::Approx(boost::math::gamma_q(12.0, 1.44 / 0.08)).epsilon(1e-12));
  CHECK(std::exp(log_norm_tail(m, 1.2)) == doctest::Approx(norm_tail(m, 1.2)).epsilon(1e-12));
}

TEST_CASE("density peaks near sigma sqrt(n - 1)") {
  const auto m = make_awgn(10, 0.5);
  const double mode = 0.5 * 3.0;
  CHECK(norm_pdf(m, mode) > norm_pdf(m, 0.99 * mode));
  CHECK(norm_pdf(m, mode) > norm_pdf(m, 1.01 * mode));
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  const double v24 = std::pow(std::numbers::pi, 12) / boost::math::tgamma(13.0);
  CHECK(unit_ball_volume(24) == doctest::Approx(v24).epsilon(1e-12));
  CHECK(unit_ball_volume(24) == doctest::Approx(1.92957e-3).epsilon(1e-5));
  for (int n = 3; n <= 64; ++n) {
    CHECK(unit_ball_volume(n) ==
          doctest::Approx(unit_ball_volume(n - 2) * 2.0 * std::numbers::pi / n).epsilon(1e-12));
  }
}

TEST_CASE("shell volume avoids cancellation") {
  const double v = shell_volume(24, 1.0, 1.0 + 1e-10);
  CHECK(v == doctest::Approx(unit_ball_volume(24) * 24e-10).epsilon(1e-8));
  CHECK(shell_volume(2, 1.0, 2.0) == doctest::Approx(3.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("invalid noise parameters") {
  CHECK_THROWS_AS(make_awgn(0, 1.0), Error);
  CHECK_THROWS_AS(make_awgn(2, 0.0), Error);
  CHECK_THROWS_AS(norm_tail(make_awgn(2, 1.0), -1.0), Error);
}
