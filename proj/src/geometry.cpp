#include "latbound/geometry.hpp"

#include <cmath>

#include "latbound/channel.hpp"
#include "latbound/error.hpp"
#include "latbound/special.hpp"

namespace latbound::geometry {

double cap_volume(int n, double radius, double offset) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(radius > 0.0)) return 0.0;
  const double ball = std::exp(log_unit_ball_volume(n) + n * std::log(radius));
  if (offset >= radius) return 0.0;
  if (offset <= -radius) return ball;
  const double s = std::abs(offset) / radius;
  // I_{1-s^2}((n+1)/2, 1/2) with both arguments formed without cancellation.
  const double small = 0.5 * ball *
                       special::incomplete_beta(0.5 * (n + 1), 0.5,
                                                (1.0 - s) * (1.0 + s), s * s);
  return offset >= 0.0 ? small : ball - small;
}

double lens_volume(int n, double R, double rho) {
  if (!(rho > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "lens_volume requires rho > 0");
  }
  if (!(R > 0.0)) return 0.0;
  if (R >= 2.0 * rho) {
    return std::exp(log_unit_ball_volume(n) + n * std::log(rho));
  }
  // Radical hyperplane of the two spheres, measured from the origin.
  const double plane = R * R / (2.0 * rho);
  return cap_volume(n, R, plane) + cap_volume(n, rho, rho - plane);
}

double shell_ball_volume(int n, double lo, double hi, double rho) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::InvalidArgument,
                "shell_ball_volume requires 0 <= lo < hi");
  }
  if (lo >= 2.0 * rho) return 0.0;
  const double v = lens_volume(n, hi, rho) - lens_volume(n, lo, rho);
  return v > 0.0 ? v : 0.0;
}

}  // namespace latbound::geometry
