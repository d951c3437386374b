#include "latbound/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "latbound/error.hpp"
#include "latbound/special.hpp"

namespace latbound {

double NoiseModel::sigma() const { return std::sqrt(sigma_sq); }

NoiseModel make_awgn(int n, double sigma) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be positive and finite");
  }
  return NoiseModel{n, sigma * sigma};
}

double log_norm_pdf(const NoiseModel& m, double rho) {
  if (rho < 0.0) throw Error(ErrorCode::InvalidArgument, "rho must be >= 0");
  const double n = m.n;
  if (rho == 0.0) {
    return m.n == 1 ? 0.5 * std::log(2.0 / (std::numbers::pi * m.sigma_sq))
                    : -std::numeric_limits<double>::infinity();
  }
  return (n - 1.0) * std::log(rho) - rho * rho / (2.0 * m.sigma_sq) -
         (0.5 * n - 1.0) * std::numbers::ln2 - 0.5 * n * std::log(m.sigma_sq) -
         std::lgamma(0.5 * n);
}

double norm_pdf(const NoiseModel& m, double rho) {
  return std::exp(log_norm_pdf(m, rho));
}

double norm_tail(const NoiseModel& m, double r) {
  if (r < 0.0) throw Error(ErrorCode::InvalidArgument, "r must be >= 0");
  return special::gamma_q(0.5 * m.n, r * r / (2.0 * m.sigma_sq));
}

double log_norm_tail(const NoiseModel& m, double r) {
  if (r < 0.0) throw Error(ErrorCode::InvalidArgument, "r must be >= 0");
  return special::log_gamma_q(0.5 * m.n, r * r / (2.0 * m.sigma_sq));
}

double log_unit_ball_volume(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  return 0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0);
}

double unit_ball_volume(int n) { return std::exp(log_unit_ball_volume(n)); }

double shell_volume(int n, double lo, double hi) {
  if (!(hi > lo) || lo < 0.0) return 0.0;
  const double outer = std::exp(log_unit_ball_volume(n) + n * std::log(hi));
  if (lo == 0.0) return outer;
  return -outer * std::expm1(n * std::log(lo / hi));
}

}  // namespace latbound
