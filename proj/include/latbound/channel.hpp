#pragma once

namespace latbound {

/// AWGN noise in n dimensions with per-dimension variance sigma_sq. The
/// norm of the noise vector follows a scaled chi distribution.
struct NoiseModel {
  int n = 1;
  double sigma_sq = 1.0;

  double sigma() const;
};

/// Validating constructor.
NoiseModel make_awgn(int n, double sigma);

/// Density of ||z|| at rho (and its log).
double norm_pdf(const NoiseModel& model, double rho);
double log_norm_pdf(const NoiseModel& model, double rho);

/// Pr(||z|| > r) = Q(n/2, r^2 / (2 sigma^2)), and its log.
double norm_tail(const NoiseModel& model, double r);
double log_norm_tail(const NoiseModel& model, double r);

/// Volume of the n-dimensional unit ball pi^(n/2) / Gamma(n/2 + 1).
double unit_ball_volume(int n);
double log_unit_ball_volume(int n);

/// Volume of the shell lo < |x| <= hi, computed without cancellation.
double shell_volume(int n, double lo, double hi);

}  // namespace latbound
