#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latbound/channel.hpp"
#include "latbound/spectrum.hpp"

namespace latbound {

struct CriticalRates {
  double delta_star = 0.0;  // capacity NLD, 1/2 ln(1 / (2 pi e sigma^2))
  double delta_cr = 0.0;    // delta_star - 1/2 ln 2
};

CriticalRates critical_rates(const NoiseModel& model);

/// Random-coding exponent of the unrestricted AWGN channel, nats. Below
/// delta_cr the straight line defaults to the constant 1/2 ln(e/4), tangent
/// to the middle branch; `literal_line` uses ln(e/4) instead.
double poltyrev_exponent(double delta, const NoiseModel& model,
                         bool literal_line = false);

/// Volume-to-noise ratio e^(-2 delta) / (2 pi e sigma^2).
double vnr(const NoiseModel& model, double log_density);
double vnr_db(const NoiseModel& model, double log_density);
double vnr_db_to_sigma(double db, double log_density);

struct ExponentPoint {
  std::string name;
  int n = 0;
  double delta = 0.0;
  double alpha_n = 0.0;
  double nu = 0.0;
  double exponent = 0.0;
};

enum class RPolicy {
  DmhsOptimized,   // alpha that dmhs_bound settles on
  FixedLambdaMax,  // profile max up to a normalized radius
  FirstShell,      // first shell only
};

RPolicy parse_policy(const std::string& name);

struct NuOptions {
  RPolicy policy = RPolicy::DmhsOptimized;
  double lambda_max = 0.0;  // normalized, FixedLambdaMax only
  /// Noise for the exponent: either sigma or a VNR (dB) relative to each
  /// lattice's own density. VNR 3 dB when neither is set.
  std::optional<double> sigma;
  std::optional<double> vnr_db;
  bool literal_line = false;
};

ExponentPoint nu_point(const DistanceSpectrum& spec, const NuOptions& options);
std::vector<ExponentPoint> nu_series(const std::vector<DistanceSpectrum>& specs,
                                     const NuOptions& options);

struct FirstShellGap {
  double value = 0.0;  // (1/n) ln(N_1 / (e^(n delta) V_n lambda_1^n))
  bool rng_monotone = false;
};

FirstShellGap gap_to_capacity_firstshell(const DistanceSpectrum& spec);

/// "n,delta,alpha_n,nu,exponent"
std::string exponent_points_to_csv(const std::vector<ExponentPoint>& points);

}  // namespace latbound
