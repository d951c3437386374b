#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latbound/channel.hpp"
#include "latbound/quadrature.hpp"
#include "latbound/spectrum.hpp"

namespace latbound {

enum class BoundMethod { MHS, DMHS, eDMHS, SUB, UB, SLB };

std::string to_string(BoundMethod method);
/// Case-insensitive; throws Error(InvalidArgument).
BoundMethod parse_method(const std::string& name);

struct BoundDiagnostics {
  std::size_t shells_used = 0;
  std::optional<double> alpha_used;
  int iterations = 0;
  double quadrature_error = 0.0;
  bool flagged = false;          // quadrature did not reach 1e-10
  bool truncated = false;        // union bound tail visibly cut by the horizon
  bool horizon_limited = false;  // optimizer stopped at complete_radius / 2
  double raw_total = 0.0;        // ubt + sbt before clamping
};

struct BoundResult {
  BoundMethod method = BoundMethod::MHS;
  double r_opt = 0.0;
  double ubt = 0.0;
  double sbt = 0.0;
  double total = 0.0;
  BoundDiagnostics diagnostics;
};

struct BoundOptions {
  int max_iterations = 100;
  /// DMHS: take alpha from the profile over the whole spectrum instead of
  /// rebuilding it for each radius.
  bool superset_alpha = false;
  /// eDMHS: extra radii to evaluate alongside the optimizer's candidates.
  std::vector<double> r_grid;
  QuadratureOptions quadrature;
};

/// Probability that an isotropic noise of norm rho lands closer to a point
/// at distance x_norm: (1 - (x/2rho)^2)^((n-1)/2), zero beyond x = 2 rho.
double pairwise_bound(int n, double x_norm, double rho);

BoundResult mhs_bound(int n, double log_density, const NoiseModel& model,
                      const BoundOptions& options = {});
BoundResult dmhs_bound(const DistanceSpectrum& spec, const NoiseModel& model,
                       const BoundOptions& options = {});
BoundResult edmhs_bound(const DistanceSpectrum& spec, const NoiseModel& model,
                        const BoundOptions& options = {});
BoundResult sub_bound(const DistanceSpectrum& spec, const NoiseModel& model,
                      const BoundOptions& options = {});
BoundResult union_bound(const DistanceSpectrum& spec, const NoiseModel& model);
BoundResult sphere_lower_bound(int n, double log_density, const NoiseModel& model);

/// Any method; MHS and SLB use only the spectrum's n and log density.
BoundResult evaluate_bound(BoundMethod method, const DistanceSpectrum& spec,
                           const NoiseModel& model,
                           const BoundOptions& options = {});

/// Alpha the DMHS bound uses at radius r: the largest water-filled level over
/// shells with norm <= max(2r, lambda_1).
double dmhs_alpha(const NormalizedSpectrum& spec, double r);

/// Fixed-radius evaluations. They check the horizon but do not optimize.
BoundResult dmhs_at(const DistanceSpectrum& spec, const NoiseModel& model,
                    double r, const BoundOptions& options = {});
BoundResult edmhs_at(const DistanceSpectrum& spec, const NoiseModel& model,
                     double r, const BoundOptions& options = {});
BoundResult sub_at(const DistanceSpectrum& spec, const NoiseModel& model,
                   double r, const BoundOptions& options = {});

}  // namespace latbound
