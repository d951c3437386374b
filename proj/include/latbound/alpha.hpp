#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "latbound/spectrum.hpp"

namespace latbound {

/// Piecewise-constant density ratio on normalized shells
/// (breakpoints[j], breakpoints[j+1]], with breakpoints[0] = 0.
struct AlphaProfile {
  int n = 0;
  std::vector<double> breakpoints;
  std::vector<double> values;

  std::size_t shells() const { return values.size(); }
  double shell_mass(std::size_t j) const;  // alpha_j times the shell volume
  double total_mass() const;
  double max() const;
};

/// contributions[j][i] is the mass shell j hands to shell i (i <= j).
struct WaterFillAllocation {
  std::size_t M = 0;
  std::vector<std::vector<double>> contributions;
  std::vector<double> shell_mass;
};

/// Number of normalized norms within `normalized_radius` (1e-12 relative
/// slack so a radius equal to a norm includes it).
std::size_t shells_within(const NormalizedSpectrum& spec,
                          double normalized_radius);

/// Each shell's count spread evenly over its own volume, first M shells.
AlphaProfile alpha_rng(const NormalizedSpectrum& spec, std::size_t M);

/// Min-max water-filled profile over the shells with norm <= lambda_max,
/// where lambda_max is in the spectrum's own (unnormalized) units.
AlphaProfile alpha_opt(const NormalizedSpectrum& spec, double lambda_max);

/// The mass transport realizing alpha_opt.
WaterFillAllocation water_fill_allocation(const NormalizedSpectrum& spec,
                                          double lambda_max);

/// Exact min-max level by checking every subset of sources (M <= 6) and a
/// greedy allocation achieving it. Test oracle for alpha_opt.
AlphaProfile lp_oracle(const NormalizedSpectrum& spec, double lambda_max);

/// True when the profile's cumulative mass dominates the spectrum's at every
/// shell boundary the profile covers.
bool cumulative_check(const NormalizedSpectrum& spec, const AlphaProfile& profile);

/// Largest value over shells that intersect (0, x_max] (normalized units).
double profile_max(const AlphaProfile& profile, double x_max);

/// "shell_index,lambda_lo,lambda_hi,alpha_value"
std::string profile_to_csv(const AlphaProfile& profile);

}  // namespace latbound
