#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latbound/channel.hpp"
#include "latbound/spectrum.hpp"

namespace latbound {

struct SimResult {
  std::string lattice;
  double sigma = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double p_hat = 0.0;
  double ci95_halfwidth = 0.0;
  std::uint64_t seed = 0;
};

/// True for Zn, D4 and E8 in their builtin coordinates.
bool has_exact_decoder(const std::string& lattice);

/// Nearest lattice point to y (ties broken arbitrarily).
std::vector<double> closest_point(const std::string& lattice,
                                  const std::vector<double>& y);

/// Sends the zero point through AWGN and decodes exactly. Trial t draws its
/// noise from a generator keyed by (seed, t), so the result does not depend
/// on `threads`.
SimResult simulate(const LatticeBasis& lattice, const NoiseModel& model,
                   std::uint64_t trials, std::uint64_t seed, int threads = 1);

/// "lattice,sigma,trials,errors,p_hat,ci95,seed"
std::string sim_results_to_csv(const std::vector<SimResult>& results);

}  // namespace latbound
