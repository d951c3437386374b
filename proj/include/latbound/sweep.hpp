#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latbound/bounds.hpp"

namespace latbound {

struct SweepPoint {
  double sigma = 0.0;
  double vnr_db = 0.0;
  BoundMethod method = BoundMethod::MHS;
  std::optional<BoundResult> result;
  std::string error;  // set when result is empty
};

/// Evaluates every method at every sigma. Rows come back sigma-major in the
/// order given, independent of `threads`. Failures are recorded per row.
std::vector<SweepPoint> sweep(const DistanceSpectrum& spec,
                              const std::vector<BoundMethod>& methods,
                              const std::vector<double>& sigmas,
                              const BoundOptions& options = {}, int threads = 1);

/// "start:stop:count", count >= 1 points inclusive of both ends.
std::vector<double> parse_grid(const std::string& text);

/// "sigma,vnr_db,method,r_opt,ubt,sbt,total,M_used,alpha_used,iterations,status"
std::string sweep_to_csv(const std::vector<SweepPoint>& rows);
std::string sweep_to_json(const std::vector<SweepPoint>& rows);

}  // namespace latbound
