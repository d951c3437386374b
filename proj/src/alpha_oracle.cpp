#include <algorithm>

#include "latbound/alpha.hpp"
#include "latbound/channel.hpp"
#include "latbound/error.hpp"

namespace latbound {

AlphaProfile lp_oracle(const NormalizedSpectrum& spec, double lambda_max) {
  const std::size_t M = shells_within(spec, lambda_max * spec.scale());
  if (M == 0) throw Error(ErrorCode::InvalidArgument, "no shells in scope");
  if (M > 6) throw Error(ErrorCode::InvalidArgument, "lp_oracle supports M <= 6");

  const int n = spec.spectrum.n;
  std::vector<double> lo(M), hi(M), volume(M), mass(M);
  for (std::size_t j = 0; j < M; ++j) {
    lo[j] = j == 0 ? 0.0 : spec.spectrum.norm(j - 1);
    hi[j] = spec.spectrum.norm(j);
    volume[j] = shell_volume(n, lo[j], hi[j]);
    mass[j] = static_cast<double>(spec.spectrum.entries[j].count);
  }

  // Sources in J can only land in shells 1..max(J), so the level must cover
  // every such subset; the largest of these ratios is attained.
  double level = 0.0;
  for (unsigned subset = 1; subset < (1u << M); ++subset) {
    double m = 0.0;
    std::size_t top = 0;
    for (std::size_t j = 0; j < M; ++j) {
      if (subset & (1u << j)) {
        m += mass[j];
        top = j;
      }
    }
    double v = 0.0;
    for (std::size_t i = 0; i <= top; ++i) v += volume[i];
    level = std::max(level, m / v);
  }

  std::vector<double> received(M, 0.0);
  std::size_t target = 0;
  for (std::size_t src = 0; src < M; ++src) {
    double left = mass[src];
    while (left > 0.0) {
      const double room = level * volume[target] - received[target];
      if (target == src || room >= left) {
        received[target] += left;
        left = 0.0;
      } else {
        received[target] += std::max(room, 0.0);
        left -= std::max(room, 0.0);
        ++target;
      }
    }
  }

  AlphaProfile p;
  p.n = n;
  p.breakpoints.push_back(0.0);
  for (std::size_t j = 0; j < M; ++j) {
    p.breakpoints.push_back(hi[j]);
    p.values.push_back(received[j] / volume[j]);
  }
  return p;
}

}  // namespace latbound
