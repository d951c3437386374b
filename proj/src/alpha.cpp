#include "latbound/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latbound/channel.hpp"
#include "latbound/error.hpp"
#include "latbound/format.hpp"
#include "latbound/special.hpp"

namespace latbound {

namespace {

struct Group {
  std::size_t first;
  std::size_t last;
  special::NeumaierSum mass;
  special::NeumaierSum volume;

  double level() const { return mass.value() / volume.value(); }
};

std::size_t scope_for(const NormalizedSpectrum& spec, double lambda_max) {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw Error(ErrorCode::InvalidArgument, "lambda_max must be positive");
  }
  const std::size_t M = shells_within(spec, lambda_max * spec.scale());
  if (M == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "lambda_max is below the first shell of '" + spec.spectrum.name +
                    "'");
  }
  return M;
}

AlphaProfile skeleton(const NormalizedSpectrum& spec, std::size_t M) {
  AlphaProfile p;
  p.n = spec.spectrum.n;
  p.breakpoints.push_back(0.0);
  for (std::size_t j = 0; j < M; ++j) p.breakpoints.push_back(spec.spectrum.norm(j));
  return p;
}

std::vector<double> shell_volumes(const AlphaProfile& p) {
  std::vector<double> v(p.breakpoints.size() - 1);
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = shell_volume(p.n, p.breakpoints[j], p.breakpoints[j + 1]);
  }
  return v;
}

// Stack of equalized groups with strictly decreasing levels.
std::vector<Group> pour(const NormalizedSpectrum& spec,
                        const std::vector<double>& volumes) {
  std::vector<Group> stack;
  for (std::size_t j = 0; j < volumes.size(); ++j) {
    Group g{j, j, {}, {}};
    g.mass.add(static_cast<double>(spec.spectrum.entries[j].count));
    g.volume.add(volumes[j]);
    while (!stack.empty() && g.level() >= stack.back().level()) {
      const Group& below = stack.back();
      g.first = below.first;
      g.mass.add(below.mass.value());
      g.volume.add(below.volume.value());
      stack.pop_back();
    }
    stack.push_back(g);
  }
  return stack;
}

}  // namespace

double AlphaProfile::shell_mass(std::size_t j) const {
  return values.at(j) * shell_volume(n, breakpoints.at(j), breakpoints.at(j + 1));
}

double AlphaProfile::total_mass() const {
  special::NeumaierSum s;
  for (std::size_t j = 0; j < values.size(); ++j) s.add(shell_mass(j));
  return s.value();
}

double AlphaProfile::max() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::size_t shells_within(const NormalizedSpectrum& spec, double radius) {
  const double limit = radius * radius * (1.0 + 1e-12);
  std::size_t M = 0;
  for (const auto& e : spec.spectrum.entries) {
    if (e.norm_sq > limit) break;
    ++M;
  }
  return M;
}

AlphaProfile alpha_rng(const NormalizedSpectrum& spec, std::size_t M) {
  if (M == 0 || M > spec.spectrum.entries.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "M must be between 1 and the number of shells");
  }
  AlphaProfile p = skeleton(spec, M);
  const auto volumes = shell_volumes(p);
  for (std::size_t j = 0; j < M; ++j) {
    p.values.push_back(static_cast<double>(spec.spectrum.entries[j].count) /
                       volumes[j]);
  }
  return p;
}

AlphaProfile alpha_opt(const NormalizedSpectrum& spec, double lambda_max) {
  const std::size_t M = scope_for(spec, lambda_max);
  AlphaProfile p = skeleton(spec, M);
  const auto volumes = shell_volumes(p);
  p.values.assign(M, 0.0);
  for (const auto& g : pour(spec, volumes)) {
    const double level = g.level();
    for (std::size_t j = g.first; j <= g.last; ++j) p.values[j] = level;
  }
  return p;
}

WaterFillAllocation water_fill_allocation(const NormalizedSpectrum& spec,
                                          double lambda_max) {
  const std::size_t M = scope_for(spec, lambda_max);
  const auto volumes = shell_volumes(skeleton(spec, M));
  WaterFillAllocation a;
  a.M = M;
  a.contributions.resize(M);
  for (std::size_t j = 0; j < M; ++j) a.contributions[j].assign(j + 1, 0.0);
  a.shell_mass.assign(M, 0.0);

  // Within a group every prefix holds at most its share, so sending each
  // source's mass to the earliest unfilled target never moves mass outward.
  for (const auto& g : pour(spec, volumes)) {
    const double level = g.level();
    std::size_t target = g.first;
    double room = level * volumes[target];
    for (std::size_t src = g.first; src <= g.last; ++src) {
      const double N = static_cast<double>(spec.spectrum.entries[src].count);
      auto& row = a.contributions[src];
      double left = N;
      while (true) {
        if (target == src) {
          row[target] += left;
          room -= left;
          break;
        }
        const double x = std::min(left, room);
        row[target] += x;
        room -= x;
        left -= x;
        if (left <= 0.0) break;
        ++target;
        room = level * volumes[target];
      }
      if (room <= 1e-12 * level * volumes[target] && target < g.last) {
        ++target;
        room = level * volumes[target];
      }
      // Make the row sum exact by absorbing rounding into the last piece.
      std::size_t last = 0;
      special::NeumaierSum rest;
      for (std::size_t i = 0; i <= src; ++i) {
        if (row[i] > 0.0) last = i;
      }
      for (std::size_t i = 0; i <= src; ++i) {
        if (i != last) rest.add(row[i]);
      }
      row[last] = N - rest.value();
    }
  }
  for (std::size_t j = 0; j < M; ++j) {
    for (std::size_t i = 0; i <= j; ++i) a.shell_mass[i] += a.contributions[j][i];
  }
  return a;
}

bool cumulative_check(const NormalizedSpectrum& spec, const AlphaProfile& profile) {
  if (profile.shells() == 0) return false;
  const double top = profile.breakpoints.back();
  special::NeumaierSum spectral;
  for (const auto& e : spec.spectrum.entries) {
    const double lambda = std::sqrt(e.norm_sq);
    if (lambda > top * (1.0 + 1e-12)) break;
    spectral.add(static_cast<double>(e.count));
    special::NeumaierSum smoothed;
    for (std::size_t i = 0; i < profile.shells(); ++i) {
      const double lo = profile.breakpoints[i];
      if (lo >= lambda) break;
      const double hi = std::min(profile.breakpoints[i + 1], lambda);
      smoothed.add(profile.values[i] * shell_volume(profile.n, lo, hi));
    }
    if (spectral.value() > smoothed.value() * (1.0 + 1e-12)) return false;
  }
  return true;
}

double profile_max(const AlphaProfile& profile, double x_max) {
  double m = 0.0;
  for (std::size_t j = 0; j < profile.shells(); ++j) {
    if (profile.breakpoints[j] < x_max) m = std::max(m, profile.values[j]);
  }
  return m;
}

std::string profile_to_csv(const AlphaProfile& p) {
  std::ostringstream out;
  out << "shell_index,lambda_lo,lambda_hi,alpha_value\n";
  for (std::size_t j = 0; j < p.shells(); ++j) {
    out << j + 1 << ',' << format_double(p.breakpoints[j]) << ','
        << format_double(p.breakpoints[j + 1]) << ','
        << format_double(p.values[j]) << '\n';
  }
  return out.str();
}

}  // namespace latbound
