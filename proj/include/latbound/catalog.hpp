#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "latbound/spectrum.hpp"

namespace latbound {

std::vector<std::string> catalog_names();

/// Tabulated spectrum of D4, E8, BW16 or Leech in the builtin scaling.
/// `shells` = 0 returns everything tabulated; otherwise the first `shells`.
DistanceSpectrum catalog_spectrum(const std::string& name, std::size_t shells = 0);

}  // namespace latbound
