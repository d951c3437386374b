#include "latbound/spectrum.hpp"

#include <cmath>

#include "latbound/error.hpp"

namespace latbound {

void validate(const LatticeBasis& basis) {
  if (basis.n < 1 || basis.generator.rows() != basis.n ||
      basis.generator.cols() != basis.n) {
    throw Error(ErrorCode::InvalidArgument,
                "generator must be an n x n matrix with n >= 1");
  }
  if (!basis.generator.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "generator has non-finite entries");
  }
  const double det = basis.generator.fullPivLu().determinant();
  if (!(std::abs(det) > 0.0)) {
    throw Error(ErrorCode::SingularBasis, "generator of '" + basis.name +
                                              "' is singular");
  }
  const double log_det = std::log(std::abs(det));
  if (std::abs(log_det - basis.log_det) >
      1e-9 * std::max(1.0, std::abs(log_det))) {
    throw Error(ErrorCode::InvalidArgument,
                "log_det of '" + basis.name + "' inconsistent with generator");
  }
}

double DistanceSpectrum::norm(std::size_t j) const {
  return std::sqrt(entries.at(j).norm_sq);
}

double NormalizedSpectrum::scale() const {
  return std::exp(source_log_density);
}

void validate(const DistanceSpectrum& s) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::Schema, "spectrum '" + s.name + "': " + why);
  };
  if (s.n < 1) fail("dimension must be >= 1");
  if (!std::isfinite(s.log_density)) fail("log_density must be finite");
  if (!(s.complete_radius > 0.0) || !std::isfinite(s.complete_radius)) {
    fail("complete_radius must be positive and finite");
  }
  double previous = 0.0;
  for (const auto& e : s.entries) {
    if (!(e.norm_sq > 0.0) || !std::isfinite(e.norm_sq)) {
      fail("norm_sq must be positive and finite");
    }
    if (!(e.norm_sq > previous)) fail("norms must be strictly increasing");
    if (e.count == 0) fail("counts must be positive");
    previous = e.norm_sq;
  }
  if (!s.entries.empty() &&
      s.entries.back().norm_sq >
          s.complete_radius * s.complete_radius * (1.0 + 1e-12)) {
    fail("entry beyond complete_radius");
  }
}

NormalizedSpectrum normalize(const DistanceSpectrum& s) {
  NormalizedSpectrum out{s, s.log_density};
  const double sq_scale = std::exp(2.0 * s.log_density);
  for (auto& e : out.spectrum.entries) e.norm_sq *= sq_scale;
  out.spectrum.complete_radius *= std::exp(s.log_density);
  out.spectrum.log_density = 0.0;
  return out;
}

DistanceSpectrum truncate_shells(const DistanceSpectrum& s, std::size_t shells) {
  if (shells == 0 || shells >= s.entries.size()) return s;
  DistanceSpectrum out = s;
  out.entries.resize(shells);
  out.complete_radius = std::sqrt(out.entries.back().norm_sq);
  return out;
}

}  // namespace latbound
