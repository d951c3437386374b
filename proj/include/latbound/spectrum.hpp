#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace latbound {

/// A lattice {G u : u in Z^n}; the columns of `generator` are basis vectors.
struct LatticeBasis {
  std::string name;
  int n = 0;
  Eigen::MatrixXd generator;
  double log_det = 0.0;  // ln |det G|
};

/// Checks shape, nonsingularity and log_det consistency (1e-9 relative).
void validate(const LatticeBasis& basis);

struct SpectrumEntry {
  double norm_sq = 0.0;
  std::uint64_t count = 0;

  bool operator==(const SpectrumEntry&) const = default;
};

/// Unique nonzero squared norms with multiplicities. Every lattice norm up to
/// complete_radius (a norm, not squared) is present; the origin is implicit.
struct DistanceSpectrum {
  std::string name;
  int n = 0;
  double log_density = 0.0;  // delta = -ln det / n
  double complete_radius = 0.0;
  std::vector<SpectrumEntry> entries;

  double log_det() const { return -n * log_density; }
  double norm(std::size_t j) const;  // lambda_j, 0-based

  bool operator==(const DistanceSpectrum&) const = default;
};

/// Unit-density copy: norms scaled by e^delta, log_density zero. The source
/// log density is kept so callers can map radii back.
struct NormalizedSpectrum {
  DistanceSpectrum spectrum;
  double source_log_density = 0.0;

  double scale() const;  // e^delta
};

/// Throws Error(Schema) on non-increasing norms, zero counts, nonpositive or
/// non-finite values, or an entry beyond complete_radius.
void validate(const DistanceSpectrum& spectrum);

NormalizedSpectrum normalize(const DistanceSpectrum& spectrum);

/// First `shells` entries, with the horizon pulled in to the last kept norm.
DistanceSpectrum truncate_shells(const DistanceSpectrum& spectrum,
                                 std::size_t shells);

/// Spectrum file (JSON). See README for the schema.
DistanceSpectrum load_spectrum(const std::string& path);
void save_spectrum(const DistanceSpectrum& spectrum, const std::string& path);
std::string spectrum_to_json(const DistanceSpectrum& spectrum);
DistanceSpectrum spectrum_from_json(const std::string& text);
std::string spectrum_to_csv(const DistanceSpectrum& spectrum);

/// Lattice basis file: {"name": .., "basis": [[v1], [v2], ...]} where each
/// inner list is one basis vector.
LatticeBasis load_basis(const std::string& path);

}  // namespace latbound
