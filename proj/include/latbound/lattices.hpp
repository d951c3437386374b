#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latbound/spectrum.hpp"

namespace latbound {

/// Standard generators for Z1..Z24, D4, E8, BW16 (Barnes-Wall, min norm 4)
/// and Leech (min norm 4, unimodular). Throws Error(UnknownLattice).
LatticeBasis builtin_lattice(const std::string& name);

/// Names accepted by builtin_lattice, in a stable order.
std::vector<std::string> builtin_lattice_names();

/// Generator rows of the extended binary Golay code [24, 12, 8].
std::vector<std::vector<int>> golay_generator();

/// Upper-triangular basis (rows) of the integer lattice spanned by
/// `generators`, which must contain modulus * Z^n. Entries are reduced modulo
/// `modulus` as elimination proceeds so nothing overflows.
std::vector<std::vector<std::int64_t>> integer_basis(
    std::vector<std::vector<std::int64_t>> generators, int n,
    std::int64_t modulus);

struct EnumerationOptions {
  std::uint64_t max_vectors = 100'000'000;
  int threads = 1;
};

/// Every nonzero lattice vector with norm <= radius, grouped by squared norm.
/// Fincke-Pohst over an LLL-reduced Cholesky factor; norms are grouped
/// exactly when the Gram matrix is rational with a small denominator and
/// with 1e-9 relative tolerance otherwise.
DistanceSpectrum enumerate_spectrum(const LatticeBasis& basis, double radius,
                                    const EnumerationOptions& options = {});

/// Brute force over the coordinate box |u_i| <= box. Test oracle only.
DistanceSpectrum brute_force_spectrum(const LatticeBasis& basis, double radius,
                                      int box);

}  // namespace latbound
