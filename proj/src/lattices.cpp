#include <cmath>
#include <cstdlib>
#include <numbers>

#include "latbound/error.hpp"
#include "latbound/lattices.hpp"

namespace latbound {

namespace {

LatticeBasis from_rows(const std::string& name,
                       const std::vector<std::vector<double>>& rows,
                       double log_det) {
  const int n = static_cast<int>(rows.size());
  LatticeBasis b{name, n, Eigen::MatrixXd(n, n), log_det};
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) b.generator(row, col) = rows[col][row];
  }
  validate(b);
  return b;
}

LatticeBasis scaled_integer_lattice(
    const std::string& name,
    const std::vector<std::vector<std::int64_t>>& generators, int n,
    std::int64_t modulus, double scale, double log_det) {
  const auto basis = integer_basis(generators, n, modulus);
  std::vector<std::vector<double>> rows;
  for (const auto& v : basis) {
    std::vector<double> row(n);
    for (int i = 0; i < n; ++i) row[i] = static_cast<double>(v[i]) * scale;
    rows.push_back(row);
  }
  return from_rows(name, rows, log_det);
}

// sqrt(2) * BW16 = {x in Z^16 : x mod 2 in RM(1,4), sum(x) = 0 mod 4}.
LatticeBasis barnes_wall_16() {
  constexpr int n = 16;
  std::vector<std::vector<std::int64_t>> gens;
  gens.emplace_back(n, 1);
  for (int bit = 0; bit < 4; ++bit) {
    std::vector<std::int64_t> row(n);
    for (int i = 0; i < n; ++i) row[i] = (i >> bit) & 1;
    gens.push_back(row);
  }
  for (int j = 1; j < n; ++j) {
    std::vector<std::int64_t> plus(n, 0), minus(n, 0);
    plus[0] = 2;
    plus[j] = 2;
    minus[0] = 2;
    minus[j] = -2;
    gens.push_back(plus);
    gens.push_back(minus);
  }
  return scaled_integer_lattice("BW16", gens, n, 4, 1.0 / std::sqrt(2.0),
                                std::log(16.0));
}

// sqrt(8) * Leech is spanned by 2c (c in the Golay code), 4(e_i +/- e_j)
// and (-3, 1^23).
LatticeBasis leech() {
  constexpr int n = 24;
  std::vector<std::vector<std::int64_t>> gens;
  for (const auto& c : golay_generator()) {
    std::vector<std::int64_t> row(n);
    for (int i = 0; i < n; ++i) row[i] = 2 * c[i];
    gens.push_back(row);
  }
  std::vector<std::int64_t> odd(n, 1);
  odd[0] = -3;
  gens.push_back(odd);
  for (int j = 1; j < n; ++j) {
    std::vector<std::int64_t> plus(n, 0), minus(n, 0);
    plus[0] = 4;
    plus[j] = 4;
    minus[0] = 4;
    minus[j] = -4;
    gens.push_back(plus);
    gens.push_back(minus);
  }
  return scaled_integer_lattice("Leech", gens, n, 8, 1.0 / std::sqrt(8.0), 0.0);
}

}  // namespace

std::vector<std::vector<int>> golay_generator() {
  // Cyclic [23,12,7] code with g(x) = 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11,
  // extended by an overall parity bit.
  constexpr int taps[] = {0, 2, 4, 5, 6, 10, 11};
  std::vector<std::vector<int>> rows;
  for (int shift = 0; shift < 12; ++shift) {
    std::vector<int> row(24, 0);
    for (int t : taps) row[t + shift] = 1;
    int parity = 0;
    for (int i = 0; i < 23; ++i) parity ^= row[i];
    row[23] = parity;
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::vector<std::int64_t>> integer_basis(
    std::vector<std::vector<std::int64_t>> rows, int n, std::int64_t modulus) {
  if (modulus < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
  auto reduce = [modulus](std::int64_t v) {
    std::int64_t r = v % modulus;
    if (2 * r > modulus) r -= modulus;
    if (2 * r < -modulus) r += modulus;
    return r;
  };

  std::vector<std::vector<std::int64_t>> basis;
  for (int c = 0; c < n; ++c) {
    // modulus * e_j (j >= c) lies in the lattice, so entries in columns >= c
    // may be reduced against it before those rows join the working set.
    for (auto& row : rows) {
      for (int j = c; j < n; ++j) row[j] = reduce(row[j]);
    }
    for (int j = c; j < n; ++j) {
      std::vector<std::int64_t> e(n, 0);
      e[j] = modulus;
      rows.push_back(e);
    }
    while (true) {
      std::size_t pivot = rows.size();
      std::size_t nonzero = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        ++nonzero;
        if (pivot == rows.size() ||
            std::llabs(rows[r][c]) < std::llabs(rows[pivot][c])) {
          pivot = r;
        }
      }
      if (nonzero == 0) {
        throw Error(ErrorCode::SingularBasis, "generating set is not full rank");
      }
      if (nonzero == 1) {
        auto row = rows[pivot];
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
        if (row[c] < 0) {
          for (auto& v : row) v = -v;
        }
        basis.push_back(row);
        break;
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == pivot || rows[r][c] == 0) continue;
        const std::int64_t q = rows[r][c] / rows[pivot][c];
        for (int j = c; j < n; ++j) rows[r][j] -= q * rows[pivot][j];
      }
    }
    std::erase_if(rows, [n](const auto& row) {
      for (int j = 0; j < n; ++j) {
        if (row[j] != 0) return false;
      }
      return true;
    });
  }
  return basis;
}

std::vector<std::string> builtin_lattice_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 24; ++n) names.push_back("Z" + std::to_string(n));
  names.insert(names.end(), {"D4", "E8", "BW16", "Leech"});
  return names;
}

LatticeBasis builtin_lattice(const std::string& name) {
  if (name.size() >= 2 && name[0] == 'Z') {
    char* end = nullptr;
    const long n = std::strtol(name.c_str() + 1, &end, 10);
    if (*end == '\0' && n >= 1 && n <= 24) {
      return LatticeBasis{name, static_cast<int>(n),
                          Eigen::MatrixXd::Identity(n, n), 0.0};
    }
  }
  if (name == "D4") {
    return from_rows(name,
                     {{-1, -1, 0, 0}, {1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}},
                     std::numbers::ln2);
  }
  if (name == "E8") {
    std::vector<std::vector<double>> rows;
    rows.push_back({2, 0, 0, 0, 0, 0, 0, 0});
    for (int i = 1; i < 7; ++i) {
      std::vector<double> row(8, 0.0);
      row[i - 1] = -1;
      row[i] = 1;
      rows.push_back(row);
    }
    rows.emplace_back(8, 0.5);
    return from_rows(name, rows, 0.0);
  }
  if (name == "BW16") return barnes_wall_16();
  if (name == "Leech") return leech();
  throw Error(ErrorCode::UnknownLattice, "unknown lattice '" + name + "'");
}

}  // namespace latbound
