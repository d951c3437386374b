#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "latbound/error.hpp"
#include "latbound/lattices.hpp"

namespace latbound {

namespace {

constexpr int kMaxDimension = 24;

void gram_schmidt(const Eigen::MatrixXd& b, Eigen::MatrixXd& mu,
                  Eigen::VectorXd& bstar_sq) {
  const int n = static_cast<int>(b.cols());
  Eigen::MatrixXd bstar = b;
  mu.setZero(n, n);
  bstar_sq.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      mu(i, j) = b.col(i).dot(bstar.col(j)) / bstar_sq[j];
      bstar.col(i) -= mu(i, j) * bstar.col(j);
    }
    bstar_sq[i] = bstar.col(i).squaredNorm();
  }
}

// Textbook LLL on the columns of b with delta = 0.99. The lattice is
// unchanged; only the basis gets shorter and closer to orthogonal.
void lll_reduce(Eigen::MatrixXd& b) {
  constexpr double delta = 0.99;
  const int n = static_cast<int>(b.cols());
  Eigen::MatrixXd mu;
  Eigen::VectorXd bstar_sq;
  gram_schmidt(b, mu, bstar_sq);
  int k = 1;
  int guard = 0;
  while (k < n && guard++ < 100000) {
    for (int j = k - 1; j >= 0; --j) {
      const double q = std::round(mu(k, j));
      if (q == 0.0) continue;
      b.col(k) -= q * b.col(j);
      for (int i = 0; i < j; ++i) mu(k, i) -= q * mu(j, i);
      mu(k, j) -= q;
    }
    if (bstar_sq[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar_sq[k - 1]) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      gram_schmidt(b, mu, bstar_sq);
      k = std::max(k - 1, 1);
    }
  }
}

// Smallest k <= 1024 making k * gram integral, or 0.
int integral_scale(const Eigen::MatrixXd& gram) {
  for (int k = 1; k <= 1024; ++k) {
    bool ok = true;
    for (Eigen::Index i = 0; i < gram.size() && ok; ++i) {
      const double v = k * gram.data()[i];
      ok = std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v));
    }
    if (ok) return k;
  }
  return 0;
}

struct Counts {
  std::map<long long, std::uint64_t> exact;
  std::map<double, std::uint64_t> approx;
  std::uint64_t total = 0;
};

class Enumerator {
 public:
  Enumerator(const Eigen::MatrixXd& gram, double radius, int scale,
             std::uint64_t half_cap)
      : n_(static_cast<int>(gram.rows())),
        scale_(scale),
        half_cap_(half_cap),
        u_(n_, 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    const Eigen::MatrixXd r = llt.matrixU();
    q_.resize(n_);
    mu_.setZero(n_, n_);
    for (int i = 0; i < n_; ++i) {
      q_[i] = r(i, i) * r(i, i);
      for (int j = i + 1; j < n_; ++j) mu_(i, j) = r(i, j) / r(i, i);
    }
    radius_sq_ = radius * radius;
    bound_ = radius_sq_ * (1.0 + 1e-9);
    if (scale_ > 0) limit_key_ = std::llround(std::floor(scale_ * radius_sq_ + 1e-6));
  }

  int top_range(long& lo, long& hi) const {
    const double w = std::sqrt(bound_ / q_[n_ - 1]);
    lo = 0;
    hi = static_cast<long>(std::floor(w));
    return n_ - 1;
  }

  // Enumerates the subtree with the top coordinate fixed.
  void run_top(long value, Counts& out) {
    out_ = &out;
    const int top = n_ - 1;
    u_.assign(n_, 0);
    u_[top] = value;
    const double p = q_[top] * static_cast<double>(value) * value;
    if (p > bound_) return;
    if (top == 0) {
      if (value != 0) record(p);
      return;
    }
    recurse(top - 1, p, value == 0);
  }

 private:
  void recurse(int i, double partial, bool upper_zero) {
    double c = 0.0;
    for (int j = i + 1; j < n_; ++j) c -= mu_(i, j) * static_cast<double>(u_[j]);
    const double rem = bound_ - partial;
    if (rem < 0.0) return;
    const double w = std::sqrt(rem / q_[i]);
    long lo = static_cast<long>(std::ceil(c - w));
    const long hi = static_cast<long>(std::floor(c + w));
    // Half-space rule: count each +-pair once via its last nonzero coordinate.
    if (upper_zero) lo = std::max(lo, 0L);
    for (long v = lo; v <= hi; ++v) {
      u_[i] = v;
      const double d = static_cast<double>(v) - c;
      const double p = partial + q_[i] * d * d;
      if (p > bound_) continue;
      if (i == 0) {
        if (!(upper_zero && v == 0)) record(p);
      } else {
        recurse(i - 1, p, upper_zero && v == 0);
      }
    }
    u_[i] = 0;
  }

  void record(double norm_sq) {
    if (scale_ > 0) {
      const long long key = std::llround(scale_ * norm_sq);
      if (key > limit_key_ || key <= 0) return;
      ++out_->exact[key];
    } else {
      if (norm_sq > radius_sq_ * (1.0 + 1e-12)) return;
      ++out_->approx[norm_sq];
    }
    if (++out_->total > half_cap_) {
      throw Error(ErrorCode::EnumerationOverflow,
                  "more than " + std::to_string(2 * half_cap_) +
                      " lattice vectors within the requested radius");
    }
  }

  int n_;
  int scale_;
  std::uint64_t half_cap_;
  std::vector<long> u_;
  std::vector<double> q_;
  Eigen::MatrixXd mu_;
  double radius_sq_ = 0.0;
  double bound_ = 0.0;
  long long limit_key_ = 0;
  Counts* out_ = nullptr;
};

DistanceSpectrum assemble(const LatticeBasis& basis, double radius, int scale,
                          const std::vector<Counts>& parts,
                          std::uint64_t multiplier) {
  DistanceSpectrum s;
  s.name = basis.name;
  s.n = basis.n;
  s.log_density = 0.0 - basis.log_det / basis.n;  // never -0
  s.complete_radius = radius;
  if (scale > 0) {
    std::map<long long, std::uint64_t> merged;
    for (const auto& p : parts) {
      for (const auto& [k, c] : p.exact) merged[k] += c;
    }
    for (const auto& [k, c] : merged) {
      s.entries.push_back({static_cast<double>(k) / scale, multiplier * c});
    }
  } else {
    std::map<double, std::uint64_t> merged;
    for (const auto& p : parts) {
      for (const auto& [k, c] : p.approx) merged[k] += c;
    }
    for (const auto& [norm_sq, c] : merged) {
      if (!s.entries.empty() &&
          norm_sq - s.entries.back().norm_sq <= 1e-9 * norm_sq) {
        s.entries.back().count += multiplier * c;
      } else {
        s.entries.push_back({norm_sq, multiplier * c});
      }
    }
  }
  return s;
}

void check_request(const LatticeBasis& basis, double radius) {
  validate(basis);
  if (basis.n > kMaxDimension) {
    throw Error(ErrorCode::InvalidArgument, "enumeration supports n <= 24");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "radius must be positive and finite");
  }
}

}  // namespace

DistanceSpectrum enumerate_spectrum(const LatticeBasis& basis, double radius,
                                    const EnumerationOptions& options) {
  check_request(basis, radius);
  if (options.max_vectors < 2) {
    throw Error(ErrorCode::InvalidArgument, "max_vectors must be >= 2");
  }
  const int scale = integral_scale(basis.generator.transpose() * basis.generator);
  Eigen::MatrixXd reduced = basis.generator;
  lll_reduce(reduced);
  const Eigen::MatrixXd gram = reduced.transpose() * reduced;

  const std::uint64_t half_cap = options.max_vectors / 2;
  Enumerator probe(gram, radius, scale, half_cap);
  long lo = 0, hi = 0;
  probe.top_range(lo, hi);

  const int threads =
      std::max(1, std::min<int>(options.threads, static_cast<int>(hi - lo + 1)));
  std::vector<Counts> parts(threads);
  if (threads == 1) {
    for (long v = lo; v <= hi; ++v) probe.run_top(v, parts[0]);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          Enumerator e(gram, radius, scale, half_cap);
          for (long v = lo + t; v <= hi; v += threads) e.run_top(v, parts[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::uint64_t total = 0;
    for (const auto& p : parts) total += p.total;
    if (total > half_cap) {
      throw Error(ErrorCode::EnumerationOverflow,
                  "more than " + std::to_string(options.max_vectors) +
                      " lattice vectors within the requested radius");
    }
  }
  return assemble(basis, radius, scale, parts, 2);
}

DistanceSpectrum brute_force_spectrum(const LatticeBasis& basis, double radius,
                                      int box) {
  check_request(basis, radius);
  const int n = basis.n;
  std::vector<long> u(n, -box);
  std::map<double, std::uint64_t> counts;
  const double limit = radius * radius * (1.0 + 1e-9);
  Eigen::VectorXd coeff(n);
  while (true) {
    for (int i = 0; i < n; ++i) coeff[i] = static_cast<double>(u[i]);
    const double norm_sq = (basis.generator * coeff).squaredNorm();
    if (norm_sq > 1e-12 && norm_sq <= limit) ++counts[norm_sq];
    int i = 0;
    while (i < n && u[i] == box) u[i++] = -box;
    if (i == n) break;
    ++u[i];
  }
  Counts c;
  c.approx = counts;
  return assemble(basis, radius, 0, {c}, 1);
}

}  // namespace latbound
