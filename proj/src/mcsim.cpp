#include "latbound/mcsim.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "latbound/error.hpp"
#include "latbound/format.hpp"

namespace latbound {

namespace {

enum class Family { Cubic, D4, E8 };

Family family_of(const std::string& name) {
  if (name == "D4") return Family::D4;
  if (name == "E8") return Family::E8;
  if (name.size() >= 2 && name[0] == 'Z' &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    return Family::Cubic;
  }
  throw Error(ErrorCode::Unsupported, "no exact decoder for lattice '" + name + "'");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class TrialRng {
 public:
  using result_type = std::uint64_t;

  TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t s = seed;
    state_ = splitmix64(s) ^ trial;
    splitmix64(state_);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return splitmix64(state_); }

 private:
  std::uint64_t state_;
};

// Rounds to D_n: nearest integer vector, then if the coordinate sum is odd
// re-rounds the worst coordinate the other way.
void round_dn(const std::vector<double>& y, std::vector<double>& out) {
  const std::size_t n = y.size();
  out.resize(n);
  long long sum = 0;
  std::size_t worst = 0;
  double worst_gap = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::nearbyint(y[i]);
    sum += static_cast<long long>(out[i]);
    const double gap = std::abs(y[i] - out[i]);
    if (gap > worst_gap) {
      worst_gap = gap;
      worst = i;
    }
  }
  if (sum % 2 != 0) out[worst] += y[worst] > out[worst] ? 1.0 : -1.0;
}

double distance_sq(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

void decode(Family f, const std::vector<double>& y, std::vector<double>& out,
            std::vector<double>& scratch) {
  switch (f) {
    case Family::Cubic:
      out.resize(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::nearbyint(y[i]);
      return;
    case Family::D4:
      round_dn(y, out);
      return;
    case Family::E8: {
      round_dn(y, out);
      scratch.resize(y.size());
      std::vector<double> shifted(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) shifted[i] = y[i] - 0.5;
      round_dn(shifted, scratch);
      for (auto& v : scratch) v += 0.5;
      if (distance_sq(y, scratch) < distance_sq(y, out)) out.swap(scratch);
      return;
    }
  }
}

}  // namespace

bool has_exact_decoder(const std::string& lattice) {
  try {
    family_of(lattice);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<double> closest_point(const std::string& lattice,
                                  const std::vector<double>& y) {
  const Family f = family_of(lattice);
  std::vector<double> out, scratch;
  decode(f, y, out, scratch);
  return out;
}

SimResult simulate(const LatticeBasis& lattice, const NoiseModel& model,
                   std::uint64_t trials, std::uint64_t seed, int threads) {
  const Family f = family_of(lattice.name);
  if ((f == Family::D4 && lattice.n != 4) || (f == Family::E8 && lattice.n != 8)) {
    throw Error(ErrorCode::Unsupported, "lattice dimension does not match its name");
  }
  if (model.n != lattice.n) {
    throw Error(ErrorCode::InvalidArgument, "noise dimension does not match lattice");
  }
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const double sigma = model.sigma();
  const int workers =
      static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(
                                                      threads < 1 ? 1 : threads, trials)));

  std::vector<std::uint64_t> errors(workers, 0);
  auto run = [&](int w) {
    std::vector<double> y(lattice.n), decoded, scratch;
    for (std::uint64_t t = w; t < trials; t += workers) {
      TrialRng rng(seed, t);
      std::normal_distribution<double> normal(0.0, sigma);
      for (auto& v : y) v = normal(rng);
      decode(f, y, decoded, scratch);
      for (double v : decoded) {
        if (v != 0.0) {
          ++errors[w];
          break;
        }
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  SimResult r;
  r.lattice = lattice.name;
  r.sigma = sigma;
  r.trials = trials;
  r.seed = seed;
  for (auto e : errors) r.errors += e;
  r.p_hat = static_cast<double>(r.errors) / static_cast<double>(trials);
  r.ci95_halfwidth = 1.96 * std::sqrt(r.p_hat * (1.0 - r.p_hat) / static_cast<double>(trials));
  return r;
}

std::string sim_results_to_csv(const std::vector<SimResult>& results) {
  std::ostringstream out;
  out << "lattice,sigma,trials,errors,p_hat,ci95,seed\n";
  for (const auto& r : results) {
    out << r.lattice << ',' << format_double(r.sigma) << ',' << r.trials << ','
        << r.errors << ',' << format_double(r.p_hat) << ','
        << format_double(r.ci95_halfwidth) << ',' << r.seed << '\n';
  }
  return out.str();
}

}  // namespace latbound
