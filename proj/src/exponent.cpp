#include "latbound/exponent.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "latbound/alpha.hpp"
#include "latbound/bounds.hpp"
#include "latbound/error.hpp"
#include "latbound/format.hpp"

namespace latbound {

namespace {

double log_two_pi_e() { return std::log(2.0 * std::numbers::pi) + 1.0; }

}  // namespace

CriticalRates critical_rates(const NoiseModel& model) {
  const double star = -0.5 * (log_two_pi_e() + std::log(model.sigma_sq));
  return {star, star - 0.5 * std::numbers::ln2};
}

double poltyrev_exponent(double delta, const NoiseModel& model, bool literal_line) {
  const auto rates = critical_rates(model);
  const double gap = rates.delta_star - delta;
  if (gap <= 0.0) return 0.0;
  if (delta >= rates.delta_cr) return 0.5 * (std::expm1(2.0 * gap) - 2.0 * gap);
  const double log_e_over_4 = 1.0 - 2.0 * std::numbers::ln2;
  return gap + (literal_line ? log_e_over_4 : 0.5 * log_e_over_4);
}

double vnr(const NoiseModel& model, double log_density) {
  return std::exp(-2.0 * log_density - log_two_pi_e() - std::log(model.sigma_sq));
}

double vnr_db(const NoiseModel& model, double log_density) {
  return 10.0 * std::log10(vnr(model, log_density));
}

double vnr_db_to_sigma(double db, double log_density) {
  const double log_mu = db * std::numbers::ln10 / 10.0;
  return std::exp(-0.5 * (log_mu + 2.0 * log_density + log_two_pi_e()));
}

RPolicy parse_policy(const std::string& name) {
  if (name == "dmhs") return RPolicy::DmhsOptimized;
  if (name == "fixed") return RPolicy::FixedLambdaMax;
  if (name == "first-shell") return RPolicy::FirstShell;
  throw Error(ErrorCode::InvalidArgument,
              "unknown policy '" + name + "' (dmhs, fixed, first-shell)");
}

ExponentPoint nu_point(const DistanceSpectrum& spec, const NuOptions& options) {
  validate(spec);
  if (spec.entries.empty()) {
    throw Error(ErrorCode::Schema, "spectrum '" + spec.name + "' has no shells");
  }
  if (options.sigma && options.vnr_db) {
    throw Error(ErrorCode::InvalidArgument, "give either sigma or vnr_db, not both");
  }
  const double sigma = options.sigma
                           ? *options.sigma
                           : vnr_db_to_sigma(options.vnr_db.value_or(3.0),
                                             spec.log_density);
  const NoiseModel model = make_awgn(spec.n, sigma);
  const NormalizedSpectrum ns = normalize(spec);

  ExponentPoint p;
  p.name = spec.name;
  p.n = spec.n;
  p.delta = spec.log_density;
  switch (options.policy) {
    case RPolicy::DmhsOptimized:
      p.alpha_n = dmhs_bound(spec, model).diagnostics.alpha_used.value();
      break;
    case RPolicy::FixedLambdaMax: {
      const double x = options.lambda_max;
      if (!(x > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "lambda_max must be positive");
      }
      if (x > ns.spectrum.complete_radius * (1.0 + 1e-12)) {
        throw Error(ErrorCode::SpectrumHorizon,
                    "lambda_max beyond the spectrum of '" + spec.name + "'");
      }
      p.alpha_n = profile_max(alpha_opt(ns, x / ns.scale()), x);
      break;
    }
    case RPolicy::FirstShell:
      p.alpha_n = alpha_rng(ns, 1).values[0];
      break;
  }
  p.nu = std::log(p.alpha_n) / spec.n;
  p.exponent = poltyrev_exponent(p.delta + p.nu, model, options.literal_line);
  return p;
}

std::vector<ExponentPoint> nu_series(const std::vector<DistanceSpectrum>& specs,
                                     const NuOptions& options) {
  std::vector<ExponentPoint> out;
  for (const auto& s : specs) out.push_back(nu_point(s, options));
  return out;
}

FirstShellGap gap_to_capacity_firstshell(const DistanceSpectrum& spec) {
  validate(spec);
  if (spec.entries.empty()) {
    throw Error(ErrorCode::Schema, "spectrum '" + spec.name + "' has no shells");
  }
  const int n = spec.n;
  const auto& first = spec.entries.front();
  FirstShellGap g;
  g.value = (std::log(static_cast<double>(first.count)) - n * spec.log_density -
             log_unit_ball_volume(n) - 0.5 * n * std::log(first.norm_sq)) /
            n;
  const auto rng = alpha_rng(normalize(spec), spec.entries.size());
  g.rng_monotone = true;
  for (std::size_t j = 1; j < rng.shells(); ++j) {
    if (rng.values[j] > rng.values[j - 1] * (1.0 + 1e-12)) g.rng_monotone = false;
  }
  return g;
}

std::string exponent_points_to_csv(const std::vector<ExponentPoint>& points) {
  std::ostringstream out;
  out << "n,delta,alpha_n,nu,exponent\n";
  for (const auto& p : points) {
    out << p.n << ',' << format_double(p.delta) << ',' << format_double(p.alpha_n)
        << ',' << format_double(p.nu) << ',' << format_double(p.exponent) << '\n';
  }
  return out.str();
}

}  // namespace latbound
