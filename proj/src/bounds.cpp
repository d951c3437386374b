#include "latbound/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "latbound/alpha.hpp"
#include "latbound/error.hpp"
#include "latbound/geometry.hpp"
#include "latbound/special.hpp"

namespace latbound {

namespace {

// Radii just below a shell edge are evaluated with the smaller scope.
constexpr double kBelowEdge = 1.0 - 4e-12;

void check_model(const DistanceSpectrum& spec, const NoiseModel& model) {
  if (spec.n != model.n) {
    throw Error(ErrorCode::InvalidArgument,
                "noise dimension does not match spectrum '" + spec.name + "'");
  }
  if (!(model.sigma_sq > 0.0) || !std::isfinite(model.sigma_sq)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be positive and finite");
  }
}

void check_spectrum(const DistanceSpectrum& spec) {
  validate(spec);
  if (spec.entries.empty()) {
    throw Error(ErrorCode::Schema, "spectrum '" + spec.name + "' has no shells");
  }
}

void check_horizon(const DistanceSpectrum& spec, double r) {
  if (2.0 * r > spec.complete_radius * (1.0 + 1e-12)) {
    throw Error(ErrorCode::SpectrumHorizon,
                "radius " + std::to_string(r) + " needs the spectrum of '" +
                    spec.name + "' out to " + std::to_string(2.0 * r) +
                    " but it is complete only to " +
                    std::to_string(spec.complete_radius));
  }
}

void absorb(BoundDiagnostics& d, const QuadratureResult& q) {
  d.quadrature_error += q.abs_error;
  if (!q.converged || d.quadrature_error > 1e-10) d.flagged = true;
}

BoundResult finish(BoundResult r) {
  r.diagnostics.raw_total = r.ubt + r.sbt;
  r.total = std::min(1.0, r.diagnostics.raw_total);
  return r;
}

// r* = (alpha beta V_n)^(-1/n)
double stationary_radius(int n, double log_density, double alpha) {
  return std::exp(-(std::log(alpha) + n * log_density + log_unit_ball_volume(n)) /
                  n);
}

// alpha beta V_n \int_0^r f(rho) rho^n d rho + Pr(|z| > r)
BoundResult ball_bound(BoundMethod method, int n, double log_density,
                       const NoiseModel& model, double alpha, double r,
                       const BoundOptions& options) {
  BoundResult res;
  res.method = method;
  res.r_opt = r;
  const double log_c =
      std::log(alpha) + n * log_density + log_unit_ball_volume(n);
  const auto q = integrate(
      [&](double rho) {
        return std::exp(log_c + log_norm_pdf(model, rho) + n * std::log(rho));
      },
      0.0, r, options.quadrature);
  absorb(res.diagnostics, q);
  res.ubt = q.value;
  res.sbt = norm_tail(model, r);
  return finish(res);
}

double unnormalized_norm(const DistanceSpectrum& spec, std::size_t j) {
  return spec.norm(j);
}

std::size_t shells_up_to(const DistanceSpectrum& spec, double radius) {
  const double limit = radius * radius * (1.0 + 1e-12);
  std::size_t M = 0;
  for (const auto& e : spec.entries) {
    if (e.norm_sq > limit) break;
    ++M;
  }
  return M;
}

// Level of the water-filled profile over the first m shells.
AlphaProfile profile_for(const NormalizedSpectrum& ns, std::size_t m) {
  return alpha_opt(ns, ns.spectrum.norm(m - 1) / ns.scale());
}

// eDMHS with the profile restricted to the first M shells.
BoundResult edmhs_eval(const DistanceSpectrum& spec, const NormalizedSpectrum& ns,
                       const NoiseModel& model, double r, std::size_t M,
                       const BoundOptions& options) {
  BoundResult res;
  res.method = BoundMethod::eDMHS;
  res.r_opt = r;
  res.diagnostics.shells_used = M;
  const int n = spec.n;
  if (M > 0) {
    const AlphaProfile profile = profile_for(ns, M);
    res.diagnostics.alpha_used = profile.max();
    special::NeumaierSum ubt;
    for (std::size_t j = 0; j < M; ++j) {
      const double lo = j == 0 ? 0.0 : unnormalized_norm(spec, j - 1);
      const double hi = unnormalized_norm(spec, j);
      const double log_c = std::log(profile.values[j]) + n * spec.log_density;
      const auto q = integrate(
          [&](double rho) {
            const double h = geometry::shell_ball_volume(n, lo, hi, rho);
            if (h <= 0.0) return 0.0;
            return std::exp(log_c + log_norm_pdf(model, rho) + std::log(h));
          },
          0.5 * hi, std::max(r, 0.5 * hi), options.quadrature);
      absorb(res.diagnostics, q);
      ubt.add(q.value);
    }
    res.ubt = ubt.value();
  }
  res.sbt = norm_tail(model, r);
  return finish(res);
}

// beta sum_j alpha_j h_j(r): the eDMHS derivative is f(r) (this - 1).
double edmhs_slope_factor(const DistanceSpectrum& spec,
                          const AlphaProfile& profile, double r) {
  special::NeumaierSum s;
  for (std::size_t j = 0; j < profile.shells(); ++j) {
    const double lo = j == 0 ? 0.0 : unnormalized_norm(spec, j - 1);
    const double hi = unnormalized_norm(spec, j);
    s.add(profile.values[j] * geometry::shell_ball_volume(spec.n, lo, hi, r));
  }
  return std::exp(spec.n * spec.log_density) * s.value();
}

double sub_slope_factor(const DistanceSpectrum& spec, double r) {
  special::NeumaierSum s;
  for (const auto& e : spec.entries) {
    const double lambda = std::sqrt(e.norm_sq);
    if (lambda > 2.0 * r) break;
    s.add(static_cast<double>(e.count) * pairwise_bound(spec.n, lambda, r));
  }
  return s.value();
}

// Root of g(r) = 1 for g non-decreasing with g(lo) < 1 <= g(hi).
template <class G>
double bisect(G&& g, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 1.0 ? lo : hi) = mid;
  }
  return hi;
}

const BoundResult& best_of(const std::vector<BoundResult>& candidates) {
  return *std::min_element(candidates.begin(), candidates.end(),
                           [](const BoundResult& a, const BoundResult& b) {
                             return a.diagnostics.raw_total <
                                    b.diagnostics.raw_total;
                           });
}

}  // namespace

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::MHS: return "MHS";
    case BoundMethod::DMHS: return "DMHS";
    case BoundMethod::eDMHS: return "eDMHS";
    case BoundMethod::SUB: return "SUB";
    case BoundMethod::UB: return "UB";
    case BoundMethod::SLB: return "SLB";
  }
  return "?";
}

BoundMethod parse_method(const std::string& name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "mhs") return BoundMethod::MHS;
  if (lower == "dmhs") return BoundMethod::DMHS;
  if (lower == "edmhs") return BoundMethod::eDMHS;
  if (lower == "sub") return BoundMethod::SUB;
  if (lower == "ub") return BoundMethod::UB;
  if (lower == "slb") return BoundMethod::SLB;
  throw Error(ErrorCode::InvalidArgument, "unknown bound method '" + name + "'");
}

double pairwise_bound(int n, double x_norm, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  if (x_norm < 0.0) throw Error(ErrorCode::InvalidArgument, "x_norm must be >= 0");
  if (x_norm >= 2.0 * rho) return 0.0;
  const double t = x_norm / (2.0 * rho);
  return std::exp(0.5 * (n - 1) * std::log1p(-t * t));
}

BoundResult mhs_bound(int n, double log_density, const NoiseModel& model,
                      const BoundOptions& options) {
  if (model.n != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const double r = stationary_radius(n, log_density, 1.0);
  return ball_bound(BoundMethod::MHS, n, log_density, model, 1.0, r, options);
}

double dmhs_alpha(const NormalizedSpectrum& ns, double r) {
  const double first = ns.spectrum.norm(0) / ns.scale();
  return alpha_opt(ns, std::max(2.0 * r, first)).max();
}

BoundResult dmhs_at(const DistanceSpectrum& spec, const NoiseModel& model,
                    double r, const BoundOptions& options) {
  check_spectrum(spec);
  check_model(spec, model);
  check_horizon(spec, r);
  const NormalizedSpectrum ns = normalize(spec);
  const double alpha = dmhs_alpha(ns, r);
  BoundResult res = ball_bound(BoundMethod::DMHS, spec.n, spec.log_density, model,
                               alpha, r, options);
  res.diagnostics.alpha_used = alpha;
  res.diagnostics.shells_used = std::max<std::size_t>(1, shells_up_to(spec, 2.0 * r));
  return res;
}

BoundResult dmhs_bound(const DistanceSpectrum& spec, const NoiseModel& model,
                       const BoundOptions& options) {
  check_spectrum(spec);
  check_model(spec, model);
  const int n = spec.n;
  const double delta = spec.log_density;
  const NormalizedSpectrum ns = normalize(spec);
  const std::size_t K = spec.entries.size();

  if (options.superset_alpha) {
    const double alpha = profile_for(ns, K).max();
    const double r = stationary_radius(n, delta, alpha);
    check_horizon(spec, r);
    BoundResult res = ball_bound(BoundMethod::DMHS, n, delta, model, alpha, r, options);
    res.diagnostics.alpha_used = alpha;
    res.diagnostics.shells_used = K;
    res.diagnostics.iterations = 1;
    return res;
  }

  // The alternating update r <- r*(alpha(r)), alpha <- alpha(r). It stops
  // when alpha repeats; the scan below then certifies the global optimum.
  int iterations = 0;
  {
    double r = stationary_radius(n, delta, 1.0);
    double previous = std::numeric_limits<double>::quiet_NaN();
    while (iterations < options.max_iterations) {
      ++iterations;
      if (2.0 * r > spec.complete_radius) break;
      const double alpha = dmhs_alpha(ns, r);
      if (std::abs(alpha - previous) <= 1e-12 * alpha) break;
      previous = alpha;
      r = stationary_radius(n, delta, alpha);
    }
  }

  // alpha(r) is a step function of r, constant on pieces between half
  // norms. On each piece the objective falls until r*(alpha) and rises
  // after, and alpha only grows with r, so the first piece containing its
  // own r* ends the search.
  std::vector<BoundResult> candidates;
  for (std::size_t m = 1; m <= K; ++m) {
    const double lo = m == 1 ? 0.0 : 0.5 * unnormalized_norm(spec, m - 1);
    const double hi =
        m < K ? 0.5 * unnormalized_norm(spec, m) : 0.5 * spec.complete_radius;
    const double alpha = profile_for(ns, m).max();
    const double r_star = stationary_radius(n, delta, alpha);
    double r;
    if (r_star <= hi) {
      r = std::max(r_star, lo);
    } else if (m == K) {
      check_horizon(spec, r_star);
      r = r_star;
    } else {
      r = hi * kBelowEdge;
    }
    BoundResult res = ball_bound(BoundMethod::DMHS, n, delta, model, alpha, r, options);
    res.diagnostics.alpha_used = alpha;
    res.diagnostics.shells_used = m;
    candidates.push_back(res);
    if (r_star <= hi) break;
  }
  BoundResult best = best_of(candidates);
  best.diagnostics.iterations = iterations;
  return best;
}

BoundResult edmhs_at(const DistanceSpectrum& spec, const NoiseModel& model,
                     double r, const BoundOptions& options) {
  check_spectrum(spec);
  check_model(spec, model);
  check_horizon(spec, r);
  const NormalizedSpectrum ns = normalize(spec);
  return edmhs_eval(spec, ns, model, r, shells_up_to(spec, 2.0 * r), options);
}

BoundResult edmhs_bound(const DistanceSpectrum& spec, const NoiseModel& model,
                        const BoundOptions& options) {
  check_spectrum(spec);
  check_model(spec, model);
  const NormalizedSpectrum ns = normalize(spec);
  const std::size_t K = spec.entries.size();

  std::vector<BoundResult> candidates;
  for (double r : options.r_grid) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "r_grid must be positive");
    check_horizon(spec, r);
    candidates.push_back(
        edmhs_eval(spec, ns, model, r, shells_up_to(spec, 2.0 * r), options));
  }
  // Below lambda_1 / 2 only the tail term remains, so the first edge is a
  // candidate. Within each piece the derivative is f(r) (S(r) - 1) with S
  // non-decreasing, and S jumps up between pieces.
  candidates.push_back(
      edmhs_eval(spec, ns, model, 0.5 * unnormalized_norm(spec, 0), 1, options));
  for (std::size_t m = 1; m <= K; ++m) {
    const double lo = 0.5 * unnormalized_norm(spec, m - 1);
    const bool last = m == K;
    const double hi = last ? 0.5 * spec.complete_radius
                           : 0.5 * unnormalized_norm(spec, m);
    const AlphaProfile profile = profile_for(ns, m);
    auto slope = [&](double r) { return edmhs_slope_factor(spec, profile, r); };
    if (slope(lo) >= 1.0) break;
    if (slope(hi) < 1.0) {
      BoundResult res =
          edmhs_eval(spec, ns, model, last ? hi : hi * kBelowEdge, m, options);
      if (last) res.diagnostics.horizon_limited = true;
      candidates.push_back(res);
      continue;
    }
    candidates.push_back(edmhs_eval(spec, ns, model, bisect(slope, lo, hi), m, options));
    break;
  }
  try {
    const BoundResult d = dmhs_bound(spec, model, options);
    candidates.push_back(edmhs_eval(spec, ns, model, d.r_opt,
                                    shells_up_to(spec, 2.0 * d.r_opt), options));
  } catch (const Error&) {
    // No DMHS radius inside the horizon; the scan above stands alone.
  }
  return best_of(candidates);
}

BoundResult sub_at(const DistanceSpectrum& spec, const NoiseModel& model, double r,
                   const BoundOptions& options) {
  check_spectrum(spec);
  check_model(spec, model);
  check_horizon(spec, r);
  const int n = spec.n;
  BoundResult res;
  res.method = BoundMethod::SUB;
  res.r_opt = r;
  special::NeumaierSum ubt;
  for (const auto& e : spec.entries) {
    const double lambda = std::sqrt(e.norm_sq);
    if (lambda > 2.0 * r * (1.0 + 1e-12)) break;
    ++res.diagnostics.shells_used;
    if (lambda >= 2.0 * r) continue;
    const double log_count = std::log(static_cast<double>(e.count));
    const auto q = integrate(
        [&](double rho) {
          const double t = lambda / (2.0 * rho);
          const double shape = n == 1 ? 0.0 : 0.5 * (n - 1) * std::log1p(-t * t);
          return std::exp(log_count + log_norm_pdf(model, rho) + shape);
        },
        0.5 * lambda, r, options.quadrature);
    absorb(res.diagnostics, q);
    ubt.add(q.value);
  }
  res.ubt = ubt.value();
  res.sbt = norm_tail(model, r);
  return finish(res);
}

BoundResult sub_bound(const DistanceSpectrum& spec, const NoiseModel& model,
                      const BoundOptions& options) {
  check_spectrum(spec);
  check_model(spec, model);
  // The derivative in r is f(r) (G(r) - 1) with G continuous and
  // non-decreasing, so the optimum is where G first reaches 1.
  auto G = [&](double r) { return sub_slope_factor(spec, r); };
  const double first = 0.5 * unnormalized_norm(spec, 0);
  const double horizon = 0.5 * spec.complete_radius;
  double r_max;
  bool limited = false;
  if (G(first) >= 1.0) {
    r_max = first;
  } else if (G(horizon) < 1.0) {
    r_max = horizon;
    limited = true;
  } else {
    r_max = bisect(G, first, horizon);
  }
  std::vector<BoundResult> candidates{sub_at(spec, model, r_max, options)};
  for (const auto& e : spec.entries) {
    const double edge = 0.5 * std::sqrt(e.norm_sq);
    if (edge >= r_max) break;
    candidates.push_back(sub_at(spec, model, edge, options));
  }
  BoundResult best = best_of(candidates);
  best.diagnostics.horizon_limited = limited && best.r_opt == r_max;
  return best;
}

BoundResult union_bound(const DistanceSpectrum& spec, const NoiseModel& model) {
  check_spectrum(spec);
  check_model(spec, model);
  BoundResult res;
  res.method = BoundMethod::UB;
  special::NeumaierSum sum;
  double last = 0.0;
  for (const auto& e : spec.entries) {
    last = static_cast<double>(e.count) *
           special::normal_q(std::sqrt(e.norm_sq) / (2.0 * model.sigma()));
    sum.add(last);
  }
  res.ubt = sum.value();
  res.diagnostics.shells_used = spec.entries.size();
  res.diagnostics.truncated = last > 1e-3 * res.ubt;
  return finish(res);
}

BoundResult sphere_lower_bound(int n, double log_density, const NoiseModel& model) {
  if (model.n != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  BoundResult res;
  res.method = BoundMethod::SLB;
  res.r_opt = stationary_radius(n, log_density, 1.0);
  res.sbt = norm_tail(model, res.r_opt);
  res.diagnostics.raw_total = res.sbt;
  res.total = res.sbt;
  return res;
}

BoundResult evaluate_bound(BoundMethod method, const DistanceSpectrum& spec,
                           const NoiseModel& model, const BoundOptions& options) {
  switch (method) {
    case BoundMethod::MHS: return mhs_bound(spec.n, spec.log_density, model, options);
    case BoundMethod::DMHS: return dmhs_bound(spec, model, options);
    case BoundMethod::eDMHS: return edmhs_bound(spec, model, options);
    case BoundMethod::SUB: return sub_bound(spec, model, options);
    case BoundMethod::UB: return union_bound(spec, model);
    case BoundMethod::SLB: return sphere_lower_bound(spec.n, spec.log_density, model);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown bound method");
}

}  // namespace latbound
