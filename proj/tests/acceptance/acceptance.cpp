// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures. Tolerances are fixed here and printed with each result.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "latbound/alpha.hpp"
#include "latbound/bounds.hpp"
#include "latbound/catalog.hpp"
#include "latbound/channel.hpp"
#include "latbound/exponent.hpp"
#include "latbound/geometry.hpp"
#include "latbound/lattices.hpp"
#include "latbound/mcsim.hpp"
#include "latbound/sweep.hpp"

using namespace latbound;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Check()>& body) {
  const auto t0 = Clock::now();
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  std::printf("%s %2d %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0),
              c.detail.empty() ? "" : ": ", c.detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<DistanceSpectrum> test_spectra() {
  return {enumerate_spectrum(builtin_lattice("Z2"), 8.0), enumerate_spectrum(builtin_lattice("D4"), 6.0),
          enumerate_spectrum(builtin_lattice("E8"), 4.0), catalog_spectrum("Leech", 6)};
}

// n = 2 shells of unit normalized volume with the given counts.
DistanceSpectrum unit_volume_spectrum(const std::vector<std::uint64_t>& counts) {
  DistanceSpectrum s{"synthetic", 2, 0.0, 0.0, {}};
  for (std::size_t j = 1; j <= counts.size(); ++j) {
    s.entries.push_back({static_cast<double>(j) / std::numbers::pi, counts[j - 1]});
  }
  s.complete_radius = std::sqrt(counts.size() / std::numbers::pi);
  return s;
}

}  // namespace

int main() {
  const auto spectra = test_spectra();

  report(1, "water-filling equals the LP min-max optimum (tol 1e-9, < 1 s)", [&] {
    Check c;
    const auto t0 = Clock::now();
    for (const auto& s : spectra) {
      const auto ns = normalize(s);
      for (std::size_t k = 0; k < 5; ++k) {
        const double lambda_max = s.norm(k);
        const double opt = alpha_opt(ns, lambda_max).max();
        const double lp = lp_oracle(ns, lambda_max).max();
        c.require(std::abs(opt - lp) <= 1e-9 * std::max(1.0, lp),
                  s.name + fmt(" shell %g: %.12g vs %.12g", k + 1.0, opt, lp));
      }
    }
    const auto z2 = alpha_opt(normalize(spectra[0]), std::sqrt(5.0));
    for (double v : z2.values) {
      c.require(std::abs(v - 4 / std::numbers::pi) <= 1e-9, fmt("Z2 level %.12g", v));
    }
    c.require(z2.values.size() == 4, "Z2 profile should span 4 shells");
    c.require(seconds_since(t0) < 1.0, fmt("took %.3f s", seconds_since(t0)));
    return c;
  });

  report(2, "cumulative smoothing check for rng and opt profiles at every boundary", [&] {
    Check c;
    for (const auto& s : spectra) {
      const auto ns = normalize(s);
      c.require(cumulative_check(ns, alpha_rng(ns, ns.spectrum.entries.size())), s.name + " rng");
      for (std::size_t k = 0; k < std::min<std::size_t>(ns.spectrum.entries.size(), 12); ++k) {
        const auto p = alpha_opt(ns, s.norm(k));
        c.require(cumulative_check(ns, p), s.name + fmt(" opt up to shell %g", k + 1.0));
        // Independent recheck in long double: prefix mass never exceeds the
        // allocated level times prefix volume.
        long double mass = 0, capacity = 0;
        for (std::size_t j = 0; j < p.shells(); ++j) {
          mass += ns.spectrum.entries[j].count;
          const long double lo = p.breakpoints[j], hi = p.breakpoints[j + 1];
          capacity += p.values[j] * unit_ball_volume(s.n) * (std::pow(hi, (long double)s.n) - std::pow(lo, (long double)s.n));
          c.require(capacity >= mass * (1 - 1e-12L), s.name + " prefix capacity");
        }
      }
    }
    return c;
  });

  report(3, "max alpha_opt <= max alpha_rng, with equality for non-increasing rng profiles", [&] {
    Check c;
    auto compare = [&](const DistanceSpectrum& s, std::size_t M, bool expect_equal) {
      const auto ns = normalize(s);
      const auto rng = alpha_rng(ns, M);
      const double opt = alpha_opt(ns, s.norm(M - 1)).max();
      bool monotone = true;
      for (std::size_t j = 1; j < rng.values.size(); ++j) monotone = monotone && rng.values[j] <= rng.values[j - 1];
      c.require(opt <= rng.max() * (1 + 1e-12), s.name + " opt above rng");
      c.require(monotone == expect_equal, s.name + " monotonicity not as constructed");
      const bool equal = std::abs(opt - rng.max()) <= 1e-12 * rng.max();
      c.require(equal == monotone, s.name + fmt(" M=%g: opt %.12g rng %.12g", M, opt, rng.max()));
    };
    compare(unit_volume_spectrum({5, 4, 3, 2, 1}), 5, true);
    compare(catalog_spectrum("E8"), 1, true);
    compare(spectra[0], 4, false);
    compare(unit_volume_spectrum({1, 3, 2}), 3, false);
    for (const auto& s : spectra) {
      for (std::size_t M = 1; M <= 6; ++M) {
        const auto ns = normalize(s);
        const auto rng = alpha_rng(ns, M);
        bool monotone = true;
        for (std::size_t j = 1; j < M; ++j) monotone = monotone && rng.values[j] <= rng.values[j - 1];
        const double opt = alpha_opt(ns, s.norm(M - 1)).max();
        c.require(opt <= rng.max() * (1 + 1e-12), s.name + " opt above rng");
        // A non-increasing profile is already water-filled. The converse
        // fails when the largest level comes first, so it is only checked
        // on the constructed spectra above.
        if (monotone) c.require(std::abs(opt - rng.max()) <= 1e-12 * rng.max(), s.name + " equality case");
      }
    }
    return c;
  });

  report(4, "DMHS on a unit-alpha spectrum equals MHS (tol 1e-12)", [&] {
    Check c;
    const auto flat = unit_volume_spectrum(std::vector<std::uint64_t>(40, 1));
    for (double sigma : {0.1, 0.2, 0.4}) {
      const auto model = make_awgn(2, sigma);
      const double d = dmhs_bound(flat, model).total;
      const double m = mhs_bound(2, 0.0, model).total;
      c.require(std::abs(d - m) <= 1e-12 * m, fmt("sigma %g: %.15g vs %.15g", sigma, d, m));
    }
    return c;
  });

  // Shared by criteria 5 and 6.
  struct Point {
    std::string name;
    double sigma;
    SimResult sim;
    double slb, ub, sub, dmhs, edmhs;
  };
  std::vector<Point> points;
  const double sandwich_time = [&] {
    const auto t0 = Clock::now();
    std::uint64_t seed = 20240601;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& s = spectra[i];
      const auto basis = builtin_lattice(s.name);
      for (double sigma : {0.15, 0.25, 0.35, 0.5}) {
        const auto model = make_awgn(s.n, sigma);
        Point p{s.name, sigma, simulate(basis, model, 1000000, seed++), 0, 0, 0, 0, 0};
        p.slb = sphere_lower_bound(s.n, s.log_density, model).total;
        p.ub = union_bound(s, model).total;
        p.sub = sub_bound(s, model).total;
        p.dmhs = dmhs_bound(s, model).total;
        p.edmhs = edmhs_bound(s, model).total;
        points.push_back(p);
      }
    }
    return seconds_since(t0);
  }();

  report(5, "SLB - 3ci <= p_hat <= min upper bound + 3ci with 1e6 trials (< 300 s)", [&] {
    Check c;
    for (const auto& p : points) {
      const double ci = p.sim.ci95_halfwidth;
      const double upper = std::min({p.ub, p.sub, p.dmhs, p.edmhs});
      c.require(p.slb - 3 * ci <= p.sim.p_hat && p.sim.p_hat <= upper + 3 * ci,
                p.name + fmt(" sigma %g: p %.6g outside [%.6g, ...]", p.sigma, p.sim.p_hat, p.slb) +
                    fmt(" upper %.6g", upper));
    }
    c.require(points.size() == 12, "missing points");
    for (const auto& p : points) {
      std::printf("     %-3s sigma %.2f  SLB %.4e  p_hat %.4e +- %.1e  eDMHS %.4e  DMHS %.4e  SUB %.4e  UB %.4e\n",
                  p.name.c_str(), p.sigma, p.slb, p.sim.p_hat, p.sim.ci95_halfwidth, p.edmhs, p.dmhs, p.sub, p.ub);
    }
    std::printf("     simulations and bounds took %.1f s\n", sandwich_time);
    c.require(sandwich_time < 300, fmt("took %.1f s", sandwich_time));
    return c;
  });

  report(6, "eDMHS total <= DMHS total on the sandwich grid", [&] {
    Check c;
    for (const auto& p : points) {
      c.require(p.edmhs <= p.dmhs * (1 + 1e-12), p.name + fmt(" sigma %g: %.12g > %.12g", p.sigma, p.edmhs, p.dmhs));
    }
    return c;
  });

  report(7, "SUB and DMHS optima within 1e-6 of a 1e4-point radius grid", [&] {
    Check c;
    const double sigma = 0.25;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& s = spectra[i];
      const auto model = make_awgn(s.n, sigma);
      const double lo = 0.05 * s.norm(0), hi = 1.5 * s.norm(0);
      const double sub = sub_bound(s, model).diagnostics.raw_total;
      const double sub_grid =
          oracle::grid_minimum(lo, hi, 10000, [&](double r) { return oracle::sub_objective(s, sigma, r); });
      c.require(std::abs(sub - sub_grid) <= 1e-6 * sub_grid, s.name + fmt(" SUB %.12g vs grid %.12g", sub, sub_grid));
      const double dmhs = dmhs_bound(s, model).diagnostics.raw_total;
      const double dmhs_grid =
          oracle::grid_minimum(lo, hi, 10000, [&](double r) { return oracle::dmhs_objective(s, sigma, r); });
      c.require(std::abs(dmhs - dmhs_grid) <= 1e-6 * dmhs_grid,
                s.name + fmt(" DMHS %.12g vs grid %.12g", dmhs, dmhs_grid));
    }
    return c;
  });

  report(8, "exponent: zero at capacity, (1-ln2)/2 at the critical rate, continuous (tol 1e-12)", [&] {
    Check c;
    for (double sigma : {0.1, 0.25, 0.7}) {
      const auto model = make_awgn(4, sigma);
      const auto r = critical_rates(model);
      c.require(poltyrev_exponent(r.delta_star, model) == 0.0, "nonzero at capacity");
      const double at_cr = poltyrev_exponent(r.delta_cr, model);
      c.require(std::abs(at_cr - (1 - std::numbers::ln2) / 2) <= 1e-12, fmt("E(delta_cr) = %.15g", at_cr));
      const double below = poltyrev_exponent(std::nextafter(r.delta_cr, -1e9), model);
      c.require(std::abs(below - at_cr) <= 1e-12, fmt("jump %.3g at delta_cr", below - at_cr));
      const double d = r.delta_cr - 0.5;
      const double literal = poltyrev_exponent(d, model, true);
      c.require(std::abs(literal - (r.delta_star - d + std::log(std::numbers::e / 4))) <= 1e-12,
                "literal line constant");
      const double jump = poltyrev_exponent(std::nextafter(r.delta_cr, -1e9), model, true) - at_cr;
      c.require(std::abs(jump - 0.5 * std::log(std::numbers::e / 4)) <= 1e-12, fmt("literal jump %.6g", jump));
    }
    return c;
  });

  report(9, "first-shell gaps for E8 and Leech (tol 1e-5) and a decreasing BW nu-series", [&] {
    Check c;
    // Independent long-double evaluation from the first shells alone.
    const long double pi = std::numbers::pi_v<long double>;
    const long double e8 = std::log(240.0L / (std::pow(pi, 4.0L) / 24.0L * 16.0L)) / 8.0L;
    long double fact12 = 1;
    for (int k = 2; k <= 12; ++k) fact12 *= k;
    const long double leech = std::log(196560.0L / (std::pow(pi, 12.0L) / fact12 * std::pow(2.0L, 24.0L))) / 24.0L;
    const double g8 = gap_to_capacity_firstshell(catalog_spectrum("E8")).value;
    const double g24 = gap_to_capacity_firstshell(catalog_spectrum("Leech")).value;
    c.require(std::abs(g8 - static_cast<double>(e8)) <= 1e-5 && std::abs(g8 - 0.163397) <= 1e-5,
              fmt("E8 %.9g vs %.9g", g8, static_cast<double>(e8)));
    c.require(std::abs(g24 - static_cast<double>(leech)) <= 1e-5 && std::abs(g24 - 0.075150) <= 1e-5,
              fmt("Leech %.9g vs %.9g", g24, static_cast<double>(leech)));
    NuOptions opts;
    opts.policy = RPolicy::FirstShell;
    const auto series = nu_series({catalog_spectrum("D4"), catalog_spectrum("E8"), catalog_spectrum("BW16")}, opts);
    for (std::size_t i = 1; i < series.size(); ++i) {
      c.require(series[i].nu < series[i - 1].nu, fmt("nu[%g] = %.9g not below %.9g", series[i].n, series[i].nu, series[i - 1].nu));
    }
    return c;
  });

  report(10, "shell partition sums to the ball volume (1e-9); lens matches 1e7-sample Monte Carlo", [&] {
    Check c;
    for (int n : {2, 3, 8, 24}) {
      for (double rho : {0.5, 1.0, 2.0}) {
        const std::vector<double> cuts = {0.0, 0.3 * rho, 0.7 * rho, rho, 1.2 * rho, 1.5 * rho, 1.9 * rho, 2 * rho};
        double sum = 0.0;
        for (std::size_t k = 1; k < cuts.size(); ++k) sum += geometry::shell_ball_volume(n, cuts[k - 1], cuts[k], rho);
        const double ball = oracle::ball(n) * std::pow(rho, n);
        c.require(std::abs(sum - ball) <= 1e-9 * ball, fmt("n %g rho %g: %.12g", n, rho, sum));
      }
    }
    const double lens = geometry::lens_volume(2, 1.0, 1.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int samples = 10000000;
    int hits = 0;
    for (int i = 0; i < samples; ++i) {
      const double x = u(rng), y = u(rng);
      hits += (x * x + y * y <= 1.0 && (x - 1) * (x - 1) + y * y <= 1.0);
    }
    const double p = static_cast<double>(hits) / samples;
    const double mc = 4 * p, sd = 4 * std::sqrt(p * (1 - p) / samples);
    c.require(std::abs(lens - mc) <= 3 * sd, fmt("lens %.9g vs MC %.9g (sd %.3g)", lens, mc, sd));
    c.require(std::abs(mc - 1.228370) <= 3 * sd, fmt("MC %.9g vs 1.228370", mc));
    return c;
  });

  report(11, "Leech 3-shell 50-point VNR sweep under 60 s with the expected ordering", [&] {
    Check c;
    const auto t0 = Clock::now();
    const auto leech = catalog_spectrum("Leech", 3);
    std::vector<double> sigmas;
    for (int i = 0; i < 50; ++i) sigmas.push_back(vnr_db_to_sigma(6.0 * i / 49, leech.log_density));
    const std::vector<BoundMethod> methods = {BoundMethod::UB, BoundMethod::MHS, BoundMethod::DMHS,
                                              BoundMethod::SUB, BoundMethod::SLB};
    const auto rows = sweep(leech, methods, sigmas);
    const double elapsed = seconds_since(t0);
    c.require(elapsed < 60, fmt("took %.1f s", elapsed));
    c.require(rows.size() == 250, "row count");
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
      if (i % 7 == 0 && rows[i * 5].result) {
        std::printf("     %.2f dB:", rows[i * 5].vnr_db);
        for (std::size_t k = 0; k < methods.size(); ++k) {
          const auto& row = rows[i * methods.size() + k];
          if (row.result) std::printf("  %s %.4e", to_string(row.method).c_str(), row.result->diagnostics.raw_total);
        }
        std::printf("\n");
      }
      std::vector<double> raw(methods.size());
      for (std::size_t k = 0; k < methods.size(); ++k) {
        const auto& row = rows[i * methods.size() + k];
        c.require(row.result.has_value(), "error row: " + row.error);
        if (!row.result) return c;
        raw[k] = row.result->diagnostics.raw_total;
      }
      const double slb = raw[4];
      for (std::size_t k = 0; k < 4; ++k) c.require(raw[k] >= slb, fmt("upper bound below SLB at %.3g dB", rows[i * 5].vnr_db));
      if (rows[i * 5].vnr_db <= 1.0) {
        c.require(raw[2] < raw[0] && raw[3] < raw[0], fmt("DMHS/SUB not below UB at %.3g dB", rows[i * 5].vnr_db));
      }
    }
    return c;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}
