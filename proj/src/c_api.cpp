#include "latbound/latbound.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "latbound/alpha.hpp"
#include "latbound/bounds.hpp"
#include "latbound/catalog.hpp"
#include "latbound/error.hpp"
#include "latbound/exponent.hpp"
#include "latbound/lattices.hpp"
#include "latbound/mcsim.hpp"
#include "latbound/spectrum.hpp"
#include "latbound/sweep.hpp"

struct lb_lattice {
  latbound::LatticeBasis basis;
};

struct lb_spectrum {
  latbound::DistanceSpectrum spectrum;
};

struct lb_profile {
  latbound::AlphaProfile profile;
};

struct lb_sweep {
  std::vector<latbound::SweepPoint> rows;
};

namespace {

thread_local std::string last_error;

lb_status status_of(latbound::ErrorCode code) {
  using latbound::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return LB_ERR_INVALID_ARGUMENT;
    case ErrorCode::SingularBasis: return LB_ERR_SINGULAR_BASIS;
    case ErrorCode::EnumerationOverflow: return LB_ERR_ENUMERATION_OVERFLOW;
    case ErrorCode::SpectrumHorizon: return LB_ERR_SPECTRUM_HORIZON;
    case ErrorCode::Schema: return LB_ERR_SCHEMA;
    case ErrorCode::Io: return LB_ERR_IO;
    case ErrorCode::NotConverged: return LB_ERR_NOT_CONVERGED;
    case ErrorCode::Unsupported: return LB_ERR_UNSUPPORTED;
    case ErrorCode::UnknownLattice: return LB_ERR_UNKNOWN_LATTICE;
  }
  return LB_ERR_INTERNAL;
}

template <class F>
lb_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return LB_OK;
  } catch (const latbound::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return LB_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw latbound::Error(latbound::ErrorCode::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lb_method to_c(latbound::BoundMethod m) { return static_cast<lb_method>(m); }

latbound::BoundMethod from_c(lb_method m) {
  require(m >= LB_METHOD_MHS && m <= LB_METHOD_SLB, "unknown method");
  return static_cast<latbound::BoundMethod>(m);
}

void fill(const latbound::BoundResult& r, lb_bound_result* out) {
  out->method = to_c(r.method);
  out->r_opt = r.r_opt;
  out->ubt = r.ubt;
  out->sbt = r.sbt;
  out->total = r.total;
  out->raw_total = r.diagnostics.raw_total;
  out->shells_used = r.diagnostics.shells_used;
  out->has_alpha = r.diagnostics.alpha_used.has_value();
  out->alpha_used = r.diagnostics.alpha_used.value_or(0.0);
  out->iterations = r.diagnostics.iterations;
  out->quadrature_error = r.diagnostics.quadrature_error;
  out->flagged = r.diagnostics.flagged;
  out->truncated = r.diagnostics.truncated;
  out->horizon_limited = r.diagnostics.horizon_limited;
}

}  // namespace

extern "C" {

const char* lb_version(void) { return "0.1.0"; }

const char* lb_last_error(void) { return last_error.c_str(); }

void lb_string_free(char* s) { delete[] s; }

lb_status lb_lattice_builtin(const char* name, lb_lattice** out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = new lb_lattice{latbound::builtin_lattice(name)};
  });
}

lb_status lb_lattice_load(const char* path, lb_lattice** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new lb_lattice{latbound::load_basis(path)};
  });
}

int lb_lattice_dimension(const lb_lattice* lattice) {
  return lattice ? lattice->basis.n : 0;
}

double lb_lattice_log_density(const lb_lattice* lattice) {
  return lattice ? -lattice->basis.log_det / lattice->basis.n : 0.0;
}

void lb_lattice_free(lb_lattice* lattice) { delete lattice; }

lb_status lb_spectrum_enumerate(const lb_lattice* lattice, double radius,
                                uint64_t max_vectors, int threads,
                                lb_spectrum** out) {
  return guarded([&] {
    require(lattice && out, "null argument");
    latbound::EnumerationOptions options;
    if (max_vectors > 0) options.max_vectors = max_vectors;
    options.threads = threads;
    *out = new lb_spectrum{
        latbound::enumerate_spectrum(lattice->basis, radius, options)};
  });
}

lb_status lb_spectrum_catalog(const char* name, size_t shells, lb_spectrum** out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = new lb_spectrum{latbound::catalog_spectrum(name, shells)};
  });
}

lb_status lb_spectrum_load(const char* path, lb_spectrum** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new lb_spectrum{latbound::load_spectrum(path)};
  });
}

lb_status lb_spectrum_from_json(const char* json, lb_spectrum** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new lb_spectrum{latbound::spectrum_from_json(json)};
  });
}

lb_status lb_spectrum_truncate(const lb_spectrum* spectrum, size_t shells,
                               lb_spectrum** out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    *out = new lb_spectrum{latbound::truncate_shells(spectrum->spectrum, shells)};
  });
}

lb_status lb_spectrum_to_json(const lb_spectrum* spectrum, char** out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    *out = copy_string(latbound::spectrum_to_json(spectrum->spectrum));
  });
}

lb_status lb_spectrum_to_csv(const lb_spectrum* spectrum, char** out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    *out = copy_string(latbound::spectrum_to_csv(spectrum->spectrum));
  });
}

size_t lb_spectrum_size(const lb_spectrum* spectrum) {
  return spectrum ? spectrum->spectrum.entries.size() : 0;
}

const char* lb_spectrum_name(const lb_spectrum* spectrum) {
  return spectrum ? spectrum->spectrum.name.c_str() : "";
}

int lb_spectrum_dimension(const lb_spectrum* spectrum) {
  return spectrum ? spectrum->spectrum.n : 0;
}

double lb_spectrum_log_density(const lb_spectrum* spectrum) {
  return spectrum ? spectrum->spectrum.log_density
                  : std::numeric_limits<double>::quiet_NaN();
}

double lb_spectrum_complete_radius(const lb_spectrum* spectrum) {
  return spectrum ? spectrum->spectrum.complete_radius
                  : std::numeric_limits<double>::quiet_NaN();
}

lb_status lb_spectrum_entry(const lb_spectrum* spectrum, size_t index,
                            double* norm_sq, uint64_t* count) {
  return guarded([&] {
    require(spectrum && norm_sq && count, "null argument");
    require(index < spectrum->spectrum.entries.size(), "index out of range");
    *norm_sq = spectrum->spectrum.entries[index].norm_sq;
    *count = spectrum->spectrum.entries[index].count;
  });
}

void lb_spectrum_free(lb_spectrum* spectrum) { delete spectrum; }

lb_status lb_alpha_rng(const lb_spectrum* spectrum, size_t shells, lb_profile** out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    *out = new lb_profile{
        latbound::alpha_rng(latbound::normalize(spectrum->spectrum), shells)};
  });
}

lb_status lb_alpha_opt(const lb_spectrum* spectrum, double lambda_max,
                       lb_profile** out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    *out = new lb_profile{
        latbound::alpha_opt(latbound::normalize(spectrum->spectrum), lambda_max)};
  });
}

size_t lb_profile_size(const lb_profile* profile) {
  return profile ? profile->profile.shells() : 0;
}

lb_status lb_profile_shell(const lb_profile* profile, size_t index, double* lo,
                           double* hi, double* value) {
  return guarded([&] {
    require(profile && lo && hi && value, "null argument");
    require(index < profile->profile.shells(), "index out of range");
    *lo = profile->profile.breakpoints[index];
    *hi = profile->profile.breakpoints[index + 1];
    *value = profile->profile.values[index];
  });
}

double lb_profile_max(const lb_profile* profile) {
  return profile ? profile->profile.max() : 0.0;
}

lb_status lb_profile_cumulative_check(const lb_spectrum* spectrum,
                                      const lb_profile* profile, int* ok) {
  return guarded([&] {
    require(spectrum && profile && ok, "null argument");
    *ok = latbound::cumulative_check(latbound::normalize(spectrum->spectrum),
                                     profile->profile);
  });
}

lb_status lb_profile_to_csv(const lb_profile* profile, char** out) {
  return guarded([&] {
    require(profile && out, "null argument");
    *out = copy_string(latbound::profile_to_csv(profile->profile));
  });
}

void lb_profile_free(lb_profile* profile) { delete profile; }

const char* lb_method_name(lb_method method) {
  switch (method) {
    case LB_METHOD_MHS: return "MHS";
    case LB_METHOD_DMHS: return "DMHS";
    case LB_METHOD_EDMHS: return "eDMHS";
    case LB_METHOD_SUB: return "SUB";
    case LB_METHOD_UB: return "UB";
    case LB_METHOD_SLB: return "SLB";
  }
  return "?";
}

lb_status lb_parse_method(const char* name, lb_method* out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = to_c(latbound::parse_method(name));
  });
}

lb_status lb_bound(const lb_spectrum* spectrum, lb_method method, double sigma,
                   lb_bound_result* out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    const auto model = latbound::make_awgn(spectrum->spectrum.n, sigma);
    fill(latbound::evaluate_bound(from_c(method), spectrum->spectrum, model), out);
  });
}

lb_status lb_sweep_run(const lb_spectrum* spectrum, const lb_method* methods,
                       size_t method_count, const double* sigmas,
                       size_t sigma_count, int threads, lb_sweep** out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    require(method_count == 0 || methods, "null methods");
    require(sigma_count == 0 || sigmas, "null sigmas");
    std::vector<latbound::BoundMethod> m;
    for (size_t i = 0; i < method_count; ++i) m.push_back(from_c(methods[i]));
    const std::vector<double> s(sigmas, sigmas + sigma_count);
    *out = new lb_sweep{latbound::sweep(spectrum->spectrum, m, s, {}, threads)};
  });
}

size_t lb_sweep_size(const lb_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

size_t lb_sweep_error_count(const lb_sweep* sweep) {
  size_t n = 0;
  if (sweep) {
    for (const auto& r : sweep->rows) n += r.result ? 0 : 1;
  }
  return n;
}

lb_status lb_sweep_row(const lb_sweep* sweep, size_t index, double* sigma,
                       double* vnr_db, lb_bound_result* result, const char** error) {
  return guarded([&] {
    require(sweep && sigma && vnr_db && result && error, "null argument");
    require(index < sweep->rows.size(), "index out of range");
    const auto& row = sweep->rows[index];
    *sigma = row.sigma;
    *vnr_db = row.vnr_db;
    *result = lb_bound_result{};
    result->method = to_c(row.method);
    if (row.result) {
      fill(*row.result, result);
      *error = nullptr;
    } else {
      *error = row.error.c_str();
    }
  });
}

lb_status lb_sweep_to_csv(const lb_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep && out, "null argument");
    *out = copy_string(latbound::sweep_to_csv(sweep->rows));
  });
}

lb_status lb_sweep_to_json(const lb_sweep* sweep, char** out) {
  return guarded([&] {
    require(sweep && out, "null argument");
    *out = copy_string(latbound::sweep_to_json(sweep->rows));
  });
}

void lb_sweep_free(lb_sweep* sweep) { delete sweep; }

lb_status lb_parse_grid(const char* text, double** values, size_t* count) {
  return guarded([&] {
    require(text && values && count, "null argument");
    const auto grid = latbound::parse_grid(text);
    *values = new double[grid.size()];
    std::copy(grid.begin(), grid.end(), *values);
    *count = grid.size();
  });
}

void lb_grid_free(double* values) { delete[] values; }

lb_status lb_critical_rates(double sigma, double* delta_star, double* delta_cr) {
  return guarded([&] {
    require(delta_star && delta_cr, "null argument");
    const auto rates = latbound::critical_rates(latbound::make_awgn(1, sigma));
    *delta_star = rates.delta_star;
    *delta_cr = rates.delta_cr;
  });
}

lb_status lb_poltyrev_exponent(double delta, double sigma, int literal_line,
                               double* out) {
  return guarded([&] {
    require(out, "null argument");
    require(std::isfinite(delta), "delta must be finite");
    *out = latbound::poltyrev_exponent(delta, latbound::make_awgn(1, sigma),
                                       literal_line != 0);
  });
}

lb_status lb_vnr_db(double sigma, double log_density, double* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = latbound::vnr_db(latbound::make_awgn(1, sigma), log_density);
  });
}

lb_status lb_vnr_db_to_sigma(double vnr_db, double log_density, double* out) {
  return guarded([&] {
    require(out, "null argument");
    require(std::isfinite(vnr_db) && std::isfinite(log_density),
            "arguments must be finite");
    *out = latbound::vnr_db_to_sigma(vnr_db, log_density);
  });
}

lb_status lb_nu_point(const lb_spectrum* spectrum, lb_policy policy,
                      double lambda_max, double sigma, double vnr_db,
                      int literal_line, lb_exponent_point* out) {
  return guarded([&] {
    require(spectrum && out, "null argument");
    latbound::NuOptions options;
    switch (policy) {
      case LB_POLICY_DMHS: options.policy = latbound::RPolicy::DmhsOptimized; break;
      case LB_POLICY_FIXED_LAMBDA_MAX:
        options.policy = latbound::RPolicy::FixedLambdaMax;
        break;
      case LB_POLICY_FIRST_SHELL: options.policy = latbound::RPolicy::FirstShell; break;
      default: require(false, "unknown policy");
    }
    options.lambda_max = lambda_max;
    if (!std::isnan(sigma)) options.sigma = sigma;
    if (!std::isnan(vnr_db)) options.vnr_db = vnr_db;
    options.literal_line = literal_line != 0;
    const auto p = latbound::nu_point(spectrum->spectrum, options);
    *out = lb_exponent_point{p.n, p.delta, p.alpha_n, p.nu, p.exponent};
  });
}

lb_status lb_gap_firstshell(const lb_spectrum* spectrum, double* value,
                            int* rng_monotone) {
  return guarded([&] {
    require(spectrum && value && rng_monotone, "null argument");
    const auto g = latbound::gap_to_capacity_firstshell(spectrum->spectrum);
    *value = g.value;
    *rng_monotone = g.rng_monotone;
  });
}

lb_status lb_simulate(const lb_lattice* lattice, double sigma, uint64_t trials,
                      uint64_t seed, int threads, lb_sim_result* out) {
  return guarded([&] {
    require(lattice && out, "null argument");
    const auto model = latbound::make_awgn(lattice->basis.n, sigma);
    const auto r = latbound::simulate(lattice->basis, model, trials, seed, threads);
    *out = lb_sim_result{r.sigma, r.trials, r.errors, r.p_hat, r.ci95_halfwidth,
                         r.seed};
  });
}

}  // extern "C"
