/* C interface to the latbound library. Every function returning lb_status
 * leaves a description of the last failure in lb_last_error() (per thread).
 * Objects returned through out-pointers are owned by the caller and released
 * with the matching *_free function; strings with lb_string_free. */
#ifndef LATBOUND_LATBOUND_H
#define LATBOUND_LATBOUND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LATBOUND_BUILDING_LIBRARY)
#define LB_API __declspec(dllexport)
#else
#define LB_API __declspec(dllimport)
#endif
#else
#define LB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lb_status {
  LB_OK = 0,
  LB_ERR_INVALID_ARGUMENT = 1,
  LB_ERR_SINGULAR_BASIS = 2,
  LB_ERR_ENUMERATION_OVERFLOW = 3,
  LB_ERR_SPECTRUM_HORIZON = 4,
  LB_ERR_SCHEMA = 5,
  LB_ERR_IO = 6,
  LB_ERR_NOT_CONVERGED = 7,
  LB_ERR_UNSUPPORTED = 8,
  LB_ERR_UNKNOWN_LATTICE = 9,
  LB_ERR_INTERNAL = 99
} lb_status;

typedef enum lb_method {
  LB_METHOD_MHS = 0,
  LB_METHOD_DMHS = 1,
  LB_METHOD_EDMHS = 2,
  LB_METHOD_SUB = 3,
  LB_METHOD_UB = 4,
  LB_METHOD_SLB = 5
} lb_method;

typedef enum lb_policy {
  LB_POLICY_DMHS = 0,
  LB_POLICY_FIXED_LAMBDA_MAX = 1,
  LB_POLICY_FIRST_SHELL = 2
} lb_policy;

typedef struct lb_lattice lb_lattice;
typedef struct lb_spectrum lb_spectrum;
typedef struct lb_profile lb_profile;
typedef struct lb_sweep lb_sweep;

typedef struct lb_bound_result {
  lb_method method;
  double r_opt;
  double ubt;
  double sbt;
  double total;
  double raw_total;
  size_t shells_used;
  int has_alpha;
  double alpha_used;
  int iterations;
  double quadrature_error;
  int flagged;
  int truncated;
  int horizon_limited;
} lb_bound_result;

typedef struct lb_exponent_point {
  int n;
  double delta;
  double alpha_n;
  double nu;
  double exponent;
} lb_exponent_point;

typedef struct lb_sim_result {
  double sigma;
  uint64_t trials;
  uint64_t errors;
  double p_hat;
  double ci95_halfwidth;
  uint64_t seed;
} lb_sim_result;

LB_API const char* lb_version(void);
LB_API const char* lb_last_error(void);
LB_API void lb_string_free(char* s);

/* Lattices */
LB_API lb_status lb_lattice_builtin(const char* name, lb_lattice** out);
LB_API lb_status lb_lattice_load(const char* path, lb_lattice** out);
LB_API int lb_lattice_dimension(const lb_lattice* lattice);
/* NLD -ln(det)/n of the lattice. */
LB_API double lb_lattice_log_density(const lb_lattice* lattice);
LB_API void lb_lattice_free(lb_lattice* lattice);

/* Distance spectra. max_vectors = 0 keeps the default cap. */
LB_API lb_status lb_spectrum_enumerate(const lb_lattice* lattice, double radius,
                                       uint64_t max_vectors, int threads,
                                       lb_spectrum** out);
/* shells = 0 returns every tabulated shell. */
LB_API lb_status lb_spectrum_catalog(const char* name, size_t shells,
                                     lb_spectrum** out);
LB_API lb_status lb_spectrum_load(const char* path, lb_spectrum** out);
LB_API lb_status lb_spectrum_from_json(const char* json, lb_spectrum** out);
LB_API lb_status lb_spectrum_truncate(const lb_spectrum* spectrum, size_t shells,
                                      lb_spectrum** out);
LB_API lb_status lb_spectrum_to_json(const lb_spectrum* spectrum, char** out);
LB_API lb_status lb_spectrum_to_csv(const lb_spectrum* spectrum, char** out);
LB_API size_t lb_spectrum_size(const lb_spectrum* spectrum);
LB_API int lb_spectrum_dimension(const lb_spectrum* spectrum);
/* Borrowed; valid while the spectrum lives. */
LB_API const char* lb_spectrum_name(const lb_spectrum* spectrum);
LB_API double lb_spectrum_log_density(const lb_spectrum* spectrum);
LB_API double lb_spectrum_complete_radius(const lb_spectrum* spectrum);
LB_API lb_status lb_spectrum_entry(const lb_spectrum* spectrum, size_t index,
                                   double* norm_sq, uint64_t* count);
LB_API void lb_spectrum_free(lb_spectrum* spectrum);

/* Alpha profiles (normalized radii). lambda_max is in the spectrum's units. */
LB_API lb_status lb_alpha_rng(const lb_spectrum* spectrum, size_t shells,
                              lb_profile** out);
LB_API lb_status lb_alpha_opt(const lb_spectrum* spectrum, double lambda_max,
                              lb_profile** out);
LB_API size_t lb_profile_size(const lb_profile* profile);
LB_API lb_status lb_profile_shell(const lb_profile* profile, size_t index,
                                  double* lo, double* hi, double* value);
LB_API double lb_profile_max(const lb_profile* profile);
LB_API lb_status lb_profile_cumulative_check(const lb_spectrum* spectrum,
                                             const lb_profile* profile, int* ok);
LB_API lb_status lb_profile_to_csv(const lb_profile* profile, char** out);
LB_API void lb_profile_free(lb_profile* profile);

/* Bounds */
LB_API const char* lb_method_name(lb_method method);
LB_API lb_status lb_parse_method(const char* name, lb_method* out);
LB_API lb_status lb_bound(const lb_spectrum* spectrum, lb_method method,
                          double sigma, lb_bound_result* out);
LB_API lb_status lb_sweep_run(const lb_spectrum* spectrum, const lb_method* methods,
                              size_t method_count, const double* sigmas,
                              size_t sigma_count, int threads, lb_sweep** out);
LB_API size_t lb_sweep_size(const lb_sweep* sweep);
LB_API size_t lb_sweep_error_count(const lb_sweep* sweep);
/* error receives NULL for successful rows; the string lives with the sweep. */
LB_API lb_status lb_sweep_row(const lb_sweep* sweep, size_t index, double* sigma,
                              double* vnr_db, lb_bound_result* result,
                              const char** error);
LB_API lb_status lb_sweep_to_csv(const lb_sweep* sweep, char** out);
LB_API lb_status lb_sweep_to_json(const lb_sweep* sweep, char** out);
LB_API void lb_sweep_free(lb_sweep* sweep);

/* Exponents. Grids are "start:stop:count". */
LB_API lb_status lb_parse_grid(const char* text, double** values, size_t* count);
LB_API void lb_grid_free(double* values);
LB_API lb_status lb_critical_rates(double sigma, double* delta_star,
                                   double* delta_cr);
LB_API lb_status lb_poltyrev_exponent(double delta, double sigma,
                                      int literal_line, double* out);
LB_API lb_status lb_vnr_db(double sigma, double log_density, double* out);
LB_API lb_status lb_vnr_db_to_sigma(double vnr_db, double log_density,
                                    double* out);
/* Exactly one of sigma and vnr_db may be non-NaN; both NaN means 3 dB. */
LB_API lb_status lb_nu_point(const lb_spectrum* spectrum, lb_policy policy,
                             double lambda_max, double sigma, double vnr_db,
                             int literal_line, lb_exponent_point* out);
LB_API lb_status lb_gap_firstshell(const lb_spectrum* spectrum, double* value,
                                   int* rng_monotone);

/* Monte Carlo (Zn, D4, E8 only) */
LB_API lb_status lb_simulate(const lb_lattice* lattice, double sigma,
                             uint64_t trials, uint64_t seed, int threads,
                             lb_sim_result* out);

#ifdef __cplusplus
}
#endif

#endif
