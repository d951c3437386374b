#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "doctest.h"
#include "latbound/latbound.h"

TEST_CASE("version and errors") {
  CHECK(std::strlen(lb_version()) > 0);
  lb_lattice* l = nullptr;
  CHECK(lb_lattice_builtin("A2", &l) == LB_ERR_UNKNOWN_LATTICE);
  CHECK(l == nullptr);
  CHECK(std::string(lb_last_error()).find("A2") != std::string::npos);
  CHECK(lb_lattice_builtin(nullptr, &l) == LB_ERR_INVALID_ARGUMENT);
  CHECK(lb_lattice_builtin("Z2", nullptr) == LB_ERR_INVALID_ARGUMENT);
  CHECK(lb_lattice_load("/nonexistent/basis.json", &l) == LB_ERR_IO);
}

TEST_CASE("enumerate, serialize and bound") {
  lb_lattice* l = nullptr;
  REQUIRE(lb_lattice_builtin("Z2", &l) == LB_OK);
  CHECK(lb_lattice_dimension(l) == 2);
  lb_spectrum* s = nullptr;
  REQUIRE(lb_spectrum_enumerate(l, 3.0, 0, 1, &s) == LB_OK);
  CHECK(lb_spectrum_dimension(s) == 2);
  CHECK(lb_spectrum_complete_radius(s) == 3.0);
  CHECK(lb_spectrum_log_density(s) == 0.0);
  double n2 = 0;
  uint64_t c = 0;
  REQUIRE(lb_spectrum_entry(s, 1, &n2, &c) == LB_OK);
  CHECK(n2 == 2.0);
  CHECK(c == 4);
  CHECK(lb_spectrum_entry(s, 100, &n2, &c) == LB_ERR_INVALID_ARGUMENT);

  char* json = nullptr;
  REQUIRE(lb_spectrum_to_json(s, &json) == LB_OK);
  lb_spectrum* back = nullptr;
  REQUIRE(lb_spectrum_from_json(json, &back) == LB_OK);
  CHECK(lb_spectrum_size(back) == lb_spectrum_size(s));
  lb_string_free(json);
  CHECK(lb_spectrum_from_json("{\"n\": 2}", &back) == LB_ERR_SCHEMA);

  lb_bound_result r{};
  REQUIRE(lb_bound(s, LB_METHOD_UB, 0.1, &r) == LB_OK);
  CHECK(r.total == doctest::Approx(1.1466e-6).epsilon(1e-3));
  REQUIRE(lb_bound(s, LB_METHOD_DMHS, 0.25, &r) == LB_OK);
  CHECK(r.has_alpha == 1);
  CHECK(r.r_opt == doctest::Approx(0.5));
  CHECK(r.alpha_used == doctest::Approx(4 / std::numbers::pi));
  CHECK(lb_bound(s, LB_METHOD_DMHS, -1.0, &r) == LB_ERR_INVALID_ARGUMENT);

  lb_profile* p = nullptr;
  REQUIRE(lb_alpha_rng(s, 4, &p) == LB_OK);
  CHECK(lb_profile_size(p) == 4);
  double lo, hi, v;
  REQUIRE(lb_profile_shell(p, 0, &lo, &hi, &v) == LB_OK);
  CHECK(v == doctest::Approx(4 / std::numbers::pi));
  int ok = 0;
  REQUIRE(lb_profile_cumulative_check(s, p, &ok) == LB_OK);
  CHECK(ok == 1);
  lb_profile_free(p);

  lb_spectrum* small = nullptr;
  REQUIRE(lb_spectrum_truncate(s, 1, &small) == LB_OK);
  CHECK(lb_spectrum_size(small) == 1);
  lb_spectrum* e8 = nullptr;
  REQUIRE(lb_spectrum_catalog("E8", 1, &e8) == LB_OK);
  CHECK(lb_bound(e8, LB_METHOD_DMHS, 0.3, &r) == LB_ERR_SPECTRUM_HORIZON);
  lb_spectrum_free(e8);

  lb_spectrum_free(small);
  lb_spectrum_free(back);
  lb_spectrum_free(s);
  lb_lattice_free(l);
}

TEST_CASE("catalog, sweep and grid") {
  lb_spectrum* e8 = nullptr;
  REQUIRE(lb_spectrum_catalog("E8", 3, &e8) == LB_OK);
  CHECK(lb_spectrum_size(e8) == 3);
  CHECK(lb_spectrum_catalog("E9", 0, &e8) == LB_ERR_UNKNOWN_LATTICE);

  double* grid = nullptr;
  size_t count = 0;
  REQUIRE(lb_parse_grid("0.2:0.4:3", &grid, &count) == LB_OK);
  CHECK(count == 3);
  const lb_method methods[] = {LB_METHOD_SUB, LB_METHOD_SLB};
  lb_sweep* sw = nullptr;
  REQUIRE(lb_sweep_run(e8, methods, 2, grid, count, 2, &sw) == LB_OK);
  CHECK(lb_sweep_size(sw) == 6);
  double sigma, vnr;
  lb_bound_result r{};
  const char* err = nullptr;
  REQUIRE(lb_sweep_row(sw, 3, &sigma, &vnr, &r, &err) == LB_OK);
  CHECK(sigma == doctest::Approx(0.3));
  CHECK(r.method == LB_METHOD_SLB);
  char* csv = nullptr;
  REQUIRE(lb_sweep_to_csv(sw, &csv) == LB_OK);
  CHECK(std::string(csv).rfind("sigma,", 0) == 0);
  lb_string_free(csv);
  lb_sweep_free(sw);
  lb_grid_free(grid);
  CHECK(lb_parse_grid("1:2", &grid, &count) == LB_ERR_INVALID_ARGUMENT);

  lb_method m;
  CHECK(lb_parse_method("edmhs", &m) == LB_OK);
  CHECK(m == LB_METHOD_EDMHS);
  CHECK(std::string(lb_method_name(LB_METHOD_SUB)) == "SUB");
  lb_spectrum_free(e8);
}

TEST_CASE("exponent and simulation") {
  double star, cr;
  REQUIRE(lb_critical_rates(0.2, &star, &cr) == LB_OK);
  CHECK(star - cr == doctest::Approx(0.5 * std::log(2.0)));
  double e;
  REQUIRE(lb_poltyrev_exponent(star - 1.0, 0.2, 0, &e) == LB_OK);
  CHECK(e == doctest::Approx(1.0 + 0.5 * std::log(std::exp(1.0) / 4)));
  double db;
  REQUIRE(lb_vnr_db(0.2, 0.0, &db) == LB_OK);
  double sig;
  REQUIRE(lb_vnr_db_to_sigma(db, 0.0, &sig) == LB_OK);
  CHECK(sig == doctest::Approx(0.2));

  lb_spectrum* d4 = nullptr;
  REQUIRE(lb_spectrum_catalog("D4", 0, &d4) == LB_OK);
  lb_exponent_point p{};
  REQUIRE(lb_nu_point(d4, LB_POLICY_FIRST_SHELL, 0.0, NAN, NAN, 0, &p) == LB_OK);
  CHECK(p.nu == doctest::Approx(0.222149).epsilon(1e-5));
  double gap;
  int mono;
  REQUIRE(lb_gap_firstshell(d4, &gap, &mono) == LB_OK);
  CHECK(gap == doctest::Approx(p.nu));
  CHECK(lb_nu_point(d4, LB_POLICY_FIRST_SHELL, 0.0, 0.2, 3.0, 0, &p) == LB_ERR_INVALID_ARGUMENT);
  lb_spectrum_free(d4);

  lb_lattice* z2 = nullptr;
  REQUIRE(lb_lattice_builtin("Z2", &z2) == LB_OK);
  lb_sim_result a{}, b{};
  REQUIRE(lb_simulate(z2, 0.5, 10000, 9, 1, &a) == LB_OK);
  REQUIRE(lb_simulate(z2, 0.5, 10000, 9, 2, &b) == LB_OK);
  CHECK(a.errors == b.errors);
  lb_lattice_free(z2);
  lb_lattice* leech = nullptr;
  REQUIRE(lb_lattice_builtin("Leech", &leech) == LB_OK);
  CHECK(lb_simulate(leech, 0.3, 10, 1, 1, &a) == LB_ERR_UNSUPPORTED);
  lb_lattice_free(leech);
}
