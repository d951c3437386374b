#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "latbound/catalog.hpp"
#include "latbound/error.hpp"
#include "latbound/exponent.hpp"
#include "latbound/lattices.hpp"
#include "latbound/sweep.hpp"

using namespace latbound;

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.1:0.5:5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 0.5);
  CHECK(g[2] == doctest::Approx(0.3));
  CHECK(parse_grid("0.2:0.2:1") == std::vector<double>{0.2});
  for (const char* bad : {"", "0.1:0.5", "0.1:0.5:0", "a:b:3", "0.1:0.5:1", "0.1:0.5:2:3", "0.1:0.5:2x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_grid(bad), Error);
  }
}

TEST_CASE("sweep order, threads and error rows") {
  // One E8 shell is not enough for the DMHS radius at any noise level.
  const auto spec = catalog_spectrum("E8", 1);
  const std::vector<BoundMethod> methods = {BoundMethod::UB, BoundMethod::DMHS, BoundMethod::SLB};
  const std::vector<double> sigmas = {0.2, 0.3, 2.0};
  const auto one = sweep(spec, methods, sigmas, {}, 1);
  const auto four = sweep(spec, methods, sigmas, {}, 4);
  REQUIRE(one.size() == 9);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].sigma == sigmas[i / 3]);
    CHECK(one[i].method == methods[i % 3]);
    CHECK(one[i].vnr_db == doctest::Approx(vnr_db(make_awgn(8, one[i].sigma), spec.log_density)));
  }
  CHECK(sweep_to_csv(one) == sweep_to_csv(four));
  CHECK(sweep_to_json(one) == sweep_to_json(four));
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].result.has_value() == (one[i].method != BoundMethod::DMHS));
    CHECK(one[i].error.empty() == one[i].result.has_value());
  }

  const auto csv = sweep_to_csv(one);
  CHECK(csv.rfind("sigma,vnr_db,method,r_opt,ubt,sbt,total,M_used,alpha_used,iterations,status\n", 0) == 0);
  CHECK(csv.find(",DMHS,,,,,,,,error\n") != std::string::npos);
  const auto json = nlohmann::json::parse(sweep_to_json(one));
  REQUIRE(json.is_array());
  CHECK(json.size() == 9);
  CHECK(json[0]["method"] == "UB");
}
