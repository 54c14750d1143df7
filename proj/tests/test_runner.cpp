#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qent/runner.hpp"

using namespace qent;
using Catch::Matchers::WithinAbs;

namespace {

SweepConfig tiny_sweep() {
  SweepConfig config;
  config.lambda_min = 0.0;
  config.lambda_max = 1.2;
  config.steps = 7;
  config.refine = RefineWindow{1.0, 0.05, 0.025};
  config.l_max = 3;
  config.threads = 2;
  return config;
}

}  // namespace

TEST_CASE("sweep grid layout") {
  const auto grid = sweep_grid(tiny_sweep());
  REQUIRE(!grid.empty());
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  // coarse points inside the window are replaced by the fine ones
  CHECK(std::count(grid.begin(), grid.end(), 1.0) == 1);
  CHECK(std::count(grid.begin(), grid.end(), 0.975) == 1);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.2);

  SweepConfig bad = tiny_sweep();
  bad.lambda_max = bad.lambda_min;
  CHECK_THROWS_AS(sweep_grid(bad), std::invalid_argument);
  bad = tiny_sweep();
  bad.steps = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sweep rows") {
  const auto config = tiny_sweep();
  const auto rows = run_sweep(config);
  const auto grid = sweep_grid(config);
  REQUIRE(rows.size() == grid.size());

  // lambda = 0 row is exactly zero everywhere, and not an upper bound
  CHECK(rows.front().lambda == 0.0);
  CHECK(rows.front().eg1 == 0.0);
  CHECK(rows.front().eg2 == 0.0);
  for (int l = 1; l <= config.l_max; ++l) {
    CHECK(rows.front().g2l[static_cast<std::size_t>(l)] == 0.0);
  }
  CHECK(rows.front().sv == 0.0);
  CHECK(!rows.front().upper_bound);

  for (const auto& r : rows) {
    CHECK(r.upper_bound == (r.lambda > 1.0));
    CHECK((r.eg1 >= 0.0 && r.eg1 <= 1.0));
    CHECK((r.eg2 >= 0.0 && r.eg2 <= 1.0));
    CHECK((r.sv >= 0.0 && r.sv <= 1.0));
  }
}

TEST_CASE("sweep output is deterministic and round-trips") {
  const auto config = tiny_sweep();
  const std::string csv_a = sweep_csv(run_sweep(config), config.l_max).str();
  const std::string csv_b = sweep_csv(run_sweep(config), config.l_max).str();
  CHECK(csv_a == csv_b);

  // parse every numeric field back and re-format: identical bytes
  std::istringstream in(csv_a);
  std::string header, line;
  std::getline(in, header);
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field;
    int column = 0;
    while (std::getline(fields, field, ',')) {
      ++column;
      if (column > 1 + 1 + 1 + config.l_max + 1) break;  // upper_bound flag
      CHECK(csv::fmt(std::strtod(field.c_str(), nullptr)) == field);
    }
  }
}

TEST_CASE("table1 rows") {
  const auto rows = run_table1({4, 5, 6});
  // GHZ and W at all three sizes, EPR only at even sizes
  CHECK(rows.size() == 3 + 2 + 3);
  for (const auto& r : rows) {
    CHECK(r.max_abs_diff < 1e-12);
    if (r.family == ParadigmTag::GHZ) {
      CHECK(r.closed.eg1 == 1.0);
      CHECK_THAT(r.closed.g21, WithinAbs(2.0 / 3.0, 1e-15));
    }
  }
  const std::string csv_text = table1_csv(rows).str();
  CHECK(csv_text.find("GHZ,4,1,") != std::string::npos);
  CHECK(csv_text == table1_csv(run_table1({4, 5, 6})).str());
}

TEST_CASE("gl profile") {
  const QuadratureSpec quad;
  const auto zero = run_gl_profile(0.0, {1, 2, 3}, quad);
  for (const auto& r : zero) CHECK(r.g2l == 0.0);

  const auto critical = run_gl_profile(1.0, {1, 15}, quad);
  CHECK(critical[1].g2l > critical[0].g2l);

  CHECK_THROWS_AS(run_gl_profile(1.0, {3, 2}, quad), std::invalid_argument);
  CHECK_THROWS_AS(run_gl_profile(1.0, {}, quad), std::invalid_argument);
}

TEST_CASE("sweep aborts loudly when quadrature cannot converge") {
  SweepConfig config = tiny_sweep();
  config.quad.max_nodes = 16;
  config.quad.rel_tol = 1e-14;
  CHECK_THROWS_WITH(run_sweep(config),
                    Catch::Matchers::ContainsSubstring("lambda"));
}

TEST_CASE("oracle compare guard rails") {
  const QuadratureSpec quad;
  CHECK_THROWS_AS(run_oracle_compare({8, 10}, {0.5}, 1, quad), std::invalid_argument);
  CHECK_THROWS_AS(run_oracle_compare({8, 10, 12}, {1.5}, 1, quad), std::invalid_argument);
  CHECK_THROWS_AS(run_oracle_compare({4, 6, 8}, {0.5}, 7, quad), std::invalid_argument);
}

TEST_CASE("oracle compare skips degenerate-gap couplings with a status") {
  const QuadratureSpec quad;
  const auto rows = run_oracle_compare({10, 12, 14}, {3.0}, 1, quad, true);
  REQUIRE(!rows.empty());
  for (const auto& r : rows) {
    CHECK(r.status == "skipped_degenerate");
    CHECK(std::isnan(r.abs_diff));
  }
  // the skip still records a full set of ED rows
  const auto csv_text = oracle_csv(rows).str();
  CHECK(csv_text.find("skipped_degenerate") != std::string::npos);
}

TEST_CASE("oracle compare emits point and extrapolation rows") {
  const QuadratureSpec quad;
  const auto rows = run_oracle_compare({6, 8, 10}, {0.4}, 1, quad, false, 2);
  int points = 0, extraps = 0;
  for (const auto& r : rows) {
    CHECK(r.status == "ok");
    if (r.kind == "point") ++points;
    if (r.kind == "extrap") ++extraps;
    if (r.kind == "extrap" && r.observable == "sz") {
      CHECK(r.abs_diff < 5e-3);  // small chains, gapped: near-converged
    }
  }
  CHECK(points == 3 * 7);   // eg1, g21, eg2, sz, xx1, yy1, zz1 per N
  CHECK(extraps == 5);      // eg1, sz, xx1, yy1, zz1
  const auto csv_text = oracle_csv(rows).str();
  CHECK(csv_text.rfind("kind,n,lambda,status,observable", 0) == 0);
}
