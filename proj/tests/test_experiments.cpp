#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "unicmp/experiments.hpp"

using namespace unicmp;
namespace experiments = unicmp::experiments;

TEST_CASE("monte carlo averages are deterministic and worker-independent") {
  const auto a = experiments::average_p_diff("single-particle", {}, 20000, 77, 1);
  const auto b = experiments::average_p_diff("single-particle", {}, 20000, 77, 1);
  const auto c = experiments::average_p_diff("single-particle", {}, 20000, 77, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean == c.mean);
  CHECK(a.std_error == c.std_error);

  const auto d = experiments::average_p_diff("single-particle", {}, 20000, 78, 1);
  CHECK(a.mean != d.mean);
}

TEST_CASE("averages land on the analytic values (smoke counts)") {
  const auto single = experiments::average_p_diff("single-particle", {}, 20000, 5);
  CHECK(std::abs(single.mean - 0.5) < 6.0 * single.std_error);
  CHECK(single.mean >= 0.0);
  CHECK(single.mean <= 1.0);
  CHECK(single.n_samples == 20000);

  const auto singlet = experiments::average_p_diff("singlet", {}, 20000, 5);
  CHECK(std::abs(singlet.mean - 0.75) < 6.0 * singlet.std_error);

  const auto multi = experiments::average_p_diff("multi-single-particle", {{"n", 4}}, 20000, 5);
  CHECK(std::abs(multi.mean - 0.75) < 6.0 * multi.std_error);
}

TEST_CASE("strategy and parameter validation happens before sampling") {
  CHECK_THROWS_AS(experiments::average_p_diff("no-such-strategy", {}, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiments::average_p_diff("single-particle", {{"n", 3}}, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiments::average_p_diff("multi-single-particle", {{"n", 1}}, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiments::average_p_diff("slater", {{"n", 5}}, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiments::average_p_diff("symmetric-multi", {{"d", 36}, {"n", 6}}, 1000, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(experiments::average_p_diff("single-particle", {}, 50, 1),
                  std::invalid_argument);
}

TEST_CASE("registered strategies all run") {
  for (const auto& id : experiments::registered_strategies()) {
    const auto r = experiments::average_p_diff(id, {}, 256, 9);
    CHECK(r.mean >= 0.0);
    CHECK(r.mean <= 1.0);
    CHECK(r.std_error >= 0.0);
    CHECK(r.strategy_id == id);
  }
}

TEST_CASE("two-run compound probability") {
  CHECK(experiments::two_run_compound(0.5, 0.5) == 0.75);
  CHECK(experiments::two_run_compound(0.0, 0.7) == doctest::Approx(0.7));
  CHECK(experiments::two_run_compound(1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(experiments::two_run_compound(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(experiments::two_run_compound(0.5, 1.2), std::invalid_argument);
}

TEST_CASE("delta-theta sweep rows") {
  const auto rows = experiments::sweep_delta_theta({0.2, 0.1, 0.05, 0.01});
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(std::abs(row.single_particle - std::pow(std::sin(row.delta_theta / 2.0), 2)) < 1e-12);
    CHECK(std::abs(row.singlet - std::pow(std::sin(row.delta_theta), 2)) < 1e-12);
    CHECK(std::abs(row.nonentangled - 0.5 * std::pow(std::sin(row.delta_theta), 2)) < 1e-12);
  }
  // The singlet advantage approaches a factor of four, and one singlet run
  // approaches twice the two-run single-particle compound.
  CHECK(std::abs(rows[3].singlet_over_single_ratio - 4.0) < 1e-3);
  CHECK(std::abs(rows[3].singlet / (2.0 * rows[3].two_run_single_compound) - 1.0) < 0.01);

  const auto near_limit = experiments::sweep_delta_theta({1.5707963});
  CHECK(near_limit[0].singlet == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(experiments::sweep_delta_theta({}), std::invalid_argument);
  CHECK_THROWS_AS(experiments::sweep_delta_theta({-0.1}), std::invalid_argument);
  CHECK_THROWS_AS(experiments::sweep_delta_theta({2.0}), std::invalid_argument);
}

TEST_CASE("failure manifold scan") {
  const haar::SU2Phase u{std::numbers::pi / 4.0, 0.0, 0.0, 0.0};
  const auto rows = experiments::failure_manifold_scan(u, {0.0, 0.5, 1.0});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].single_particle < 1e-15);
  CHECK(rows[0].singlet < 1e-15);
  for (const auto& row : rows) {
    CHECK(row.single_particle < 1e-12);
    CHECK(std::abs(row.singlet - std::pow(std::sin(row.delta), 2)) < 1e-12);
  }
  CHECK(rows[1].singlet > 0.2);
}

TEST_CASE("pairwise summation matches sequential summation") {
  haar::SeededRng rng(31, 0);
  std::vector<double> values(5000);
  double sequential = 0.0;
  for (auto& v : values) {
    v = rng.uniform() - 0.5;
    sequential += v;
  }
  CHECK(std::abs(experiments::pairwise_sum(values) - sequential) < 1e-9);
  CHECK(experiments::pairwise_sum({}) == 0.0);
}
