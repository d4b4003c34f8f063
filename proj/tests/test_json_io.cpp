#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "unicmp/json_io.hpp"

using namespace unicmp;
namespace io = unicmp::io;
using linalg::ComplexMatrix;
using linalg::PureState;
using linalg::cplx;

TEST_CASE("matrix json round trip") {
  haar::SeededRng rng(51, 0);
  const auto u = haar::sample_unitary(3, rng);
  const auto restored = io::matrix_from_json(io::parse_json(io::matrix_to_json(u).dump(), "m"));
  CHECK(u.max_abs_diff(restored) == 0.0);
}

TEST_CASE("state json round trip") {
  const PureState psi({2, 2}, {cplx{0.5, 0.0}, cplx{0.0, 0.5}, cplx{-0.5, 0.0}, cplx{0.0, -0.5}});
  const auto restored = io::state_from_json(io::parse_json(io::state_to_json(psi).dump(), "s"));
  REQUIRE(restored.dims() == psi.dims());
  for (std::size_t i = 0; i < 4; ++i) CHECK(restored[i] == psi[i]);
}

TEST_CASE("su2 json round trip and validation") {
  const haar::SU2Phase p{0.3, 1.2, 4.5, 2.2};
  const auto restored = io::su2_from_json(io::parse_json(io::su2_to_json(p).dump(), "p"));
  CHECK(restored.theta == p.theta);
  CHECK(restored.alpha == p.alpha);
  CHECK(restored.beta == p.beta);
  CHECK(restored.phi == p.phi);

  CHECK_THROWS_WITH_AS(io::su2_from_json(io::parse_json(R"({"theta": 0.1})", "p")),
                       doctest::Contains("alpha"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      io::su2_from_json(io::parse_json(R"({"theta": 3.0, "alpha": 0, "beta": 0, "phi": 0})", "p")),
      doctest::Contains("theta"), std::invalid_argument);
}

TEST_CASE("malformed documents name the offending field") {
  CHECK_THROWS_WITH_AS(io::matrix_from_json(io::parse_json(R"({"rows": 2, "cols": 2})", "m")),
                       doctest::Contains("entries"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      io::matrix_from_json(io::parse_json(
          R"({"rows": 2, "cols": 2, "entries": [[1,0],[0,0],[0,0]]})", "m")),
      doctest::Contains("entries"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      io::state_from_json(io::parse_json(R"({"amplitudes": [[1,0]]})", "s")),
      doctest::Contains("dims"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_json("{not json", "input"), std::invalid_argument);

  // Unnormalised states are rejected, never silently rescaled.
  CHECK_THROWS_WITH_AS(
      io::state_from_json(io::parse_json(R"({"dims": [2], "amplitudes": [[1,0],[1,0]]})", "s")),
      doctest::Contains("normalised"), std::invalid_argument);
}

TEST_CASE("csv uses 12 significant digits and matches json values") {
  CHECK(io::format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(1.0) == "1");

  experiments::EstimationResult r;
  r.strategy_id = "singlet";
  r.params = {{"n", 2.0}};
  r.mean = 0.7481234567891234;
  r.std_error = 0.0012345678901234;
  r.n_samples = 100000;
  r.seed = 42;

  const std::string csv = io::estimation_to_csv(r);
  CHECK(csv.rfind("strategy,params,mean,std_error,n_samples,seed\n", 0) == 0);

  // The CSV row and the JSON record agree to 12 significant digits.
  std::stringstream ss(csv);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  std::stringstream fields(row);
  std::string strategy, params, mean_str, se_str;
  std::getline(fields, strategy, ',');
  std::getline(fields, params, ',');
  std::getline(fields, mean_str, ',');
  std::getline(fields, se_str, ',');
  const auto j = io::estimation_to_json(r);
  CHECK(std::abs(std::stod(mean_str) - j["mean"].get<double>()) < 1e-12 * std::abs(r.mean));
  CHECK(std::abs(std::stod(se_str) - j["std_error"].get<double>()) <
        1e-11 * std::abs(r.std_error));

  const auto rows = experiments::sweep_delta_theta({0.2, 0.1});
  const std::string sweep_csv = io::sweep_to_csv(rows);
  CHECK(sweep_csv.rfind("delta_theta,", 0) == 0);
  CHECK(sweep_csv.find('\r') == std::string::npos);  // LF endings only

  strategies::StrategyReport report;
  report.p_diff = 0.25;
  report.ambient_dim = 4;
  report.difference_subspace_dim = 1;
  report.outcomes = {{"psi-", 0.25, true}, {"rest", 0.75, false}};
  const auto rj = io::report_to_json(report);
  CHECK(rj["p_diff"].get<double>() == 0.25);
  CHECK(io::report_to_csv(report).find("outcome_different,psi-,0.25") != std::string::npos);
}
