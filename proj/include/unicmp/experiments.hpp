// Monte Carlo averaging over Haar-random transforms, exact parameter sweeps
// and failure-manifold scans. Averages integrate the exact per-tuple p_diff
// (not single-shot outcomes); see strategies::sample_outcome for the
// single-shot path.
//
// Determinism: samples are processed in fixed chunks of kChunkSamples, each
// chunk owning PRNG stream = chunk index, and chunk partials are reduced by
// pairwise summation in chunk order. Results are therefore identical for any
// worker count.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unicmp/haar.hpp"
#include "unicmp/strategies.hpp"

namespace unicmp::experiments {

inline constexpr std::size_t kChunkSamples = 4096;

struct EstimationResult {
  std::string strategy_id;
  std::map<std::string, double> params;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// One row of the small-difference sweep: both transforms real with
/// theta_u = 0, theta_v = delta_theta, evaluated exactly (no sampling).
struct SweepRow {
  double delta_theta = 0.0;
  double single_particle = 0.0;
  double singlet = 0.0;
  double nonentangled = 0.0;
  double singlet_over_single_ratio = 0.0;
  double two_run_single_compound = 0.0;
};

struct ManifoldRow {
  double delta = 0.0;
  double single_particle = 0.0;
  double singlet = 0.0;
};

/// Strategy ids accepted by average_p_diff, in a stable order.
std::vector<std::string> registered_strategies();

/// Number of Monte Carlo samples recommended for a strategy (smaller for the
/// costlier Slater N>=3 and two-4-dim cases).
std::uint64_t default_samples(const std::string& strategy_id,
                              const std::map<std::string, double>& params);

/// Haar-averaged success probability. Draws independent transform tuples per
/// sample and averages the exact p_diff. Parameters are validated against the
/// strategy's guards before any sampling starts; unknown strategies or
/// parameters are rejected. Deterministic for fixed (strategy, params,
/// n_samples, seed), independent of `workers`.
EstimationResult average_p_diff(const std::string& strategy_id,
                                const std::map<std::string, double>& params,
                                std::uint64_t n_samples, std::uint64_t seed,
                                unsigned workers = 1);

/// Exact per-strategy success probabilities across a grid of theta
/// differences in (0, pi/2).
std::vector<SweepRow> sweep_delta_theta(const std::vector<double>& grid);

/// For each delta, compares U against the shifted transform
/// (|a|, alpha + delta, beta + delta, phi - delta): the single-particle
/// strategy is blind on this manifold while the singlet strategy is not
/// (except where the shift reproduces U itself).
std::vector<ManifoldRow> failure_manifold_scan(const haar::SU2Phase& u,
                                               const std::vector<double>& deltas);

/// 1 - (1 - p1)(1 - p2): success of two independent runs.
double two_run_compound(double p1, double p2);

/// Deterministic pairwise summation, used for cross-chunk reductions.
double pairwise_sum(const std::vector<double>& values);

}  // namespace unicmp::experiments
