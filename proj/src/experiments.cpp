#include "unicmp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

namespace unicmp::experiments {

namespace {

using haar::SeededRng;
using linalg::ComplexMatrix;
using linalg::PureState;

using SampleFn = std::function<double(SeededRng&, std::uint64_t sample_index)>;

double get_param(const std::map<std::string, double>& params, const std::string& key,
                 double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::size_t get_count(const std::map<std::string, double>& params, const std::string& key,
                      std::size_t fallback, std::size_t lo, std::size_t hi) {
  const double raw = get_param(params, key, static_cast<double>(fallback));
  const double rounded = std::round(raw);
  if (std::abs(raw - rounded) > 1e-9 || rounded < static_cast<double>(lo) ||
      rounded > static_cast<double>(hi))
    throw std::invalid_argument("parameter '" + key + "' must be an integer in [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                std::to_string(raw));
  return static_cast<std::size_t>(rounded);
}

void reject_unknown_params(const std::map<std::string, double>& params,
                           const std::set<std::string>& allowed) {
  for (const auto& [key, value] : params)
    if (!allowed.contains(key))
      throw std::invalid_argument("unknown parameter '" + key + "' for this strategy");
}

/// Builds the per-sample evaluator; throws before any sampling on unknown
/// strategies or guard violations.
SampleFn make_sampler(const std::string& strategy_id,
                      const std::map<std::string, double>& params) {
  if (strategy_id == "single-particle") {
    reject_unknown_params(params, {});
    return [](SeededRng& rng, std::uint64_t) {
      const auto u = haar::sample_su2_phase(rng);
      const auto v = haar::sample_su2_phase(rng);
      return strategies::single_particle_p_diff(u, v);
    };
  }
  if (strategy_id == "singlet") {
    reject_unknown_params(params, {});
    return [](SeededRng& rng, std::uint64_t) {
      const auto u = haar::sample_su2_phase(rng);
      const auto v = haar::sample_su2_phase(rng);
      return strategies::singlet_p_diff(u, v);
    };
  }
  if (strategy_id == "singlet-orthostart") {
    reject_unknown_params(params, {});
    const PureState start = strategies::bell_basis()[2];  // Phi+
    return [start](SeededRng& rng, std::uint64_t) {
      const auto u = haar::sample_su2_phase(rng);
      const auto v = haar::sample_su2_phase(rng);
      return strategies::singlet_orthostart_p_diff(u, v, start);
    };
  }
  if (strategy_id == "nonentangled") {
    reject_unknown_params(params, {"d"});
    const std::size_t d = get_count(params, "d", 2, 2, haar::kMaxHaarDim);
    const PureState psi = PureState::basis_state(d, 0);
    return [d, psi](SeededRng& rng, std::uint64_t) {
      const ComplexMatrix u = haar::sample_unitary(d, rng);
      const ComplexMatrix v = haar::sample_unitary(d, rng);
      return strategies::nonentangled_p_diff(u, v, psi);
    };
  }
  if (strategy_id == "multi-single-particle") {
    reject_unknown_params(params, {"n"});
    const std::size_t n = get_count(params, "n", 2, 2, 64);
    return [n](SeededRng& rng, std::uint64_t) {
      std::vector<haar::SU2Phase> us(n);
      for (auto& u : us) u = haar::sample_su2_phase(rng);
      return strategies::multi_single_particle_p_diff(us);
    };
  }
  if (strategy_id == "symmetric-multi") {
    reject_unknown_params(params, {"d", "n"});
    const std::size_t d = get_count(params, "d", 2, 2, haar::kMaxHaarDim);
    const std::size_t n = get_count(params, "n", 3, 2, 6);
    double ambient = 1.0;
    for (std::size_t i = 0; i < n; ++i) ambient *= static_cast<double>(d);
    if (ambient > static_cast<double>(linalg::kMaxAmbientDim))
      throw std::invalid_argument("symmetric-multi: d^N exceeds the ambient dimension guard");
    const PureState psi = PureState::basis_state(d, 0);
    return [d, n, psi](SeededRng& rng, std::uint64_t) {
      std::vector<ComplexMatrix> us;
      us.reserve(n);
      for (std::size_t i = 0; i < n; ++i) us.push_back(haar::sample_unitary(d, rng));
      return strategies::symmetric_subspace_multi_p_diff(us, psi);
    };
  }
  if (strategy_id == "column") {
    reject_unknown_params(params, {"m", "column"});
    const std::size_t m = get_count(params, "m", 2, 2, haar::kMaxHaarDim);
    const std::size_t column = get_count(params, "column", 0, 0, m - 1);
    return [m, column](SeededRng& rng, std::uint64_t) {
      const ComplexMatrix u = haar::sample_unitary(m, rng);
      const ComplexMatrix v = haar::sample_unitary(m, rng);
      return strategies::column_strategy_p_diff(u, v, column);
    };
  }
  if (strategy_id == "mixed-column") {
    reject_unknown_params(params, {"m"});
    const std::size_t m = get_count(params, "m", 2, 2, haar::kMaxHaarDim);
    return [m](SeededRng& rng, std::uint64_t) {
      const ComplexMatrix u = haar::sample_unitary(m, rng);
      const ComplexMatrix v = haar::sample_unitary(m, rng);
      return strategies::mixed_column_p_diff(u, v);
    };
  }
  if (strategy_id == "slater") {
    reject_unknown_params(params, {"n"});
    const std::size_t n = get_count(params, "n", 2, 2, 4);
    return [n](SeededRng& rng, std::uint64_t) {
      std::vector<ComplexMatrix> us;
      us.reserve(n);
      for (std::size_t i = 0; i < n; ++i) us.push_back(haar::sample_unitary(n, rng));
      return strategies::slater_p_diff(us);
    };
  }
  if (strategy_id == "two-fourdim-nonsym") {
    reject_unknown_params(params, {});
    const auto basis = strategies::two_fourdim_nonsym_basis();
    return [basis](SeededRng& rng, std::uint64_t index) {
      const ComplexMatrix u = haar::sample_unitary(4, rng);
      const ComplexMatrix v = haar::sample_unitary(4, rng);
      return strategies::two_fourdim_nonsym_p_diff(u, v, basis[index % basis.size()]);
    };
  }
  if (strategy_id == "two-fourdim-symstart") {
    reject_unknown_params(params, {});
    const auto basis = linalg::symmetric_projector(4, 2).basis();
    return [basis](SeededRng& rng, std::uint64_t index) {
      const ComplexMatrix u = haar::sample_unitary(4, rng);
      const ComplexMatrix v = haar::sample_unitary(4, rng);
      return strategies::two_fourdim_symstart_p_diff(u, v, basis[index % basis.size()]);
    };
  }
  std::string known;
  for (const auto& id : registered_strategies()) known += (known.empty() ? "" : ", ") + id;
  throw std::invalid_argument("unknown strategy '" + strategy_id + "' (known: " + known + ")");
}

}  // namespace

std::vector<std::string> registered_strategies() {
  return {"single-particle",  "singlet",      "singlet-orthostart",  "nonentangled",
          "multi-single-particle", "symmetric-multi", "column",      "mixed-column",
          "slater",           "two-fourdim-nonsym", "two-fourdim-symstart"};
}

std::uint64_t default_samples(const std::string& strategy_id,
                              const std::map<std::string, double>& params) {
  if (strategy_id == "two-fourdim-nonsym" || strategy_id == "two-fourdim-symstart") return 10000;
  if (strategy_id == "slater" && get_param(params, "n", 2) >= 3) return 10000;
  return 100000;
}

double pairwise_sum(const std::vector<double>& values) {
  std::function<double(std::size_t, std::size_t)> sum = [&](std::size_t lo,
                                                            std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += values[i];
      return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return sum(lo, mid) + sum(mid, hi);
  };
  return values.empty() ? 0.0 : sum(0, values.size());
}

EstimationResult average_p_diff(const std::string& strategy_id,
                                const std::map<std::string, double>& params,
                                std::uint64_t n_samples, std::uint64_t seed, unsigned workers) {
  if (n_samples < 100) throw std::invalid_argument("average_p_diff needs at least 100 samples");
  const SampleFn sample = make_sampler(strategy_id, params);

  const std::uint64_t n_chunks = (n_samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<double> sums(n_chunks, 0.0);
  std::vector<double> sq_sums(n_chunks, 0.0);

  const auto run_chunk = [&](std::uint64_t chunk) {
    SeededRng rng(seed, chunk);
    const std::uint64_t begin = chunk * kChunkSamples;
    const std::uint64_t end = std::min<std::uint64_t>(begin + kChunkSamples, n_samples);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double v = sample(rng, i);
      s += v;
      s2 += v * v;
    }
    sums[chunk] = s;
    sq_sums[chunk] = s2;
  };

  const unsigned n_workers =
      std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::uint64_t>(n_chunks, 64)));
  if (n_workers <= 1) {
    for (std::uint64_t chunk = 0; chunk < n_chunks; ++chunk) run_chunk(chunk);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t chunk = next.fetch_add(1); chunk < n_chunks;
             chunk = next.fetch_add(1))
          run_chunk(chunk);
      });
    for (auto& t : pool) t.join();
  }

  const double total = pairwise_sum(sums);
  const double total_sq = pairwise_sum(sq_sums);
  const auto n = static_cast<double>(n_samples);
  const double mean = total / n;
  const double variance = std::max(0.0, (total_sq - n * mean * mean) / (n - 1.0));

  EstimationResult result;
  result.strategy_id = strategy_id;
  result.params = params;
  result.mean = mean;
  result.std_error = std::sqrt(variance / n);
  result.n_samples = n_samples;
  result.seed = seed;
  return result;
}

std::vector<SweepRow> sweep_delta_theta(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid must not be empty");
  const PureState psi0 = PureState::basis_state(2, 0);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const double dt : grid) {
    if (!(dt > 0.0 && dt < std::numbers::pi / 2.0 + 1e-12))
      throw std::invalid_argument("sweep delta_theta values must lie in (0, pi/2], got " +
                                  std::to_string(dt));
    const haar::SU2Phase u{0.0, 0.0, 0.0, 0.0};
    const haar::SU2Phase v{dt, 0.0, 0.0, 0.0};
    SweepRow row;
    row.delta_theta = dt;
    row.single_particle = strategies::single_particle_p_diff(u, v);
    row.singlet = strategies::singlet_p_diff(u, v);
    row.nonentangled = strategies::nonentangled_p_diff(u.to_matrix(), v.to_matrix(), psi0);
    row.singlet_over_single_ratio = row.singlet / row.single_particle;
    row.two_run_single_compound = two_run_compound(row.single_particle, row.single_particle);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ManifoldRow> failure_manifold_scan(const haar::SU2Phase& u,
                                               const std::vector<double>& deltas) {
  std::vector<ManifoldRow> rows;
  rows.reserve(deltas.size());
  for (const double delta : deltas) {
    const haar::SU2Phase v{u.theta, u.alpha + delta, u.beta + delta, u.phi - delta};
    rows.push_back({delta, strategies::single_particle_p_diff(u, v),
                    strategies::singlet_p_diff(u, v)});
  }
  return rows;
}

double two_run_compound(double p1, double p2) {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
    throw std::invalid_argument("two_run_compound expects probabilities in [0, 1]");
  return 1.0 - (1.0 - p1) * (1.0 - p2);
}

}  // namespace unicmp::experiments
