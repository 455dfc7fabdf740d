// Copyright 2026 The seatlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "seatlab/displacement.hpp"
#include "seatlab/forward_sim.hpp"
#include "seatlab/rng.hpp"
#include "seatlab/stats.hpp"

// Scaling limit of the displacement profile. Uniform stick-breaking is the
// reference sampler for the limiting law.

namespace seatlab {

struct StickBreakingSample {
  std::vector<double> components;  // decreasing
  double truncation_mass = 0.0;    // mass left on the stick

  double largest() const { return components.empty() ? 0.0 : components.front(); }
};

inline constexpr int kMaxStickPieces = 64;

/// Breaks off V_i times the remaining stick, V_i uniform on [0,1), until the
/// remainder drops below epsilon or 64 pieces exist.
inline StickBreakingSample stick_breaking_sample(SplitMix64& rng, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(Errc::DomainError, "epsilon must lie in (0, 1)");
  StickBreakingSample out;
  double remaining = 1.0;
  for (int i = 0; i < kMaxStickPieces && remaining >= epsilon; ++i) {
    const double v = rng.uniform01();
    out.components.push_back(v * remaining);
    remaining *= 1.0 - v;
  }
  std::sort(out.components.begin(), out.components.end(), std::greater<>());
  out.truncation_mass = remaining;
  return out;
}

/// Largest piece of `count` stick-breaking samples; sample t uses
/// trial_rng(oracle_seed, t).
inline std::vector<double> stick_breaking_largest(std::uint64_t oracle_seed, std::uint64_t count,
                                                  double epsilon = 1e-9) {
  std::vector<double> out;
  out.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) {
    SplitMix64 rng = trial_rng(oracle_seed, t);
    out.push_back(stick_breaking_sample(rng, epsilon).largest());
  }
  return out;
}

/// Seed of the oracle stream paired with a forward-simulation seed.
constexpr std::uint64_t oracle_seed_for(std::uint64_t seed) { return ~seed; }

struct ConvergenceRow {
  int n = 0;
  int k = 0;
  std::uint64_t trials = 0;
  double ks_distance = 0.0;
  double ks_threshold = 0.0;  // at significance 0.01
  bool ks_pass = false;
  double mean_largest = 0.0;
  double var_largest = 0.0;
  std::optional<double> max_cross_corr;  // k >= 2 only
};

struct ConvergenceReport {
  std::uint64_t seed = 0;
  double oracle_mean_largest = 0.0;
  double oracle_var_largest = 0.0;
  std::vector<ConvergenceRow> rows;
};

struct ConvergenceOptions {
  unsigned workers = 1;
  double epsilon = 1e-9;
};

/// For each n: simulate `trials` boardings with lost = {1..k}, take the
/// largest normalized displacement of every chain, and compare the pooled
/// values against `trials` stick-breaking largest pieces.
inline ConvergenceReport convergence_report(const std::vector<int>& n_values, int k, std::uint64_t trials,
                                            std::uint64_t seed, const ConvergenceOptions& options = {}) {
  if (k < 1) throw Error(Errc::DomainError, "k must be >= 1");
  if (trials < 2) throw Error(Errc::DomainError, "trials must be >= 2");
  for (int n : n_values) {
    if (n < 10 * k) throw Error(Errc::DomainError, "each n must be at least 10k");
  }

  ConvergenceReport report;
  report.seed = seed;
  const auto oracle = stick_breaking_largest(oracle_seed_for(seed), trials, options.epsilon);
  report.oracle_mean_largest = stats::mean(oracle);
  report.oracle_var_largest = stats::variance(oracle);

  for (int n : n_values) {
    BatchOptions batch;
    batch.workers = options.workers;
    batch.collect_profiles = true;
    const auto result = run_batch(Instance::consecutive(n, k), trials, seed, batch);

    std::vector<std::vector<double>> per_chain(static_cast<std::size_t>(k));
    for (auto& v : per_chain) v.reserve(trials);
    for (const auto& profiles : result.displacement_samples) {
      for (const auto& prof : profiles) per_chain[static_cast<std::size_t>(prof.chain_id - 1)].push_back(prof.largest());
    }
    std::vector<double> pooled;
    pooled.reserve(trials * static_cast<std::uint64_t>(k));
    for (const auto& v : per_chain) pooled.insert(pooled.end(), v.begin(), v.end());

    ConvergenceRow row;
    row.n = n;
    row.k = k;
    row.trials = trials;
    const auto ks = stats::ks_two_sample(pooled, oracle, stats::Significance::p01);
    row.ks_distance = ks.statistic;
    row.ks_threshold = ks.threshold;
    row.ks_pass = ks.pass;
    row.mean_largest = stats::mean(pooled);
    row.var_largest = stats::variance(pooled);
    if (k >= 2) {
      double worst = 0.0;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          worst = std::max(worst, std::abs(stats::correlation(per_chain[static_cast<std::size_t>(i)],
                                                              per_chain[static_cast<std::size_t>(j)])));
        }
      }
      row.max_cross_corr = worst;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace seatlab
