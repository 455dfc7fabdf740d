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

#include <gtest/gtest.h>

#include <numeric>

#include "seatlab/exact_engine.hpp"
#include "seatlab/forward_sim.hpp"
#include "seatlab/pd_limit.hpp"

namespace seatlab {
namespace {

// Mean of the largest stick-breaking piece: the Golomb-Dickman constant,
// integral of exp(li(x)) over [0,1], evaluated with mpmath.
constexpr double kGolombDickman = 0.62432998854355087;

// stick_breaking_largest(seed 0, 10^6 samples, epsilon 1e-9), frozen.
constexpr double kGoldenMeanLargestSeed0 = 0.62430330672995182;

TEST(DisplacementProfile, SingleChainToTerminal) {
  const Instance inst = Instance::consecutive(6, 1);
  const auto profiles = displacement_profile(inst, Outcome::identity(6));
  ASSERT_EQ(profiles.size(), 1u);
  EXPECT_EQ(profiles[0].components, (std::vector<double>{1.0}));
}

TEST(DisplacementProfile, FourSeatChainShape) {
  const auto profiles = displacement_profile(Instance::consecutive(4, 1), Outcome{{4, 2, 3, 1}});
  ASSERT_EQ(profiles.size(), 1u);
  EXPECT_EQ(profiles[0].components, (std::vector<double>{0.75, 0.25}));
  EXPECT_EQ(profiles[0].chain_id, 1);
}

TEST(DisplacementProfile, NeedsConsecutiveLostSet) {
  EXPECT_THROW(displacement_profile(Instance(4, {2}), Outcome::identity(4)), Error);
}

// Chain displacements account for all displacement in the plane, and the k
// chains together span exactly k*n relabeled positions.
TEST(DisplacementProfile, ConservationOverEnumeratedOutcomes) {
  for (int n = 2; n <= 7; ++n) {
    for (int k = 1; k <= 3 && k < n; ++k) {
      const Instance inst = Instance::consecutive(n, k);
      for (const auto& [o, p] : enumerate(inst).entries) {
        std::int64_t total = 0;
        for (int i = 1; i <= n; ++i) total += relabeled_seat(o.seat(i), n, k) - i;
        std::int64_t chains = 0;
        for (const auto& chain : chain_displacements(inst, o)) {
          chains += std::accumulate(chain.begin(), chain.end(), std::int64_t{0});
        }
        ASSERT_EQ(chains, total);
        ASSERT_EQ(total, static_cast<std::int64_t>(k) * n);
        for (const auto& prof : displacement_profile(inst, o)) {
          ASSERT_TRUE(std::is_sorted(prof.components.rbegin(), prof.components.rend()));
          ASSERT_GT(prof.components.back(), 0.0);
          const double sum = std::accumulate(prof.components.begin(), prof.components.end(), 0.0);
          ASSERT_LE(sum, 1.0 + static_cast<double>(k - 1) / n + 1e-12);
        }
      }
    }
  }
}

TEST(StickBreaking, FirstPieceUniform) {
  double sum = 0;
  const int samples = 100000;
  for (int t = 0; t < samples; ++t) {
    SplitMix64 a = trial_rng(8, static_cast<std::uint64_t>(t));
    SplitMix64 b = a;
    const auto s = stick_breaking_sample(a, 1e-9);
    const double first = b.uniform01();
    ASSERT_NE(std::find(s.components.begin(), s.components.end(), first), s.components.end());
    sum += first;
  }
  EXPECT_NEAR(sum / samples, 0.5, 0.005);
}

TEST(StickBreaking, MassAndOrdering) {
  for (double eps : {0.5, 1e-3, 1e-9}) {
    for (std::uint64_t t = 0; t < 2000; ++t) {
      SplitMix64 rng = trial_rng(9, t);
      const auto s = stick_breaking_sample(rng, eps);
      const double sum = std::accumulate(s.components.begin(), s.components.end(), 0.0);
      ASSERT_LE(s.components.size(), static_cast<std::size_t>(kMaxStickPieces));
      ASSERT_TRUE(std::is_sorted(s.components.rbegin(), s.components.rend()));
      if (s.components.size() < static_cast<std::size_t>(kMaxStickPieces)) {
        ASSERT_LT(s.truncation_mass, eps);
      }
      ASSERT_GE(sum, 1.0 - eps - 1e-12);
      ASSERT_LE(sum, 1.0 + 1e-12);
    }
  }
  SplitMix64 rng(1);
  EXPECT_THROW(stick_breaking_sample(rng, 0.0), Error);
  EXPECT_THROW(stick_breaking_sample(rng, 1.0), Error);
}

TEST(StickBreaking, MeanLargestMatchesGolombDickman) {
  const auto largest = stick_breaking_largest(0, 1'000'000);
  const double m = stats::mean(largest);
  EXPECT_NEAR(m, 0.6243, 0.002);
  EXPECT_NEAR(m, kGolombDickman, 0.002);
  EXPECT_NEAR(m, kGoldenMeanLargestSeed0, 1e-9);
}

TEST(ConvergenceReport, ShapeAndDeterminism) {
  const auto r = convergence_report({100, 1000}, 1, 2000, 0);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].n, 100);
  EXPECT_FALSE(r.rows[0].max_cross_corr.has_value());
  ConvergenceOptions opts;
  opts.workers = 3;
  const auto again = convergence_report({100, 1000}, 1, 2000, 0, opts);
  EXPECT_EQ(again.rows[1].ks_distance, r.rows[1].ks_distance);
  EXPECT_EQ(again.rows[1].mean_largest, r.rows[1].mean_largest);
}

TEST(ConvergenceReport, CrossChainCorrelationForSeveralChains) {
  const auto r = convergence_report({300}, 3, 20000, 5);
  ASSERT_TRUE(r.rows[0].max_cross_corr.has_value());
  EXPECT_LT(*r.rows[0].max_cross_corr, 0.05);
  EXPECT_THROW(convergence_report({20}, 3, 100, 0), Error);
}

}  // namespace
}  // namespace seatlab
