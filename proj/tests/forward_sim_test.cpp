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

#include <map>

#include "oracle.hpp"
#include "seatlab/exact_engine.hpp"
#include "seatlab/forward_sim.hpp"
#include "seatlab/stats.hpp"

namespace seatlab {
namespace {

TEST(SampleOutcome, SingleSeat) {
  SplitMix64 rng(1);
  auto [o, t] = sample_outcome(Instance(1, {1}), rng);
  EXPECT_EQ(o, Outcome::identity(1));
  ASSERT_EQ(t.choices.size(), 1u);
  EXPECT_EQ(t.choices[0], (Choice{1, 1, 1}));
}

TEST(SampleOutcome, TwoSeatsIdentityOrSwap) {
  const Instance inst(2, {1});
  std::uint64_t swaps = 0;
  const std::uint64_t trials = 100000;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_rng(11, t);
    auto [o, tr] = sample_outcome(inst, rng);
    ASSERT_TRUE(o == Outcome::identity(2) || o == (Outcome{{2, 1}}));
    swaps += o.seat(1) == 2;
  }
  EXPECT_TRUE(stats::wilson_interval(swaps, trials, stats::kZ999).contains(0.5));
}

TEST(SampleOutcome, SecondPassengerLost) {
  // Passenger 1 always seats at 1; passenger 2 picks 2 or 3; D_3 about 1/2.
  const Instance inst(3, {2});
  std::uint64_t d3 = 0;
  const std::uint64_t trials = 100000;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_rng(3, t);
    auto [o, tr] = sample_outcome(inst, rng);
    ASSERT_EQ(o.seat(1), 1);
    ASSERT_NE(o.seat(2), 1);
    d3 += o.seat(3) != 3;
  }
  EXPECT_TRUE(stats::wilson_interval(d3, trials, stats::kZ999).contains(0.5));
}

TEST(SampleOutcome, TracesReplayAndKeepInvariants) {
  for (int n : {1, 2, 5, 9, 40}) {
    for (int k = 0; k <= std::min(n, 4); ++k) {
      const Instance inst = Instance::consecutive(n, k);
      for (std::uint64_t t = 0; t < 200; ++t) {
        SplitMix64 rng = trial_rng(static_cast<std::uint64_t>(n * 10 + k), t);
        auto [o, tr] = sample_outcome(inst, rng);
        ASSERT_TRUE(o.is_bijection());
        ASSERT_TRUE(satisfies_monotonicity(o, k));
        ASSERT_EQ(replay(inst, tr), o);
      }
    }
  }
  const Instance odd(12, {2, 7, 8});
  for (std::uint64_t t = 0; t < 200; ++t) {
    SplitMix64 rng = trial_rng(77, t);
    auto [o, tr] = sample_outcome(odd, rng);
    ASSERT_EQ(replay(odd, tr), o);
  }
}

TEST(RunBatch, EmptyLostSetNeverDisplaces) {
  const auto r = run_batch(Instance(5, {}), 100, 9);
  for (auto c : r.event_counts) EXPECT_EQ(c, 0u);
  EXPECT_EQ(r.last_correct_count, 100u);
}

TEST(RunBatch, IndependentOfWorkerCount) {
  const Instance inst = Instance::consecutive(30, 2);
  BatchOptions opts;
  opts.collect_profiles = true;
  opts.pair_tables = {{3, 30}, {10, 20}};
  const auto base = run_batch(inst, 5000, 1234, opts);
  for (unsigned w : {2u, 3u, 7u, 16u}) {
    opts.workers = w;
    EXPECT_EQ(run_batch(inst, 5000, 1234, opts), base) << "workers=" << w;
  }
}

TEST(RunBatch, LastPassengerHalf) {
  const auto r = run_batch(Instance(2, {1}), 1'000'000, 42);
  const double f = static_cast<double>(r.last_correct_count) / 1e6;
  EXPECT_NEAR(f, 0.5, 0.0015);
}

TEST(RunBatch, LastPassengerQuarterWithThreeLost) {
  const auto r = run_batch(Instance::consecutive(100, 3), 1'000'000, 42);
  const double f = static_cast<double>(r.last_correct_count) / 1e6;
  EXPECT_NEAR(f, 0.25, 0.0013);
}

TEST(RunBatch, RejectsBadInput) {
  EXPECT_THROW(run_batch(Instance(4, {1}), 0, 1), Error);
  BatchOptions opts;
  opts.collect_profiles = true;
  EXPECT_THROW(run_batch(Instance(4, {2}), 10, 1, opts), Error);
}

// Empirical outcome frequencies against the exact distribution: chi-square
// goodness of fit at significance 0.001.
TEST(RunBatch, MatchesExactDistribution) {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k <= 2 && k < n; ++k) {
      const Instance inst = Instance::consecutive(n, k);
      const auto exact = enumerate(inst);
      std::map<Outcome, std::uint64_t> counts;
      const std::uint64_t trials = 100000;
      ForwardSampler sampler(inst);
      Outcome o;
      for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(500 + static_cast<std::uint64_t>(n * 3 + k), t);
        sampler.sample(rng, o);
        ++counts[o];
      }
      double stat = 0;
      for (const auto& [outcome, p] : exact.entries) {
        const double expected = p.to_double() * static_cast<double>(trials);
        const double diff = static_cast<double>(counts[outcome]) - expected;
        stat += diff * diff / expected;
      }
      EXPECT_EQ(counts.size(), exact.entries.size());
      const double df = static_cast<double>(exact.entries.size() - 1);
      EXPECT_LE(stat, oracle::chi2_critical(df, 0.001)) << "n=" << n << " k=" << k;
    }
  }
}

}  // namespace
}  // namespace seatlab
