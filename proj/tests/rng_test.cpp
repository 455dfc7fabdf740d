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

#include <vector>

#include "seatlab/rng.hpp"

namespace seatlab {
namespace {

// Reference values from an independent Python implementation of SplitMix64.
TEST(Mix64, MatchesReferenceValues) {
  EXPECT_EQ(mix64(0, 0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mix64(42, 0), 0xbdd732262feb6e95ULL);
  EXPECT_EQ(mix64(42, 7), 0xccf635ee9e9e2fa4ULL);
}

TEST(SplitMix64, StreamMatchesReference) {
  SplitMix64 g(1234567);
  EXPECT_EQ(g.next(), 0x599ed017fb08fc85ULL);
  EXPECT_EQ(g.next(), 0x2c73f08458540fa5ULL);
  EXPECT_EQ(g.next(), 0x883ebce5a3f27c77ULL);
}

TEST(SplitMix64, StreamIsCounterBased) {
  // Output j from state s equals mix64(s, j).
  SplitMix64 g(99);
  for (std::uint64_t j = 0; j < 5; ++j) EXPECT_EQ(g.next(), mix64(99, j));
}

TEST(SplitMix64, BoundedSamplingMatchesReference) {
  SplitMix64 g(0);
  std::vector<std::uint64_t> got;
  for (int i = 0; i < 5; ++i) got.push_back(g.uniform_below(10));
  EXPECT_EQ(got, (std::vector<std::uint64_t>{8, 4, 0, 9, 1}));
}

TEST(SplitMix64, BoundedSamplingStaysInRange) {
  SplitMix64 g(5);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = g.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++hist[v];
  }
  for (int c : hist) EXPECT_NEAR(c, 10000, 500);
  EXPECT_EQ(g.uniform_below(1), 0u);
}

TEST(SplitMix64, Uniform01InUnitInterval) {
  SplitMix64 g(3);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

}  // namespace
}  // namespace seatlab
