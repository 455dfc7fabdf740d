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

#include <cstdint>
#include <limits>

namespace seatlab {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for stream `index` under `seed`: the (index+1)-th SplitMix64 output of
/// a generator started at `seed`. All arithmetic is mod 2^64.
constexpr std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) {
  return splitmix_finalize(seed + kGoldenGamma * (index + 1));
}

/// Counter-based SplitMix64 generator. Output j (0-based) of a generator built
/// from state s is splitmix_finalize(s + (j+1) * kGoldenGamma), so a trial's
/// stream is a pure function of its seed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state = 0) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return next(); }

  constexpr std::uint64_t next() {
    state_ += kGoldenGamma;
    return splitmix_finalize(state_);
  }

  /// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
  /// Requires bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) {
    std::uint64_t x = next();
    auto m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Generator for trial `t` of a batch seeded with `master_seed`.
inline SplitMix64 trial_rng(std::uint64_t master_seed, std::uint64_t t) {
  return SplitMix64(mix64(master_seed, t));
}

}  // namespace seatlab
