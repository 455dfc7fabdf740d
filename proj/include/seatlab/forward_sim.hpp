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
#include <array>
#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "seatlab/core_model.hpp"
#include "seatlab/displacement.hpp"
#include "seatlab/empty_seats.hpp"
#include "seatlab/rng.hpp"

namespace seatlab {

/// Forward boarding sampler. Reuses its scratch buffers between calls, so one
/// instance per thread.
class ForwardSampler {
 public:
  explicit ForwardSampler(const Instance& instance) : instance_(instance) {}

  /// Passengers board in label order. A lost passenger picks uniformly among
  /// all empty seats; anyone else takes their own seat if free and otherwise
  /// picks uniformly. Each pick consumes one uniform_below(#empty) draw and
  /// takes the seat at that index of the swap-remove empty list.
  void sample(SplitMix64& rng, Outcome& out, Trace* trace = nullptr) {
    const int n = instance_.n();
    empty_.reset(n);
    out.seat_of.resize(static_cast<std::size_t>(n));
    if (trace) trace->choices.clear();
    for (int p = 1; p <= n; ++p) {
      int seat = p;
      if (instance_.is_lost(p) || !empty_.contains(p)) {
        const auto options = empty_.size();
        seat = empty_.at(static_cast<std::size_t>(rng.uniform_below(options)));
        if (trace) trace->choices.push_back({p, seat, static_cast<int>(options)});
      }
      empty_.remove(seat);
      out.seat_of[static_cast<std::size_t>(p - 1)] = seat;
    }
  }

  const Instance& instance() const { return instance_; }

 private:
  Instance instance_;
  EmptySeats empty_;
};

inline std::pair<Outcome, Trace> sample_outcome(const Instance& instance, SplitMix64& rng) {
  ForwardSampler sampler(instance);
  std::pair<Outcome, Trace> result;
  sampler.sample(rng, result.first, &result.second);
  return result;
}

using Table2x2 = std::array<std::array<std::uint64_t, 2>, 2>;

struct BatchOptions {
  unsigned workers = 1;
  bool collect_profiles = false;  // needs a consecutive lost set
  /// For each (a, b), tally [D_a][D_b] in a 2x2 table (index 1 = occurred).
  std::vector<std::pair<int, int>> pair_tables;
};

struct BatchResult {
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> event_counts;  // index m-1; zero for lost passengers
  std::uint64_t last_correct_count = 0;
  std::vector<std::vector<DisplacementProfile>> displacement_samples;  // per trial
  std::vector<Table2x2> pair_counts;

  std::uint64_t event_count(int m) const { return event_counts[static_cast<std::size_t>(m - 1)]; }

  friend bool operator==(const BatchResult& a, const BatchResult& b) {
    if (a.trials != b.trials || a.master_seed != b.master_seed || a.event_counts != b.event_counts ||
        a.last_correct_count != b.last_correct_count || a.pair_counts != b.pair_counts ||
        a.displacement_samples.size() != b.displacement_samples.size()) {
      return false;
    }
    for (std::size_t t = 0; t < a.displacement_samples.size(); ++t) {
      const auto& x = a.displacement_samples[t];
      const auto& y = b.displacement_samples[t];
      if (x.size() != y.size()) return false;
      for (std::size_t c = 0; c < x.size(); ++c) {
        if (x[c].chain_id != y[c].chain_id || x[c].components != y[c].components) return false;
      }
    }
    return true;
  }
};

/// Trial t draws from trial_rng(master_seed, t). Workers take contiguous
/// trial ranges and their counts are summed, so the result does not depend on
/// the worker count.
inline BatchResult run_batch(const Instance& instance, std::uint64_t trials, std::uint64_t master_seed,
                             const BatchOptions& options = {}) {
  if (trials < 1) throw Error(Errc::DomainError, "trials must be >= 1");
  if (options.collect_profiles && !instance.consecutive_k()) {
    throw Error(Errc::NotConsecutive, "displacement profiles need lost = {1..k}");
  }
  for (auto [a, b] : options.pair_tables) {
    if (a < 1 || a > instance.n() || b < 1 || b > instance.n() || instance.is_lost(a) || instance.is_lost(b)) {
      throw Error(Errc::DomainError, "pair table passengers must be non-lost labels in 1..n");
    }
  }
  const int n = instance.n();
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.workers == 0 ? 1 : options.workers, 1, trials));

  BatchResult result;
  result.trials = trials;
  result.master_seed = master_seed;
  if (options.collect_profiles) result.displacement_samples.resize(trials);

  struct Partial {
    std::vector<std::uint64_t> events;
    std::uint64_t last_correct = 0;
    std::vector<Table2x2> pairs;
  };
  std::vector<Partial> partials(workers);

  auto work = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    Partial& part = partials[w];
    part.events.assign(static_cast<std::size_t>(n), 0);
    part.pairs.assign(options.pair_tables.size(), Table2x2{});
    ForwardSampler sampler(instance);
    Outcome out;
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng = trial_rng(master_seed, t);
      sampler.sample(rng, out);
      for (int m = 1; m <= n; ++m) {
        if (!instance.is_lost(m) && out.seat_of[static_cast<std::size_t>(m - 1)] != m) {
          ++part.events[static_cast<std::size_t>(m - 1)];
        }
      }
      if (out.seat_of.back() == n) ++part.last_correct;
      for (std::size_t i = 0; i < options.pair_tables.size(); ++i) {
        const auto [a, b] = options.pair_tables[i];
        ++part.pairs[i][out.seat(a) != a][out.seat(b) != b];
      }
      if (options.collect_profiles) result.displacement_samples[t] = displacement_profile(instance, out);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  result.event_counts.assign(static_cast<std::size_t>(n), 0);
  result.pair_counts.assign(options.pair_tables.size(), Table2x2{});
  for (const auto& part : partials) {
    for (std::size_t i = 0; i < part.events.size(); ++i) result.event_counts[i] += part.events[i];
    result.last_correct_count += part.last_correct;
    for (std::size_t i = 0; i < part.pairs.size(); ++i) {
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) result.pair_counts[i][x][y] += part.pairs[i][x][y];
      }
    }
  }
  return result;
}

}  // namespace seatlab
