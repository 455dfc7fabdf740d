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
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "seatlab/core_model.hpp"
#include "seatlab/rational.hpp"

// Exact distribution of the boarding process. Full outcome distributions come
// from depth-first expansion of the decision tree; event probabilities come
// from a layered DP over (next passenger, occupied-seat bitmask), which is a
// Markov state for the process.

namespace seatlab {

inline constexpr std::uint64_t kDefaultLeafBound = 10'000'000;
inline constexpr int kMaxExactSeats = 64;

struct ExactLimits {
  /// Bound on decision-tree leaves (enumerate), DP states per layer
  /// (event_prob / joint_prob) and subsets (verify_independence).
  std::uint64_t max_leaves = kDefaultLeafBound;
};

struct ExactDistribution {
  /// Sorted by seat_of lexicographically; outcomes are distinct.
  std::vector<std::pair<Outcome, ExactProb>> entries;

  ExactProb total() const {
    ExactProb sum;
    for (const auto& [o, p] : entries) sum += p;
    return sum;
  }

  /// Probability of `outcome`, zero if absent.
  ExactProb prob(const Outcome& outcome) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), outcome,
                               [](const auto& e, const Outcome& o) { return e.first < o; });
    if (it != entries.end() && it->first == outcome) return it->second;
    return ExactProb{};
  }

  friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;
};

namespace detail {

inline std::uint64_t seat_bit(int seat) { return std::uint64_t{1} << (seat - 1); }

inline void require_mask_width(const Instance& instance) {
  if (instance.n() > kMaxExactSeats) {
    throw TooLarge(kMaxExactSeats, static_cast<std::uint64_t>(instance.n()),
                   "exact engine supports at most 64 seats");
  }
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? UINT64_MAX : r;
}

}  // namespace detail

/// Number of root-to-leaf paths (traces) in the decision tree, saturating at
/// 2^64-1. Throws TooLarge if a DP layer alone exceeds the bound, since every
/// state in a layer has at least one leaf below it.
inline std::uint64_t leaf_count(const Instance& instance, const ExactLimits& limits = {}) {
  detail::require_mask_width(instance);
  const int n = instance.n();
  std::unordered_map<std::uint64_t, std::uint64_t> layer{{0, 1}}, next;
  for (int p = 1; p <= n; ++p) {
    next.clear();
    for (const auto& [mask, paths] : layer) {
      if (instance.is_lost(p) || (mask & detail::seat_bit(p))) {
        for (int s = 1; s <= n; ++s) {
          if (!(mask & detail::seat_bit(s))) {
            auto& slot = next[mask | detail::seat_bit(s)];
            slot = detail::saturating_add(slot, paths);
          }
        }
      } else {
        auto& slot = next[mask | detail::seat_bit(p)];
        slot = detail::saturating_add(slot, paths);
      }
    }
    if (next.size() > limits.max_leaves) {
      throw TooLarge(limits.max_leaves, next.size(), "decision tree too wide to enumerate");
    }
    layer.swap(next);
  }
  std::uint64_t total = 0;
  for (const auto& [mask, paths] : layer) total = detail::saturating_add(total, paths);
  return total;
}

/// Full outcome distribution. Identical outcomes reached by different traces
/// are merged by summing their probabilities.
inline ExactDistribution enumerate(const Instance& instance, const ExactLimits& limits = {}) {
  const std::uint64_t leaves = leaf_count(instance, limits);
  if (leaves > limits.max_leaves) {
    throw TooLarge(limits.max_leaves, leaves, "too many decision-tree leaves to enumerate");
  }
  const int n = instance.n();
  std::map<std::vector<int>, BigRational> merged;
  std::vector<int> seat_of(static_cast<std::size_t>(n), 0);

  // Product of option counts along a path is at most n! for the paths we can
  // afford to enumerate; an overflow is reported rather than truncated.
  auto dfs = [&](auto&& self, int p, std::uint64_t mask, std::uint64_t denom) -> void {
    if (p > n) {
      merged[seat_of] += BigRational(BigInt(1), BigInt(denom));
      return;
    }
    if (instance.is_lost(p) || (mask & detail::seat_bit(p))) {
      const std::uint64_t options = static_cast<std::uint64_t>(n - p + 1);
      std::uint64_t d;
      if (__builtin_mul_overflow(denom, options, &d)) {
        throw TooLarge(UINT64_MAX, UINT64_MAX, "trace probability denominator overflow");
      }
      for (int s = 1; s <= n; ++s) {
        if (mask & detail::seat_bit(s)) continue;
        seat_of[static_cast<std::size_t>(p - 1)] = s;
        self(self, p + 1, mask | detail::seat_bit(s), d);
      }
    } else {
      seat_of[static_cast<std::size_t>(p - 1)] = p;
      self(self, p + 1, mask | detail::seat_bit(p), denom);
    }
  };
  dfs(dfs, 1, 0, 1);

  ExactDistribution dist;
  dist.entries.reserve(merged.size());
  for (auto& [seats, prob] : merged) dist.entries.emplace_back(Outcome{seats}, ExactProb(std::move(prob)));
  return dist;
}

/// Pr(D_m for every m in `events`). Events must be non-lost passengers.
inline ExactProb joint_prob(const Instance& instance, std::vector<int> events, const ExactLimits& limits = {}) {
  detail::require_mask_width(instance);
  const int n = instance.n();
  if (events.empty()) throw Error(Errc::DomainError, "event set must be nonempty");
  std::vector<char> wanted(static_cast<std::size_t>(n) + 1, 0);
  for (int m : events) {
    if (m < 1 || m > n) throw Error(Errc::DomainError, "passenger " + std::to_string(m) + " not in 1..n");
    if (instance.is_lost(m)) {
      throw Error(Errc::DomainError, "D_m is undefined for lost passenger " + std::to_string(m));
    }
    wanted[static_cast<std::size_t>(m)] = 1;
  }
  const int last_event = *std::max_element(events.begin(), events.end());

  // mass[mask] = Pr(state reached and every wanted event so far occurred)
  std::unordered_map<std::uint64_t, BigRational> layer{{0, BigRational(1)}}, next;
  for (int p = 1; p <= last_event; ++p) {
    next.clear();
    const BigInt options = n - p + 1;
    for (const auto& [mask, mass] : layer) {
      const bool own_taken = (mask & detail::seat_bit(p)) != 0;
      if (instance.is_lost(p) || own_taken) {
        const BigRational share = mass / options;
        for (int s = 1; s <= n; ++s) {
          if (!(mask & detail::seat_bit(s))) next[mask | detail::seat_bit(s)] += share;
        }
      } else if (!wanted[static_cast<std::size_t>(p)]) {
        next[mask | detail::seat_bit(p)] += mass;
      }
    }
    if (next.size() > limits.max_leaves) {
      throw TooLarge(limits.max_leaves, next.size(), "too many DP states");
    }
    layer.swap(next);
  }
  BigRational total = 0;
  for (const auto& [mask, mass] : layer) total += mass;
  return ExactProb(std::move(total));
}

/// Pr(D_m).
inline ExactProb event_prob(const Instance& instance, int m, const ExactLimits& limits = {}) {
  return joint_prob(instance, {m}, limits);
}

/// k/(n-m+k+1): Pr(D_m) with lost = {1..k}. Requires 1 <= k < m <= n.
inline ExactProb closed_form(int n, int k, int m) {
  if (!(1 <= k && k < m && m <= n)) {
    throw Error(Errc::DomainError, "closed form needs 1 <= k < m <= n");
  }
  return ExactProb(k, n - m + k + 1);
}

struct IndependenceViolation {
  std::vector<int> subset;
  ExactProb joint;
  ExactProb product;
};

struct IndependenceReport {
  std::uint64_t subsets_checked = 0;
  std::vector<IndependenceViolation> violations;
};

/// Compares Pr(∩ D_m) against ∏ Pr(D_m) for every nonempty subset of the
/// non-lost passengers. Violations are reported, not thrown.
inline IndependenceReport verify_independence(const Instance& instance, const ExactLimits& limits = {}) {
  detail::require_mask_width(instance);
  const auto passengers = instance.non_lost();
  const auto count = passengers.size();
  if (count >= 63 || (std::uint64_t{1} << count) - 1 > limits.max_leaves) {
    const std::uint64_t est = count >= 63 ? UINT64_MAX : (std::uint64_t{1} << count) - 1;
    throw TooLarge(limits.max_leaves, est, "too many event subsets");
  }
  std::vector<ExactProb> single;
  single.reserve(count);
  for (int m : passengers) single.push_back(event_prob(instance, m, limits));

  IndependenceReport report;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << count); ++bits) {
    std::vector<int> subset;
    ExactProb product(1);
    for (std::size_t i = 0; i < count; ++i) {
      if (bits & (std::uint64_t{1} << i)) {
        subset.push_back(passengers[i]);
        product *= single[i];
      }
    }
    ++report.subsets_checked;
    // Singletons hold trivially; skip the DP.
    if (subset.size() == 1) continue;
    ExactProb joint = joint_prob(instance, subset, limits);
    if (joint != product) report.violations.push_back({std::move(subset), std::move(joint), std::move(product)});
  }
  return report;
}

}  // namespace seatlab
