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
#include <numeric>
#include <string>
#include <vector>

#include "seatlab/core_model.hpp"
#include "seatlab/exact_engine.hpp"
#include "seatlab/rational.hpp"
#include "seatlab/rng.hpp"

// Backward construction: colour the relabeled seats {k+1, ..., n+k} first,
// then seat passengers deterministically along same-shade chains. Seats
// n+1..n+k stand for original seats 1..k.

namespace seatlab {

/// Colouring of the seat set {k+1, ..., n+k}. Shade 0 is black; shades 1..k
/// are the k shades of red.
class ColoredSeats {
 public:
  ColoredSeats(int n, int k) : n_(n), k_(k), shade_(static_cast<std::size_t>(n), 0) {
    if (k < 1 || n < k) throw Error(Errc::DomainError, "colouring needs 1 <= k <= n");
  }
  ColoredSeats(int n, int k, std::vector<int> shades) : n_(n), k_(k), shade_(std::move(shades)) {
    if (k < 1 || n < k) throw Error(Errc::DomainError, "colouring needs 1 <= k <= n");
    if (shade_.size() != static_cast<std::size_t>(n)) {
      throw Error(Errc::MalformedColoring, "expected " + std::to_string(n) + " seat colours");
    }
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int first_seat() const { return k_ + 1; }
  int last_seat() const { return n_ + k_; }

  int shade(int seat) const { return shade_[index(seat)]; }
  bool is_red(int seat) const { return shade(seat) != 0; }
  void set_shade(int seat, int s) { shade_[index(seat)] = s; }

  /// Shades of seats k+1..n+k in seat order.
  const std::vector<int>& shades() const { return shade_; }

  /// Throws MalformedColoring unless every shade is in 0..k and seats
  /// n+1..n+k carry each shade 1..k exactly once.
  void check() const {
    for (int seat = first_seat(); seat <= last_seat(); ++seat) {
      const int s = shade(seat);
      if (s < 0 || s > k_) {
        throw Error(Errc::MalformedColoring, "seat " + std::to_string(seat) + " has shade " + std::to_string(s));
      }
    }
    std::vector<char> seen(static_cast<std::size_t>(k_) + 1, 0);
    for (int seat = n_ + 1; seat <= last_seat(); ++seat) {
      const int s = shade(seat);
      if (s == 0 || seen[static_cast<std::size_t>(s)]) {
        throw Error(Errc::MalformedColoring, "terminal seats must carry each shade exactly once");
      }
      seen[static_cast<std::size_t>(s)] = 1;
    }
  }

  friend bool operator==(const ColoredSeats&, const ColoredSeats&) = default;

 private:
  std::size_t index(int seat) const {
    if (seat < first_seat() || seat > last_seat()) {
      throw Error(Errc::DomainError, "seat " + std::to_string(seat) + " outside the relabeled seat set");
    }
    return static_cast<std::size_t>(seat - first_seat());
  }

  int n_;
  int k_;
  std::vector<int> shade_;
};

/// Seat m in k+1..n is red with probability k/(n-m+k+1), decided by
/// uniform_below(n-m+k+1) < k; a red seat then draws its shade with
/// uniform_below(k) + 1 (no draw when k = 1). Terminal shades come from a
/// Fisher-Yates shuffle of 1..k run from the top index down.
inline ColoredSeats sample_coloring(int n, int k, SplitMix64& rng) {
  if (k < 1 || n < k + 1) throw Error(Errc::DomainError, "sample_coloring needs k >= 1 and n >= k+1");
  ColoredSeats c(n, k);
  for (int m = k + 1; m <= n; ++m) {
    const auto span = static_cast<std::uint64_t>(n - m + k + 1);
    if (rng.uniform_below(span) < static_cast<std::uint64_t>(k)) {
      c.set_shade(m, k == 1 ? 1 : static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k))) + 1);
    }
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 1);
  for (std::size_t i = perm.size(); i-- > 1;) {
    std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
  }
  for (int j = 1; j <= k; ++j) c.set_shade(n + j, perm[static_cast<std::size_t>(j - 1)]);
  return c;
}

/// k = 1 colouring from record values: draws U_1..U_n and colours seat m red
/// iff s = n-m+2 is a record (U_s above every earlier U_r).
inline ColoredSeats sample_coloring_via_records(int n, SplitMix64& rng) {
  if (n < 2) throw Error(Errc::DomainError, "record colouring needs n >= 2");
  ColoredSeats c(n, 1);
  double best = -1.0;
  for (int s = 1; s <= n; ++s) {
    const double u = rng.uniform01();
    if (u > best) {
      best = u;
      c.set_shade(n - s + 2, 1);
    }
  }
  return c;
}

/// Seats of each shade, ascending. The last one of each list is the
/// terminal seat (> n).
inline std::vector<std::vector<int>> shade_chains(const ColoredSeats& c) {
  std::vector<std::vector<int>> chains(static_cast<std::size_t>(c.k()));
  for (int seat = c.first_seat(); seat <= c.last_seat(); ++seat) {
    if (c.is_red(seat)) chains[static_cast<std::size_t>(c.shade(seat) - 1)].push_back(seat);
  }
  return chains;
}

/// Passenger i sits in the first seat of shade i, the owner of that seat in
/// the next seat of shade i, and so on up to the terminal seat n+j, which is
/// original seat j. Black seats keep their passengers.
inline Outcome seat_from_coloring(const ColoredSeats& c) {
  c.check();
  const int n = c.n();
  Outcome out = Outcome::identity(n);
  const auto chains = shade_chains(c);
  for (int i = 1; i <= c.k(); ++i) {
    int passenger = i;
    for (int seat : chains[static_cast<std::size_t>(i - 1)]) {
      out.seat_of[static_cast<std::size_t>(passenger - 1)] = seat > n ? seat - n : seat;
      passenger = seat;
    }
  }
  return out;
}

/// Gaps between consecutive shade-i seats, starting from position i.
/// These are the chain displacements the forward process would produce.
inline std::vector<std::vector<std::int64_t>> shade_gaps(const ColoredSeats& c) {
  std::vector<std::vector<std::int64_t>> gaps;
  const auto chains = shade_chains(c);
  for (int i = 1; i <= c.k(); ++i) {
    std::vector<std::int64_t> g;
    int prev = i;
    for (int seat : chains[static_cast<std::size_t>(i - 1)]) {
      g.push_back(seat - prev);
      prev = seat;
    }
    gaps.push_back(std::move(g));
  }
  return gaps;
}

/// Exact distribution over colourings, keyed by ColoredSeats::shades().
using ColoringDistribution = std::map<std::vector<int>, ExactProb>;

namespace detail {

inline std::uint64_t factorial_saturating(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) {
    if (__builtin_mul_overflow(f, static_cast<std::uint64_t>(i), &f)) return UINT64_MAX;
  }
  return f;
}

/// Calls visit(shades, weight) for every colouring with its exact weight.
template <typename Visit>
void for_each_coloring(int n, int k, const ExactLimits& limits, Visit&& visit) {
  if (k < 1 || n < k + 1) throw Error(Errc::DomainError, "colouring enumeration needs k >= 1 and n >= k+1");
  std::uint64_t count = factorial_saturating(k);
  for (int m = k + 1; m <= n && count != UINT64_MAX; ++m) {
    if (__builtin_mul_overflow(count, static_cast<std::uint64_t>(k + 1), &count)) count = UINT64_MAX;
  }
  if (count > limits.max_leaves) throw TooLarge(limits.max_leaves, count, "too many colourings to enumerate");

  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> terminals;
  do {
    terminals.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const ExactProb perm_weight(1, static_cast<std::int64_t>(terminals.size()));

  std::vector<int> shades(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int m, const ExactProb& weight) -> void {
    if (m > n) {
      for (const auto& t : terminals) {
        std::copy(t.begin(), t.end(), shades.begin() + (n - k));
        visit(shades, weight * perm_weight);
      }
      return;
    }
    const int span = n - m + k + 1;
    auto& slot = shades[static_cast<std::size_t>(m - k - 1)];
    slot = 0;
    self(self, m + 1, weight * ExactProb(span - k, span));
    for (int s = 1; s <= k; ++s) {
      slot = s;
      self(self, m + 1, weight * ExactProb(1, span));
    }
    slot = 0;
  };
  rec(rec, k + 1, ExactProb(1));
}

}  // namespace detail

/// Exact distribution of sample_coloring(n, k).
inline ColoringDistribution coloring_distribution(int n, int k, const ExactLimits& limits = {}) {
  ColoringDistribution dist;
  detail::for_each_coloring(n, k, limits, [&](const std::vector<int>& shades, const ExactProb& w) {
    dist[shades] += w;
  });
  return dist;
}

/// Pushes every colouring through seat_from_coloring and merges by outcome.
inline ExactDistribution backward_distribution(int n, int k, const ExactLimits& limits = {}) {
  std::map<Outcome, ExactProb> merged;
  detail::for_each_coloring(n, k, limits, [&](const std::vector<int>& shades, const ExactProb& w) {
    merged[seat_from_coloring(ColoredSeats(n, k, shades))] += w;
  });
  ExactDistribution dist;
  dist.entries.assign(merged.begin(), merged.end());
  return dist;
}

/// Exact distribution of the record-based colouring, from all n! relative
/// orders of U_1..U_n with equal weight.
inline ColoringDistribution record_coloring_distribution(int n, const ExactLimits& limits = {}) {
  if (n < 2) throw Error(Errc::DomainError, "record colouring needs n >= 2");
  const std::uint64_t orders = detail::factorial_saturating(n);
  if (orders > limits.max_leaves) throw TooLarge(limits.max_leaves, orders, "too many relative orders");

  std::map<std::vector<int>, std::uint64_t> counts;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> shades(static_cast<std::size_t>(n));
  do {
    std::fill(shades.begin(), shades.end(), 0);
    int best = -1;
    for (int s = 1; s <= n; ++s) {
      const int rank = order[static_cast<std::size_t>(s - 1)];
      if (rank > best) {
        best = rank;
        shades[static_cast<std::size_t>(n - s)] = 1;  // seat n-s+2, index seat-2
      }
    }
    ++counts[shades];
  } while (std::next_permutation(order.begin(), order.end()));

  ColoringDistribution dist;
  for (const auto& [key, count] : counts) {
    dist[key] = ExactProb(static_cast<std::int64_t>(count), static_cast<std::int64_t>(orders));
  }
  return dist;
}

}  // namespace seatlab
