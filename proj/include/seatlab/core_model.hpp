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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seatlab/error.hpp"
#include "seatlab/rational.hpp"

// Domain types for the boarding process. Passenger and seat labels are
// 1-based throughout; passenger p is assigned seat p.

namespace seatlab {

/// Checks raw instance parameters. Throws EmptySeatCount or LostOutOfRange.
inline void validate(int n, std::span<const int> lost) {
  if (n < 1) throw Error(Errc::EmptySeatCount, "seat count must be >= 1, got " + std::to_string(n));
  for (int p : lost) {
    if (p < 1 || p > n) {
      throw Error(Errc::LostOutOfRange,
                  "lost passenger " + std::to_string(p) + " not in 1.." + std::to_string(n));
    }
  }
}

/// Seat count n and the set of passengers who lost their boarding pass.
class Instance {
 public:
  Instance(int n, std::vector<int> lost) : n_(n), lost_(std::move(lost)) {
    validate(n_, lost_);
    std::sort(lost_.begin(), lost_.end());
    lost_.erase(std::unique(lost_.begin(), lost_.end()), lost_.end());
    is_lost_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int p : lost_) is_lost_[static_cast<std::size_t>(p)] = 1;
  }

  /// lost = {1..k}.
  static Instance consecutive(int n, int k) {
    if (k < 0) throw Error(Errc::DomainError, "k must be >= 0");
    std::vector<int> lost(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) lost[static_cast<std::size_t>(i)] = i + 1;
    return Instance(n, std::move(lost));
  }

  int n() const { return n_; }
  const std::vector<int>& lost() const { return lost_; }
  bool is_lost(int p) const { return is_lost_[static_cast<std::size_t>(p)] != 0; }

  /// k when lost = {1..k} (k may be 0), otherwise nullopt.
  std::optional<int> consecutive_k() const {
    for (std::size_t i = 0; i < lost_.size(); ++i) {
      if (lost_[i] != static_cast<int>(i) + 1) return std::nullopt;
    }
    return static_cast<int>(lost_.size());
  }

  /// Passengers not in the lost set, ascending.
  std::vector<int> non_lost() const {
    std::vector<int> out;
    for (int p = 1; p <= n_; ++p) {
      if (!is_lost(p)) out.push_back(p);
    }
    return out;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_ == b.n_ && a.lost_ == b.lost_;
  }

 private:
  int n_;
  std::vector<int> lost_;
  std::vector<char> is_lost_;
};

/// Passenger -> seat assignment; seat_of[p-1] is passenger p's seat.
struct Outcome {
  std::vector<int> seat_of;

  int n() const { return static_cast<int>(seat_of.size()); }
  int seat(int p) const { return seat_of[static_cast<std::size_t>(p - 1)]; }

  bool is_bijection() const {
    std::vector<char> seen(seat_of.size() + 1, 0);
    for (int s : seat_of) {
      if (s < 1 || s > n() || seen[static_cast<std::size_t>(s)]) return false;
      seen[static_cast<std::size_t>(s)] = 1;
    }
    return true;
  }

  static Outcome identity(int n) {
    Outcome o;
    o.seat_of.resize(static_cast<std::size_t>(n));
    for (int p = 1; p <= n; ++p) o.seat_of[static_cast<std::size_t>(p - 1)] = p;
    return o;
  }

  friend bool operator==(const Outcome&, const Outcome&) = default;
  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

/// Seat label after mapping seats 1..k to n+1..n+k.
inline int relabeled_seat(int seat, int n, int k) { return seat <= k ? seat + n : seat; }

/// With lost = {1..k}, every passenger m > k ends in a relabeled seat >= m.
inline bool satisfies_monotonicity(const Outcome& outcome, int k) {
  const int n = outcome.n();
  for (int m = k + 1; m <= n; ++m) {
    if (relabeled_seat(outcome.seat(m), n, k) < m) return false;
  }
  return true;
}

struct Choice {
  int passenger = 0;
  int seat = 0;
  int options = 0;  // empty seats available at the moment of choosing

  friend bool operator==(const Choice&, const Choice&) = default;
};

/// The random choices made during one boarding, in boarding order.
struct Trace {
  std::vector<Choice> choices;

  ExactProb probability() const {
    BigInt den = 1;
    for (const auto& c : choices) den *= c.options;
    return ExactProb(BigRational(BigInt(1), den));
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// D_m per passenger: engaged for m not lost, true when seat m was taken on
/// arrival.
struct OccupancyEvents {
  std::vector<std::optional<bool>> occupied_on_arrival;  // index p-1

  std::optional<bool> at(int m) const { return occupied_on_arrival[static_cast<std::size_t>(m - 1)]; }
};

/// Re-runs the boarding rule, consuming one trace entry whenever a passenger
/// has to pick a seat. Lost passengers always pick, even if their own seat is
/// free.
inline Outcome replay(const Instance& instance, const Trace& trace) {
  const int n = instance.n();
  std::vector<char> occupied(static_cast<std::size_t>(n) + 1, 0);
  Outcome out;
  out.seat_of.assign(static_cast<std::size_t>(n), 0);
  std::size_t next = 0;
  int empty = n;

  for (int p = 1; p <= n; ++p) {
    const bool must_choose = instance.is_lost(p) || occupied[static_cast<std::size_t>(p)];
    int seat = p;
    if (must_choose) {
      if (next >= trace.choices.size()) {
        throw Error(Errc::TraceTooShort, "no choice recorded for passenger " + std::to_string(p));
      }
      const Choice& c = trace.choices[next++];
      if (c.passenger != p) {
        throw Error(Errc::IllegalChoice, "expected a choice by passenger " + std::to_string(p) +
                                             ", trace has passenger " + std::to_string(c.passenger));
      }
      if (c.seat < 1 || c.seat > n || occupied[static_cast<std::size_t>(c.seat)]) {
        throw Error(Errc::IllegalChoice, "passenger " + std::to_string(p) + " chose unavailable seat " +
                                             std::to_string(c.seat));
      }
      if (c.options != empty) {
        throw Error(Errc::OptionCountMismatch, "passenger " + std::to_string(p) + " recorded " +
                                                   std::to_string(c.options) + " options, " +
                                                   std::to_string(empty) + " seats were empty");
      }
      seat = c.seat;
    }
    occupied[static_cast<std::size_t>(seat)] = 1;
    out.seat_of[static_cast<std::size_t>(p - 1)] = seat;
    --empty;
  }
  if (next != trace.choices.size()) {
    throw Error(Errc::TraceTooLong, std::to_string(trace.choices.size() - next) + " unused choice(s)");
  }
  return out;
}

/// Rebuilds the trace that produced `outcome` (inverse of replay).
inline Trace extract_trace(const Instance& instance, const Outcome& outcome) {
  const int n = instance.n();
  std::vector<char> occupied(static_cast<std::size_t>(n) + 1, 0);
  Trace trace;
  int empty = n;
  for (int p = 1; p <= n; ++p) {
    const int seat = outcome.seat(p);
    if (instance.is_lost(p) || occupied[static_cast<std::size_t>(p)]) {
      trace.choices.push_back({p, seat, empty});
    } else if (seat != p) {
      throw Error(Errc::IllegalChoice, "passenger " + std::to_string(p) + " skipped a free own seat");
    }
    occupied[static_cast<std::size_t>(seat)] = 1;
    --empty;
  }
  return trace;
}

inline OccupancyEvents events_of(const Instance& instance, const Outcome& outcome) {
  OccupancyEvents ev;
  ev.occupied_on_arrival.resize(static_cast<std::size_t>(instance.n()));
  for (int m = 1; m <= instance.n(); ++m) {
    if (!instance.is_lost(m)) ev.occupied_on_arrival[static_cast<std::size_t>(m - 1)] = outcome.seat(m) != m;
  }
  return ev;
}

}  // namespace seatlab
