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
#include <charconv>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "seatlab/error.hpp"
#include "seatlab/rational.hpp"
#include "seatlab/rng.hpp"

// Red Now: the player calls exactly once, before some card is exposed, and
// wins if that card is red. Every strategy wins with probability r/(r+b).

namespace seatlab::rednow {

enum class Color : std::uint8_t { Red, Black };
enum class Action { Wait, Call };
enum class Mode { NextCard, BottomCard };

struct Deck {
  int reds = 0;
  int blacks = 0;

  int size() const { return reds + blacks; }

  void check() const {
    if (reds < 0 || blacks < 0 || size() < 1) {
      throw Error(Errc::DomainError, "deck needs reds, blacks >= 0 and at least one card");
    }
  }
};

inline char color_char(Color c) { return c == Color::Red ? 'R' : 'B'; }

inline std::string prefix_string(std::span<const Color> prefix) {
  std::string s;
  s.reserve(prefix.size());
  for (Color c : prefix) s.push_back(color_char(c));
  return s;
}

/// A strategy sees the deck composition and every colour exposed so far.
struct Strategy {
  std::string name;
  std::function<Action(const Deck&, std::span<const Color>)> decide;
};

/// Number of cards exposed before the call: the first prefix length at which
/// the strategy calls, or size-1 if it never does.
inline int call_position(const Deck& deck, const Strategy& strategy, std::span<const Color> sequence) {
  const int last = deck.size() - 1;
  for (int len = 0; len < last; ++len) {
    if (strategy.decide(deck, sequence.first(static_cast<std::size_t>(len))) == Action::Call) return len;
  }
  return last;
}

inline bool play(const Deck& deck, const Strategy& strategy, std::span<const Color> sequence, Mode mode) {
  const int pos = call_position(deck, strategy, sequence);
  const Color target = mode == Mode::NextCard ? sequence[static_cast<std::size_t>(pos)] : sequence.back();
  return target == Color::Red;
}

inline std::uint64_t binomial_saturating(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

inline constexpr std::uint64_t kDefaultSequenceBound = 1'000'000;

/// Exact win probability over all C(r+b, r) equally likely colour sequences,
/// visited in lexicographic order via next_permutation.
inline ExactProb win_probability_exact(const Deck& deck, const Strategy& strategy, Mode mode,
                                       std::uint64_t max_sequences = kDefaultSequenceBound) {
  deck.check();
  const std::uint64_t total = binomial_saturating(deck.size(), deck.reds);
  if (total > max_sequences) throw TooLarge(max_sequences, total, "too many colour sequences");
  std::vector<Color> seq(static_cast<std::size_t>(deck.reds), Color::Red);
  seq.resize(static_cast<std::size_t>(deck.size()), Color::Black);
  std::uint64_t wins = 0;
  do {
    if (play(deck, strategy, seq, mode)) ++wins;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return ExactProb(BigRational(BigInt(wins), BigInt(total)));
}

struct WinTally {
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  std::uint64_t master_seed = 0;

  double frequency() const { return trials ? static_cast<double>(wins) / static_cast<double>(trials) : 0.0; }
  friend bool operator==(const WinTally&, const WinTally&) = default;
};

/// Trial t shuffles the sorted deck (reds first) with Fisher-Yates under
/// trial_rng(seed, t), swapping position i with uniform_below(i+1) for i from
/// the top down, then plays once.
inline WinTally win_frequency_mc(const Deck& deck, const Strategy& strategy, std::uint64_t trials, std::uint64_t seed,
                                 Mode mode = Mode::NextCard, unsigned workers = 1) {
  deck.check();
  if (trials < 1) throw Error(Errc::DomainError, "trials must be >= 1");
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers == 0 ? 1 : workers, 1, trials));
  std::vector<std::uint64_t> wins(workers, 0);
  auto work = [&](unsigned w) {
    std::vector<Color> base(static_cast<std::size_t>(deck.reds), Color::Red);
    base.resize(static_cast<std::size_t>(deck.size()), Color::Black);
    std::vector<Color> seq;
    for (std::uint64_t t = trials * w / workers; t < trials * (w + 1) / workers; ++t) {
      SplitMix64 rng = trial_rng(seed, t);
      seq = base;
      for (std::size_t i = seq.size(); i-- > 1;) std::swap(seq[i], seq[rng.uniform_below(i + 1)]);
      if (play(deck, strategy, seq, mode)) ++wins[w];
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  WinTally tally{trials, 0, seed};
  for (auto w : wins) tally.wins += w;
  return tally;
}

// Built-in strategies.

inline Strategy call_immediately() {
  return {"immediate", [](const Deck&, std::span<const Color>) { return Action::Call; }};
}

inline Strategy call_at_last_chance() {
  return {"last", [](const Deck&, std::span<const Color>) { return Action::Wait; }};
}

/// Call once remaining reds / remaining cards >= theta.
inline Strategy majority_threshold(double theta) {
  return {"threshold:" + std::to_string(theta), [theta](const Deck& deck, std::span<const Color> prefix) {
            const auto seen_red = std::count(prefix.begin(), prefix.end(), Color::Red);
            const double reds_left = static_cast<double>(deck.reds - seen_red);
            const double left = static_cast<double>(deck.size()) - static_cast<double>(prefix.size());
            return reds_left >= theta * left ? Action::Call : Action::Wait;
          }};
}

/// Call right after the first run of `run` consecutive blacks.
inline Strategy first_black_run(int run) {
  return {"black-run:" + std::to_string(run), [run](const Deck&, std::span<const Color> prefix) {
            int streak = 0;
            for (Color c : prefix) {
              streak = c == Color::Black ? streak + 1 : 0;
              if (streak >= run) return Action::Call;
            }
            return Action::Wait;
          }};
}

/// Pseudo-random decision table: each prefix maps to Call with a
/// seed-dependent probability in [0.05, 0.55), decided by hashing the prefix
/// with the seed. A pure function of (seed, prefix), so reproducible.
inline Strategy random_table(std::uint64_t seed) {
  const double p_call = 0.05 + 0.5 * (static_cast<double>(mix64(seed, 0) >> 11) * 0x1.0p-53);
  return {"random:" + std::to_string(seed), [seed, p_call](const Deck&, std::span<const Color> prefix) {
            std::uint64_t h = mix64(seed, prefix.size() + 1);
            for (Color c : prefix) h = mix64(h, c == Color::Red ? 1 : 2);
            const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
            return u < p_call ? Action::Call : Action::Wait;
          }};
}

/// Explicit table keyed by prefix strings over {R, B}; unlisted prefixes take
/// `fallback`.
inline Strategy table_strategy(std::map<std::string, Action> entries, Action fallback, std::string name = "table") {
  for (const auto& [prefix, action] : entries) {
    if (prefix.find_first_not_of("RB") != std::string::npos) {
      throw Error(Errc::DomainError, "table prefix must use only R and B: " + prefix);
    }
  }
  return {std::move(name), [entries = std::move(entries), fallback](const Deck&, std::span<const Color> prefix) {
            auto it = entries.find(prefix_string(prefix));
            return it == entries.end() ? fallback : it->second;
          }};
}

inline std::vector<Strategy> strategy_library() {
  return {call_immediately(),      call_at_last_chance(),   majority_threshold(0.5),
          majority_threshold(0.6), majority_threshold(0.75), first_black_run(1),
          first_black_run(2),      first_black_run(3),      random_table(7)};
}

/// Parses "immediate", "last", "threshold:θ", "black-run:j" or "random:seed".
inline Strategy parse_strategy(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto bad = [&]() { return Error(Errc::DomainError, "unknown strategy '" + std::string(text) + "'"); };

  if (head == "immediate" && arg.empty()) return call_immediately();
  if (head == "last" && arg.empty()) return call_at_last_chance();
  if (head == "threshold") {
    double theta = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), theta);
    if (ec != std::errc{} || p != arg.data() + arg.size() || arg.empty()) throw bad();
    auto s = majority_threshold(theta);
    s.name = std::string(text);
    return s;
  }
  if (head == "black-run") {
    int run = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), run);
    if (ec != std::errc{} || p != arg.data() + arg.size() || run < 1) throw bad();
    return first_black_run(run);
  }
  if (head == "random") {
    std::uint64_t seed = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), seed);
    if (ec != std::errc{} || p != arg.data() + arg.size() || arg.empty()) throw bad();
    return random_table(seed);
  }
  throw bad();
}

}  // namespace seatlab::rednow
