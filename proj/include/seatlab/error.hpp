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
#include <stdexcept>
#include <string>
#include <string_view>

namespace seatlab {

enum class Errc {
  EmptySeatCount,
  LostOutOfRange,
  IllegalChoice,
  OptionCountMismatch,
  TraceTooShort,
  TraceTooLong,
  TooLarge,
  DomainError,
  NotConsecutive,
  MalformedColoring,
  StrategyNeverCalls,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::EmptySeatCount: return "EmptySeatCount";
    case Errc::LostOutOfRange: return "LostOutOfRange";
    case Errc::IllegalChoice: return "IllegalChoice";
    case Errc::OptionCountMismatch: return "OptionCountMismatch";
    case Errc::TraceTooShort: return "TraceTooShort";
    case Errc::TraceTooLong: return "TraceTooLong";
    case Errc::TooLarge: return "TooLarge";
    case Errc::DomainError: return "DomainError";
    case Errc::NotConsecutive: return "NotConsecutive";
    case Errc::MalformedColoring: return "MalformedColoring";
    case Errc::StrategyNeverCalls: return "StrategyNeverCalls";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when an exact computation would exceed its configured work bound.
/// `estimated` is the work the request would need, in the same unit as
/// `bound` (decision-tree leaves, DP states, sequences or subsets).
class TooLarge : public Error {
 public:
  TooLarge(std::uint64_t bound, std::uint64_t estimated, const std::string& what)
      : Error(Errc::TooLarge, what + " (bound " + std::to_string(bound) +
                                  ", estimated " + std::to_string(estimated) + ")"),
        bound_(bound),
        estimated_(estimated) {}

  std::uint64_t bound() const noexcept { return bound_; }
  std::uint64_t estimated() const noexcept { return estimated_; }

 private:
  std::uint64_t bound_;
  std::uint64_t estimated_;
};

}  // namespace seatlab
