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

#include <cassert>
#include <cstddef>
#include <vector>

namespace seatlab {

// Set of empty seats 1..n with O(1) uniform pick by index and O(1) removal
// (swap-remove with a position map). Seats start in ascending order, so the
// i-th element is deterministic given the removal history.
class EmptySeats {
 public:
  void reset(int n) {
    seats_.resize(static_cast<std::size_t>(n));
    pos_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int s = 1; s <= n; ++s) {
      seats_[static_cast<std::size_t>(s - 1)] = s;
      pos_[static_cast<std::size_t>(s)] = s - 1;
    }
  }

  std::size_t size() const { return seats_.size(); }
  int at(std::size_t i) const { return seats_[i]; }
  bool contains(int seat) const { return pos_[static_cast<std::size_t>(seat)] >= 0; }

  void remove(int seat) {
    const int idx = pos_[static_cast<std::size_t>(seat)];
    assert(idx >= 0);
    const int last = seats_.back();
    seats_[static_cast<std::size_t>(idx)] = last;
    pos_[static_cast<std::size_t>(last)] = idx;
    seats_.pop_back();
    pos_[static_cast<std::size_t>(seat)] = -1;
  }

 private:
  std::vector<int> seats_;
  std::vector<int> pos_;
};

}  // namespace seatlab
