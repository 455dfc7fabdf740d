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
#include <functional>
#include <vector>

#include "seatlab/core_model.hpp"

namespace seatlab {

/// Normalized displacements of one chain, sorted decreasing. chain_id is the
/// lost passenger (1..k) that started the chain.
struct DisplacementProfile {
  int chain_id = 0;
  std::vector<double> components;

  double largest() const { return components.empty() ? 0.0 : components.front(); }
};

/// Raw integer displacements S_i - i along each chain, in boarding order.
/// Seats 1..k are relabeled n+1..n+k first. Chain i starts at lost passenger
/// i and follows displaced passengers until it reaches a relabeled seat > n.
inline std::vector<std::vector<std::int64_t>> chain_displacements(const Instance& instance,
                                                                  const Outcome& outcome) {
  const auto k = instance.consecutive_k();
  if (!k) throw Error(Errc::NotConsecutive, "displacement chains need lost = {1..k}");
  const int n = instance.n();
  std::vector<std::vector<std::int64_t>> chains(static_cast<std::size_t>(*k));
  for (int head = 1; head <= *k; ++head) {
    auto& chain = chains[static_cast<std::size_t>(head - 1)];
    int p = head;
    for (int steps = 0; steps <= n; ++steps) {
      const int s = relabeled_seat(outcome.seat(p), n, *k);
      chain.push_back(s - p);
      if (s > n) break;
      if (s <= p) throw Error(Errc::DomainError, "outcome is not a valid displacement chain");
      p = s;
    }
  }
  return chains;
}

/// One profile per chain (a single profile when k = 1), components D_i / n.
inline std::vector<DisplacementProfile> displacement_profile(const Instance& instance,
                                                             const Outcome& outcome) {
  const auto chains = chain_displacements(instance, outcome);
  const double n = instance.n();
  std::vector<DisplacementProfile> out;
  out.reserve(chains.size());
  for (std::size_t c = 0; c < chains.size(); ++c) {
    DisplacementProfile prof;
    prof.chain_id = static_cast<int>(c) + 1;
    prof.components.reserve(chains[c].size());
    for (auto d : chains[c]) prof.components.push_back(static_cast<double>(d) / n);
    std::sort(prof.components.begin(), prof.components.end(), std::greater<>());
    out.push_back(std::move(prof));
  }
  return out;
}

}  // namespace seatlab
