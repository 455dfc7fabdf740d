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

// Prints the exact and simulated chance that the last passenger gets their
// own seat when the first k passengers have lost their boarding passes.

#include <cstdio>

#include "seatlab/seatlab.hpp"

int main() {
  const int n = 100;
  for (int k = 1; k <= 4; ++k) {
    const auto inst = seatlab::Instance::consecutive(n, k);
    const auto exact = seatlab::ExactProb(1) - seatlab::closed_form(n, k, n);
    const auto batch = seatlab::run_batch(inst, 200000, 2024);
    std::printf("k=%d  exact %s  simulated %.4f\n", k, exact.str().c_str(),
                static_cast<double>(batch.last_correct_count) / static_cast<double>(batch.trials));
  }
  return 0;
}
