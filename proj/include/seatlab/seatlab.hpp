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

#include "seatlab/backward.hpp"
#include "seatlab/core_model.hpp"
#include "seatlab/displacement.hpp"
#include "seatlab/empty_seats.hpp"
#include "seatlab/error.hpp"
#include "seatlab/exact_engine.hpp"
#include "seatlab/forward_sim.hpp"
#include "seatlab/pd_limit.hpp"
#include "seatlab/rational.hpp"
#include "seatlab/rednow.hpp"
#include "seatlab/rng.hpp"
#include "seatlab/stats.hpp"
