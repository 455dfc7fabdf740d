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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>

#include "json.hpp"

#include "seatlab/backward.hpp"
#include "seatlab/core_model.hpp"
#include "seatlab/exact_engine.hpp"
#include "seatlab/pd_limit.hpp"
#include "seatlab/rednow.hpp"

// JSON encodings shared by the CLI and the tests. Rationals are "p/q"
// strings; doubles are rounded to 12 significant digits.

namespace seatlab::io {

using nlohmann::json;

inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline json to_json(const ExactProb& p) { return p.str(); }

inline json to_json(const Outcome& o) { return o.seat_of; }

inline json to_json(const ExactDistribution& d) {
  json arr = json::array();
  for (const auto& [outcome, prob] : d.entries) arr.push_back({{"seat_of", to_json(outcome)}, {"prob", prob.str()}});
  return arr;
}

inline json to_json(const IndependenceReport& r) {
  json v = json::array();
  for (const auto& viol : r.violations) {
    v.push_back({{"subset", viol.subset}, {"joint", viol.joint.str()}, {"product", viol.product.str()}});
  }
  return {{"subsets_checked", r.subsets_checked}, {"violations", v}};
}

/// {"n":…, "k":…, "colors":[{"seat":m, "shade":i|null}, …]}
inline json to_json(const ColoredSeats& c) {
  json colors = json::array();
  for (int seat = c.first_seat(); seat <= c.last_seat(); ++seat) {
    colors.push_back({{"seat", seat}, {"shade", c.is_red(seat) ? json(c.shade(seat)) : json(nullptr)}});
  }
  return {{"n", c.n()}, {"k", c.k()}, {"colors", colors}};
}

inline ColoredSeats coloring_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int k = j.at("k").get<int>();
  ColoredSeats c(n, k);
  const auto& colors = j.at("colors");
  if (colors.size() != static_cast<std::size_t>(n)) {
    throw Error(Errc::MalformedColoring, "expected one colour per seat k+1..n+k");
  }
  for (const auto& entry : colors) {
    const auto& shade = entry.at("shade");
    c.set_shade(entry.at("seat").get<int>(), shade.is_null() ? 0 : shade.get<int>());
  }
  c.check();
  return c;
}

inline json to_json(const ConvergenceRow& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"trials", r.trials},
          {"ks_distance", round12(r.ks_distance)},
          {"ks_threshold", round12(r.ks_threshold)},
          {"ks_pass", r.ks_pass},
          {"mean_largest", round12(r.mean_largest)},
          {"var_largest", round12(r.var_largest)},
          {"max_cross_corr", r.max_cross_corr ? json(round12(*r.max_cross_corr)) : json(nullptr)}};
}

inline json to_json(const ConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return {{"oracle_mean_largest", round12(r.oracle_mean_largest)},
          {"oracle_var_largest", round12(r.oracle_var_largest)},
          {"rows", rows}};
}

inline rednow::Action action_from_string(const std::string& s) {
  if (s == "call") return rednow::Action::Call;
  if (s == "wait") return rednow::Action::Wait;
  throw Error(Errc::DomainError, "action must be \"call\" or \"wait\", got \"" + s + "\"");
}

/// {"type":"table", "entries":[{"prefix":"RBR","action":"call"}, …], "default":"wait"}
inline rednow::Strategy strategy_from_json(const json& j) {
  if (j.at("type").get<std::string>() != "table") throw Error(Errc::DomainError, "strategy type must be \"table\"");
  std::map<std::string, rednow::Action> entries;
  for (const auto& e : j.at("entries")) {
    entries[e.at("prefix").get<std::string>()] = action_from_string(e.at("action").get<std::string>());
  }
  const auto fallback = action_from_string(j.value("default", std::string("wait")));
  return rednow::table_strategy(std::move(entries), fallback);
}

}  // namespace seatlab::io
