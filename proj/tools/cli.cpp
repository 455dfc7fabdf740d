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

#include "cli.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "seatlab/json_io.hpp"
#include "seatlab/seatlab.hpp"

namespace seatlab::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Comma-separated integers; the token "n" stands for `n_alias` when given.
std::vector<int> parse_int_list(const std::string& text, std::optional<int> n_alias = std::nullopt) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "n" && n_alias) {
      out.push_back(*n_alias);
      continue;
    }
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + text + "'");
    }
  }
  return out;
}

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// RFC 4180: quote fields containing a comma, quote, CR or LF.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

ExactLimits limits_from_env() {
  ExactLimits limits;
  if (const char* env = std::getenv("SEATLAB_MAX_LEAVES")) {
    try {
      limits.max_leaves = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("SEATLAB_MAX_LEAVES is not an integer: ") + env);
    }
  }
  return limits;
}

struct InstanceArgs {
  int n = 0;
  std::optional<int> k;
  std::optional<std::string> lost;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "seat count")->required();
    auto* ko = app->add_option("--k", k, "lost passes are passengers 1..k");
    auto* lo = app->add_option("--lost", lost, "comma-separated lost passengers, e.g. 1,3,5");
    ko->excludes(lo);
  }

  Instance build() const {
    if (!k && !lost) throw UsageError("one of --k or --lost is required");
    if (k) {
      if (*k < 0 || *k > n) throw UsageError("--k must lie in 0..n");
      return Instance::consecutive(n, *k);
    }
    return Instance(n, parse_int_list(*lost));
  }
};

json instance_params(const Instance& inst) {
  json p = {{"n", inst.n()}, {"lost", inst.lost()}};
  if (auto k = inst.consecutive_k()) p["k"] = *k;
  return p;
}

json interval_entry(std::uint64_t count, std::uint64_t trials) {
  const auto iv = stats::wilson_interval(count, trials, stats::kZ999);
  return {{"count", count},
          {"frequency", io::round12(static_cast<double>(count) / static_cast<double>(trials))},
          {"wilson_lo", io::round12(iv.lo)},
          {"wilson_hi", io::round12(iv.hi)}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json too_large_error(const std::string& command, const json& params, const TooLarge& e) {
  return {{"command", command},
          {"params", params},
          {"error", {{"type", "TooLarge"}, {"bound", e.bound()}, {"estimated", e.estimated()}, {"message", e.what()}}}};
}

// exact ---------------------------------------------------------------------

struct ExactArgs {
  InstanceArgs inst;
  std::optional<int> event;
  std::optional<std::string> joint;
  bool distribution = false;
  bool verify = false;
  bool as_float = false;
};

int cmd_exact(const ExactArgs& a, std::ostream& out) {
  const Instance inst = a.inst.build();
  const int modes = (a.event ? 1 : 0) + (a.joint ? 1 : 0) + (a.distribution ? 1 : 0) + (a.verify ? 1 : 0);
  if (modes != 1) throw UsageError("exactly one of --event, --joint, --distribution, --verify-independence");
  const auto limits = limits_from_env();
  json params = instance_params(inst);
  json results;
  try {
    if (a.event) {
      params["event"] = *a.event;
      const auto p = event_prob(inst, *a.event, limits);
      results["result"] = p.str();
      if (a.as_float) results["result_float"] = io::round12(p.to_double());
      if (auto k = inst.consecutive_k(); k && *k >= 1 && *a.event > *k) {
        results["closed_form"] = closed_form(inst.n(), *k, *a.event).str();
      }
    } else if (a.joint) {
      const auto events = parse_int_list(*a.joint, inst.n());
      params["joint"] = events;
      const auto p = joint_prob(inst, events, limits);
      ExactProb product(1);
      for (int m : events) product *= event_prob(inst, m, limits);
      results["result"] = p.str();
      results["product_of_marginals"] = product.str();
      if (a.as_float) results["result_float"] = io::round12(p.to_double());
    } else if (a.distribution) {
      params["distribution"] = true;
      const auto dist = enumerate(inst, limits);
      results["outcomes"] = io::to_json(dist);
      results["total"] = dist.total().str();
      if (a.as_float) {
        for (auto& entry : results["outcomes"]) {
          entry["prob_float"] = io::round12(ExactProb::from_string(entry["prob"].get<std::string>()).to_double());
        }
      }
    } else {
      params["verify_independence"] = true;
      results = io::to_json(verify_independence(inst, limits));
    }
  } catch (const TooLarge& e) {
    emit(out, too_large_error("exact", params, e));
    return kExitTooLarge;
  }
  emit(out, {{"command", "exact"}, {"params", params}, {"results", results}});
  return kExitOk;
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
  InstanceArgs inst;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::string> events;
  std::string format = "json";
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Instance inst = a.inst.build();
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  std::vector<int> events;
  if (a.events) {
    events = parse_int_list(*a.events, inst.n());
  } else if (!inst.is_lost(inst.n())) {
    events.push_back(inst.n());
  }
  for (int m : events) {
    if (m < 1 || m > inst.n() || inst.is_lost(m)) {
      throw UsageError("event passenger " + std::to_string(m) + " must be a non-lost label in 1..n");
    }
  }

  BatchOptions opts;
  opts.workers = a.workers;
  const auto result = run_batch(inst, a.trials, a.seed, opts);

  if (a.format == "csv") {
    csv_row(out, {"quantity", "m", "count", "trials", "frequency", "wilson_lo", "wilson_hi"});
    auto row = [&](const std::string& what, int m, std::uint64_t count) {
      const auto iv = stats::wilson_interval(count, a.trials, stats::kZ999);
      csv_row(out, {what, std::to_string(m), std::to_string(count), std::to_string(a.trials),
                    fmt12(static_cast<double>(count) / static_cast<double>(a.trials)), fmt12(iv.lo), fmt12(iv.hi)});
    };
    for (int m : events) row("event", m, result.event_count(m));
    row("last_correct", inst.n(), result.last_correct_count);
    return kExitOk;
  }

  json params = instance_params(inst);
  params["trials"] = a.trials;
  params["events"] = events;
  json ev = json::array();
  for (int m : events) {
    json e = interval_entry(result.event_count(m), a.trials);
    e["m"] = m;
    ev.push_back(e);
  }
  json results = {{"confidence", 0.999},
                  {"events", ev},
                  {"last_correct", interval_entry(result.last_correct_count, a.trials)}};
  emit(out, {{"command", "simulate"}, {"params", params}, {"results", results}, {"seed", a.seed}});
  return kExitOk;
}

// backward ------------------------------------------------------------------

struct BackwardArgs {
  int n = 0;
  int k = 1;
  bool sample = false;
  bool check_forward = false;
  bool records = false;
  std::optional<std::uint64_t> seed;
};

int cmd_backward(const BackwardArgs& a, std::ostream& out) {
  if (a.k < 1 || a.n < a.k + 1) throw UsageError("backward needs k >= 1 and n >= k+1");
  if (a.records && a.k != 1) throw UsageError("--records is only defined for k = 1");
  if (a.check_forward && (a.sample || a.records)) {
    throw UsageError("--check-forward cannot be combined with --sample or --records");
  }
  if (!a.sample && !a.check_forward && !a.records) {
    throw UsageError("choose one of --sample, --check-forward or --records");
  }
  if (a.sample && !a.seed) throw UsageError("--sample needs --seed");

  const auto limits = limits_from_env();
  json params = {{"n", a.n}, {"k", a.k}};
  try {
    if (a.sample) {
      params["mode"] = a.records ? "records-sample" : "sample";
      SplitMix64 rng(mix64(*a.seed, 0));
      const ColoredSeats c = a.records ? sample_coloring_via_records(a.n, rng) : sample_coloring(a.n, a.k, rng);
      json results = {{"coloring", io::to_json(c)}, {"seat_of", io::to_json(seat_from_coloring(c))}};
      emit(out, {{"command", "backward"}, {"params", params}, {"results", results}, {"seed", *a.seed}});
      return kExitOk;
    }
    if (a.records) {
      params["mode"] = "records";
      const auto from_records = record_coloring_distribution(a.n, limits);
      const auto independent = coloring_distribution(a.n, 1, limits);
      json results = {{"equal", from_records == independent}, {"colorings", independent.size()}};
      emit(out, {{"command", "backward"}, {"params", params}, {"results", results}});
      return kExitOk;
    }
    params["mode"] = "check-forward";
    const auto backward = backward_distribution(a.n, a.k, limits);
    const auto forward = enumerate(Instance::consecutive(a.n, a.k), limits);
    std::map<Outcome, std::pair<ExactProb, ExactProb>> both;
    for (const auto& [o, p] : forward.entries) both[o].first = p;
    for (const auto& [o, p] : backward.entries) both[o].second = p;
    json worst = nullptr;
    BigRational worst_gap = 0;
    for (const auto& [o, pq] : both) {
      BigRational gap = abs(pq.first.value() - pq.second.value());
      if (gap > worst_gap) {
        worst_gap = gap;
        worst = {{"seat_of", o.seat_of}, {"forward", pq.first.str()}, {"backward", pq.second.str()}};
      }
    }
    json results = {{"equal", backward == forward}, {"outcomes", both.size()}, {"max_deviation", worst}};
    emit(out, {{"command", "backward"}, {"params", params}, {"results", results}});
    return kExitOk;
  } catch (const TooLarge& e) {
    emit(out, too_large_error("backward", params, e));
    return kExitTooLarge;
  }
}

// pd ------------------------------------------------------------------------

struct PdArgs {
  std::string n_list;
  int k = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double epsilon = 1e-9;
  std::string format = "json";
};

int cmd_pd(const PdArgs& a, std::ostream& out) {
  const auto n_values = parse_int_list(a.n_list);
  if (n_values.empty()) throw UsageError("--n-list is empty");
  if (a.k < 1) throw UsageError("--k must be >= 1");
  if (a.trials < 2) throw UsageError("--trials must be >= 2");
  if (!(a.epsilon > 0 && a.epsilon < 1)) throw UsageError("--epsilon must lie in (0, 1)");
  for (int n : n_values) {
    if (n < 10 * a.k) throw UsageError("every n must be at least 10k");
  }
  ConvergenceOptions opts;
  opts.workers = a.workers;
  opts.epsilon = a.epsilon;
  const auto report = convergence_report(n_values, a.k, a.trials, a.seed, opts);

  if (a.format == "csv") {
    csv_row(out, {"n", "k", "trials", "ks_distance", "mean_largest", "var_largest", "max_cross_corr"});
    for (const auto& r : report.rows) {
      csv_row(out, {std::to_string(r.n), std::to_string(r.k), std::to_string(r.trials), fmt12(r.ks_distance),
                    fmt12(r.mean_largest), fmt12(r.var_largest), r.max_cross_corr ? fmt12(*r.max_cross_corr) : ""});
    }
    return kExitOk;
  }
  json params = {{"n_list", n_values}, {"k", a.k}, {"trials", a.trials}, {"epsilon", a.epsilon}};
  emit(out, {{"command", "pd"}, {"params", params}, {"results", io::to_json(report)}, {"seed", a.seed}});
  return kExitOk;
}

// rednow --------------------------------------------------------------------

struct RedNowArgs {
  int reds = 0;
  int blacks = 0;
  bool exact = false;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategy;
  std::optional<std::string> strategy_file;
  std::string mode = "next";
  unsigned workers = 1;
  bool as_float = false;
};

int cmd_rednow(const RedNowArgs& a, std::ostream& out) {
  const rednow::Deck deck{a.reds, a.blacks};
  if (a.reds < 0 || a.blacks < 0 || deck.size() < 1) throw UsageError("deck needs --reds, --blacks >= 0, total >= 1");
  if (a.exact == a.trials.has_value()) throw UsageError("choose one of --exact or --trials");
  if (a.trials && !a.seed) throw UsageError("--trials needs --seed");
  if (a.trials && *a.trials < 1) throw UsageError("--trials must be >= 1");
  if (a.strategy.has_value() == a.strategy_file.has_value()) {
    throw UsageError("give exactly one of --strategy or --strategy-file");
  }
  if (a.mode != "next" && a.mode != "bottom") throw UsageError("--mode must be next or bottom");
  const auto mode = a.mode == "next" ? rednow::Mode::NextCard : rednow::Mode::BottomCard;

  rednow::Strategy strategy;
  json params = {{"reds", a.reds}, {"blacks", a.blacks}, {"mode", a.mode}};
  if (a.strategy) {
    try {
      strategy = rednow::parse_strategy(*a.strategy);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    params["strategy"] = *a.strategy;
  } else {
    std::ifstream in(*a.strategy_file);
    if (!in) throw UsageError("cannot read strategy file " + *a.strategy_file);
    json j;
    try {
      j = json::parse(in);
      strategy = io::strategy_from_json(j);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad strategy file: ") + e.what());
    }
    params["strategy"] = j;
  }

  if (a.exact) {
    params["exact"] = true;
    try {
      std::uint64_t bound = rednow::kDefaultSequenceBound;
      if (std::getenv("SEATLAB_MAX_LEAVES")) bound = limits_from_env().max_leaves;
      const auto p = rednow::win_probability_exact(deck, strategy, mode, bound);
      json results = {{"result", p.str()}};
      if (a.as_float) results["result_float"] = io::round12(p.to_double());
      emit(out, {{"command", "rednow"}, {"params", params}, {"results", results}});
      return kExitOk;
    } catch (const TooLarge& e) {
      emit(out, too_large_error("rednow", params, e));
      return kExitTooLarge;
    }
  }
  params["trials"] = *a.trials;
  const auto tally = rednow::win_frequency_mc(deck, strategy, *a.trials, *a.seed, mode, a.workers);
  json results = interval_entry(tally.wins, tally.trials);
  results["trials"] = tally.trials;
  results["wins"] = tally.wins;
  results.erase("count");
  emit(out, {{"command", "rednow"}, {"params", params}, {"results", results}, {"seed", *a.seed}});
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"seatlab: lost boarding pass process, exact and simulated"};
  app.require_subcommand(1);

  ExactArgs exact;
  auto* exact_cmd = app.add_subcommand("exact", "exact rational probabilities");
  exact.inst.add_to(exact_cmd);
  exact_cmd->add_option("--event", exact.event, "Pr(D_m) for passenger m");
  exact_cmd->add_option("--joint", exact.joint, "Pr of the intersection of D_m over a comma list");
  exact_cmd->add_flag("--distribution", exact.distribution, "full outcome distribution");
  exact_cmd->add_flag("--verify-independence", exact.verify, "check every subset of events");
  exact_cmd->add_flag("--float", exact.as_float, "add decimal approximations");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo boarding");
  sim.inst.add_to(sim_cmd);
  sim_cmd->add_option("--trials", sim.trials)->required();
  sim_cmd->add_option("--seed", sim.seed)->required();
  sim_cmd->add_option("--workers", sim.workers)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--events", sim.events, "comma list of passengers; 'n' means the last");
  sim_cmd->add_option("--format", sim.format)->check(CLI::IsMember({"json", "csv"}));

  BackwardArgs back;
  auto* back_cmd = app.add_subcommand("backward", "backward colouring construction");
  back_cmd->add_option("--n", back.n)->required();
  back_cmd->add_option("--k", back.k)->required();
  back_cmd->add_flag("--sample", back.sample);
  back_cmd->add_flag("--check-forward", back.check_forward);
  back_cmd->add_flag("--records", back.records);
  back_cmd->add_option("--seed", back.seed);

  PdArgs pd;
  auto* pd_cmd = app.add_subcommand("pd", "scaling-limit convergence report");
  pd_cmd->add_option("--n-list", pd.n_list)->required();
  pd_cmd->add_option("--k", pd.k)->required();
  pd_cmd->add_option("--trials", pd.trials)->required();
  pd_cmd->add_option("--seed", pd.seed)->required();
  pd_cmd->add_option("--workers", pd.workers)->check(CLI::PositiveNumber);
  pd_cmd->add_option("--epsilon", pd.epsilon);
  pd_cmd->add_option("--format", pd.format)->check(CLI::IsMember({"json", "csv"}));

  RedNowArgs rn;
  auto* rn_cmd = app.add_subcommand("rednow", "Red Now card game");
  rn_cmd->add_option("--reds", rn.reds)->required();
  rn_cmd->add_option("--blacks", rn.blacks)->required();
  rn_cmd->add_flag("--exact", rn.exact);
  rn_cmd->add_option("--trials", rn.trials);
  rn_cmd->add_option("--seed", rn.seed);
  rn_cmd->add_option("--strategy", rn.strategy, "immediate | last | threshold:θ | black-run:j | random:seed");
  rn_cmd->add_option("--strategy-file", rn.strategy_file, "JSON decision table");
  rn_cmd->add_option("--mode", rn.mode)->check(CLI::IsMember({"next", "bottom"}));
  rn_cmd->add_option("--workers", rn.workers)->check(CLI::PositiveNumber);
  rn_cmd->add_flag("--float", rn.as_float);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("seatlab");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (exact_cmd->parsed()) return cmd_exact(exact, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out);
    if (back_cmd->parsed()) return cmd_backward(back, out);
    if (pd_cmd->parsed()) return cmd_pd(pd, out);
    if (rn_cmd->parsed()) return cmd_rednow(rn, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TooLarge& e) {
    err << e.what() << '\n';
    return kExitTooLarge;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace seatlab::cli
