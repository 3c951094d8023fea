#pragma once

#include "boip/baselines.hpp"
#include "boip/boxer.hpp"
#include "boip/generate.hpp"
#include "boip/io.hpp"
#include "boip/metrics.hpp"
#include "boip/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boip {

/// Options shared by every algorithm in a run or experiment.
struct RunOptions {
  std::optional<SecondStage> second_stage;
  std::optional<BoxOrder> box_order;
  std::optional<SolverBudget> per_model_budget;
  EpsilonPolicy eps;
  bool elimination = true;
  std::optional<std::uint64_t> rbd_budget;
  std::optional<double> wall_budget;
  SolverOptions solver;
};

enum class AlgorithmFamily { Box, WeightedSum, EpsilonBox };

struct AlgorithmSpec {
  AlgorithmFamily family = AlgorithmFamily::Box;
  AlgoConfig box;
  WeightPolicy weight = WeightPolicy::FW;
};

/// Tags: FN FY CN CY NN NY with optional "TL-" prefix and "-S" / "-BO"
/// suffixes, "WS:FW", "WS:CW", "WS:NW", "BA".
inline AlgorithmSpec parse_algorithm(std::string_view tag) {
  AlgorithmSpec spec;
  if (tag == "BA") {
    spec.family = AlgorithmFamily::EpsilonBox;
    return spec;
  }
  if (tag.substr(0, 3) == "WS:") {
    spec.family = AlgorithmFamily::WeightedSum;
    spec.weight = parse_weight_policy(tag.substr(3));
    return spec;
  }
  std::string_view rest = tag;
  bool tl = false;
  if (rest.substr(0, 3) == "TL-") {
    tl = true;
    rest.remove_prefix(3);
  }
  spec.box = AlgoConfig::variant(rest.substr(0, 2));
  rest.remove_prefix(std::min<std::size_t>(2, rest.size()));
  while (!rest.empty()) {
    if (rest.substr(0, 2) == "-S") {
      spec.box.second_stage = SecondStage::SModel;
      rest.remove_prefix(2);
    } else if (rest.substr(0, 3) == "-BO") {
      spec.box.box_order = BoxOrder::LargestFirst;
      rest.remove_prefix(3);
    } else {
      throw PreconditionError("unknown algorithm tag '" + std::string(tag) + "'");
    }
  }
  if (tl) spec.box.per_model_budget = SolverBudget::seconds(50.0);
  return spec;
}

inline RunResult run_algorithm(const BoipInstance& instance, AlgorithmSpec spec, const RunOptions& opt) {
  switch (spec.family) {
    case AlgorithmFamily::Box: {
      AlgoConfig& c = spec.box;
      if (opt.second_stage) c.second_stage = *opt.second_stage;
      if (opt.box_order) c.box_order = *opt.box_order;
      if (opt.per_model_budget) c.per_model_budget = opt.per_model_budget;
      c.eps = opt.eps;
      c.elimination = opt.elimination;
      c.rbd_budget = opt.rbd_budget;
      c.global_wall_limit = opt.wall_budget;
      c.solver = opt.solver;
      return run(instance, c);
    }
    case AlgorithmFamily::WeightedSum: {
      WsConfig c;
      c.weight_policy = spec.weight;
      c.eps = opt.eps;
      c.elimination = opt.elimination;
      c.rbd_budget = opt.rbd_budget;
      c.global_wall_limit = opt.wall_budget;
      c.solver = opt.solver;
      return run_ws(instance, c);
    }
    case AlgorithmFamily::EpsilonBox: {
      BaConfig c;
      c.rbd_budget = opt.rbd_budget;
      c.global_wall_limit = opt.wall_budget;
      c.solver = opt.solver;
      return run_ba(instance, c);
    }
  }
  throw PreconditionError("unknown algorithm family");
}

/// Writes frontier.csv, stats.json, iterations.jsonl and timing.json.
inline void write_run(const std::filesystem::path& dir, const BoipInstance& instance, const RunResult& r) {
  std::filesystem::create_directories(dir);
  write_text((dir / "frontier.csv").string(), frontier_to_csv(r.frontier, instance.original_sense));
  write_text((dir / "stats.json").string(), stats_json(r).dump(2) + "\n");
  write_text((dir / "iterations.jsonl").string(), iteration_log_text(r));
  write_text((dir / "timing.json").string(), timing_json(r).dump(2) + "\n");
}

struct GeneratorSpec {
  ProblemKind kind = ProblemKind::knapsack;
  std::size_t size = 10;
  std::vector<std::uint64_t> seeds;
  GenParams params;
};

/// Budget entries are "full" or a fraction of the reference run's R(b,d) count.
struct BudgetEntry {
  std::optional<Rational> fraction;
  std::string label() const { return fraction ? "b" + to_decimal(*fraction, 2) : "full"; }
};

struct ExperimentSpec {
  std::vector<std::string> instance_paths;
  std::vector<GeneratorSpec> generators;
  std::vector<std::string> algorithms{"FN"};
  std::vector<BudgetEntry> budgets{BudgetEntry{}};
  std::string reference_algorithm = "FN";
  RunOptions options;
};

inline ExperimentSpec experiment_from_json(const Json& j) {
  try {
    ExperimentSpec s;
    if (j.contains("instances")) s.instance_paths = j.at("instances").get<std::vector<std::string>>();
    if (j.contains("generate")) {
      for (const auto& g : j.at("generate")) {
        GeneratorSpec gs;
        gs.kind = parse_kind(g.at("kind").get<std::string>());
        gs.size = g.at("size").get<std::size_t>();
        gs.seeds = g.at("seeds").get<std::vector<std::uint64_t>>();
        if (g.contains("value_range")) {
          auto r = g.at("value_range").get<std::vector<std::int64_t>>();
          if (r.size() != 2) throw PreconditionError("value_range needs two entries");
          gs.params.value_lo = r[0];
          gs.params.value_hi = r[1];
        }
        if (g.contains("weight_range")) {
          auto r = g.at("weight_range").get<std::vector<std::int64_t>>();
          if (r.size() != 2) throw PreconditionError("weight_range needs two entries");
          gs.params.weight_lo = r[0];
          gs.params.weight_hi = r[1];
        }
        if (g.contains("rows")) gs.params.rows = g.at("rows").get<std::size_t>();
        s.generators.push_back(std::move(gs));
      }
    }
    if (j.contains("algorithms")) s.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("reference")) s.reference_algorithm = j.at("reference").get<std::string>();
    if (j.contains("budgets")) {
      s.budgets.clear();
      for (const auto& b : j.at("budgets")) {
        if (b.is_string() && b.get<std::string>() == "full") {
          s.budgets.push_back({});
        } else if (b.is_string()) {
          s.budgets.push_back({parse_rational(b.get<std::string>())});
        } else {
          throw PreconditionError("budgets are \"full\" or fraction strings such as \"1/4\"");
        }
      }
    }
    for (const auto& b : s.budgets)
      if (b.fraction && (*b.fraction < 0 || *b.fraction > 1)) throw PreconditionError("budget fraction outside [0,1]");
    for (const auto& a : s.algorithms) parse_algorithm(a);
    parse_algorithm(s.reference_algorithm);
    if (s.instance_paths.empty() && s.generators.empty()) throw PreconditionError("experiment has no instances");
    return s;
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed experiment spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw PreconditionError(std::string("malformed experiment spec: ") + e.what());
  }
}

struct SummaryRow {
  std::string instance;
  std::string algorithm;
  std::string budget;
  RunResult result;
  std::optional<RepresentationReport> report;
};

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "instance,algorithm,budget,N,IP,RBD,C,C2,E,completed,CE,SCE,SHGx1e3\n";
  for (const auto& r : rows) {
    const RunStats& s = r.result.stats;
    out += r.instance + "," + r.algorithm + "," + r.budget + "," + std::to_string(s.n_nondominated) + "," +
           std::to_string(s.n_ip) + "," + std::to_string(s.n_rbd) + "," + std::to_string(s.C) + "," +
           std::to_string(s.C2) + "," + std::to_string(s.E) + "," + (r.result.completed ? "1" : "0") + ",";
    if (r.report) {
      out += std::to_string(r.report->ce) + "," + to_decimal(r.report->sce, 4) + "," +
             (r.report->shg ? to_decimal(*r.report->shg * 1000, 4) : std::string()) + "\n";
    } else {
      out += ",,\n";
    }
  }
  return out;
}

inline std::string timing_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "instance,algorithm,budget,wall_seconds\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", r.result.stats.wall_seconds);
    out += r.instance + "," + r.algorithm + "," + r.budget + "," + buf + "\n";
  }
  return out;
}

inline std::string safe_name(std::string s) {
  for (auto& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return s;
}

/// Runs every (instance, algorithm, budget) cell. Fractional budgets are
/// taken of the reference algorithm's completed R(b,d) count, and metrics
/// are computed against the reference frontier.
inline std::vector<SummaryRow> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir) {
  std::vector<BoipInstance> instances;
  for (const auto& p : spec.instance_paths) instances.push_back(load_instance(p));
  for (const auto& g : spec.generators)
    for (auto seed : g.seeds) instances.push_back(gen_instance(g.kind, g.size, seed, g.params));

  std::vector<SummaryRow> rows;
  for (const auto& inst : instances) {
    const std::string iname = safe_name(inst.name);
    const std::filesystem::path idir = out_dir / iname;
    std::filesystem::create_directories(idir);
    save_instance((idir / "instance.json").string(), inst);

    RunOptions ref_opt = spec.options;
    ref_opt.rbd_budget.reset();
    ref_opt.wall_budget.reset();
    RunResult ref = run_algorithm(inst, parse_algorithm(spec.reference_algorithm), ref_opt);
    write_run(idir / ("reference_" + safe_name(spec.reference_algorithm)), inst, ref);

    for (const auto& alg : spec.algorithms) {
      for (const auto& b : spec.budgets) {
        RunOptions opt = spec.options;
        if (b.fraction) {
          if (!ref.completed) throw std::runtime_error("reference run did not complete on " + inst.name);
          opt.rbd_budget = to_int64(floor_of(*b.fraction * from_int64(static_cast<std::int64_t>(ref.stats.n_rbd))));
        }
        SummaryRow row{inst.name, alg, b.label(), run_algorithm(inst, parse_algorithm(alg), opt), std::nullopt};
        write_run(idir / (safe_name(alg) + "_" + b.label()), inst, row.result);
        if (ref.completed && !row.result.frontier.empty() && ref.frontier.size() >= 2) {
          row.report = representation_report(ref.frontier, row.result.frontier);
        }
        rows.push_back(std::move(row));
      }
    }
  }
  write_text((out_dir / "summary.csv").string(), summary_csv(rows));
  write_text((out_dir / "timing.csv").string(), timing_csv(rows));
  return rows;
}

}  // namespace boip
