#include "boip/boip.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace boip;

namespace {

constexpr int kOk = 0;
constexpr int kPrecondition = 2;
constexpr int kSolverFailure = 3;

struct RunFlags {
  std::string variant = "FN";
  std::string second_stage;
  std::string box_order;
  std::optional<double> tl_seconds;
  std::optional<std::uint64_t> tl_nodes;
  std::string eps = "1/2";
  bool no_elimination = false;
  std::optional<std::uint64_t> budget_rbd;
  std::optional<double> budget_seconds;
  bool exact_lp = false;

  void attach(CLI::App* app, bool with_variant) {
    if (with_variant)
      app->add_option("--variant", variant, "FN FY CN CY NN NY (optionally TL-/-S/-BO), WS:FW|CW|NW, BA")
          ->capture_default_str();
    app->add_option("--second-stage", second_stage, "p1p2 or smodel")->check(CLI::IsMember({"p1p2", "smodel"}));
    app->add_option("--box-order", box_order, "fifo or largest")->check(CLI::IsMember({"fifo", "largest"}));
    app->add_option("--tl-seconds", tl_seconds, "per-model time limit for R(b,d), enabling the retry")
        ->check(CLI::PositiveNumber);
    app->add_option("--tl-nodes", tl_nodes, "per-model node limit for R(b,d), enabling the retry");
    app->add_option("--eps", eps, "epsilon in (0,1), e.g. 1/2")->capture_default_str();
    app->add_flag("--no-elimination", no_elimination, "keep boxes failing the size test");
    app->add_option("--budget-rbd", budget_rbd, "stop after this many R(b,d) models");
    app->add_option("--budget-seconds", budget_seconds, "global wall-clock limit")->check(CLI::NonNegativeNumber);
    app->add_flag("--exact-lp", exact_lp, "rational simplex at every node");
  }

  RunOptions options() const {
    RunOptions o;
    if (second_stage == "p1p2") o.second_stage = SecondStage::P1P2;
    if (second_stage == "smodel") o.second_stage = SecondStage::SModel;
    if (box_order == "fifo") o.box_order = BoxOrder::FIFO;
    if (box_order == "largest") o.box_order = BoxOrder::LargestFirst;
    if (tl_seconds || tl_nodes) o.per_model_budget = SolverBudget{tl_seconds, tl_nodes};
    try {
      o.eps.epsilon = parse_rational(eps);
    } catch (const std::invalid_argument& e) {
      throw PreconditionError(e.what());
    }
    o.eps.validate();
    o.elimination = !no_elimination;
    o.rbd_budget = budget_rbd;
    o.wall_budget = budget_seconds;
    if (exact_lp) o.solver.lp_mode = LpMode::exact;
    return o;
  }
};

std::array<Sense, 2> parse_sense_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw PreconditionError("sense must look like max,max");
  return {parse_sense(s.substr(0, comma)), parse_sense(s.substr(comma + 1))};
}

void print_summary(const RunResult& r, const fs::path& dir) {
  std::cout << r.algorithm << ": N=" << r.stats.n_nondominated << " IP=" << r.stats.n_ip << " RBD=" << r.stats.n_rbd
            << " C=" << r.stats.C << " C2=" << r.stats.C2 << " E=" << r.stats.E
            << (r.completed ? " completed" : " truncated") << (r.infeasible ? " infeasible" : "") << " -> "
            << dir.string() << "\n";
}

int finish(const RunResult& r) {
  if (r.solver_failure) {
    std::cerr << "solver failure: " << r.failure_message << "\n";
    return kSolverFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and budget-limited frontier enumeration for biobjective 0-1 programs"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  std::string kind = "knapsack";
  std::size_t size = 10;
  std::uint64_t seed = 1;
  std::vector<std::int64_t> value_range, weight_range;
  std::size_t rows = 3;
  std::string out = "out";
  gen->add_option("--kind", kind)->check(CLI::IsMember({"knapsack", "assignment", "generic"}))->capture_default_str();
  gen->add_option("--size", size, "items, assignment side length, or variables")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--value-range", value_range, "lo hi")->expected(2);
  gen->add_option("--weight-range", weight_range, "lo hi")->expected(2);
  gen->add_option("--rows", rows, "constraint rows (generic)")->capture_default_str();
  gen->add_option("--out", out, "output directory")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "enumerate the frontier");
  std::string instance_path;
  RunFlags solve_flags;
  solve->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  solve_flags.attach(solve, true);
  solve->add_option("--out", out)->capture_default_str();

  auto* approx = app.add_subcommand("approx", "budget-limited run, optionally scored against a reference");
  RunFlags approx_flags;
  std::string reference_path;
  approx->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  approx_flags.attach(approx, true);
  approx->add_option("--reference", reference_path, "reference frontier CSV")->check(CLI::ExistingFile);
  approx->add_option("--out", out)->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "frontier by exhaustive enumeration");
  std::uint64_t cap = std::uint64_t{1} << 20;
  oracle->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--cap", cap, "maximum number of enumerated assignments")->capture_default_str();
  oracle->add_option("--out", out)->capture_default_str();

  auto* metrics = app.add_subcommand("metrics", "CE, SCE, hypervolume and SHG of a subset");
  std::string subset_path, metrics_instance, sense = "min,min";
  metrics->add_option("--reference", reference_path)->required()->check(CLI::ExistingFile);
  metrics->add_option("--subset", subset_path)->required()->check(CLI::ExistingFile);
  auto* inst_opt = metrics->add_option("--instance", metrics_instance, "instance supplying the objective senses")
                       ->check(CLI::ExistingFile);
  metrics->add_option("--sense", sense, "objective senses of the CSV files")->excludes(inst_opt)->capture_default_str();
  metrics->add_option("--out", out, "also write metrics.json here");

  auto* bench = app.add_subcommand("bench", "run an experiment spec");
  std::string spec_path;
  RunFlags bench_flags;
  bench->add_option("spec", spec_path)->required()->check(CLI::ExistingFile);
  bench_flags.attach(bench, false);
  bench->add_option("--out", out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kPrecondition;
  }

  try {
    if (gen->parsed()) {
      GenParams params;
      if (!value_range.empty()) {
        params.value_lo = value_range[0];
        params.value_hi = value_range[1];
      }
      if (!weight_range.empty()) {
        params.weight_lo = weight_range[0];
        params.weight_hi = weight_range[1];
      }
      params.rows = rows;
      BoipInstance in = gen_instance(parse_kind(kind), size, seed, params);
      fs::create_directories(out);
      const fs::path path = fs::path(out) / (in.name + ".json");
      save_instance(path.string(), in);
      std::cout << path.string() << "\n";
      return kOk;
    }
    if (solve->parsed() || approx->parsed()) {
      const RunFlags& flags = solve->parsed() ? solve_flags : approx_flags;
      RunOptions opt = flags.options();
      if (approx->parsed() && !opt.rbd_budget && !opt.wall_budget)
        throw PreconditionError("approx needs --budget-rbd or --budget-seconds");
      BoipInstance in = load_instance(instance_path);
      std::optional<Frontier> reference;
      if (approx->parsed() && !reference_path.empty()) reference = load_frontier(reference_path, in.original_sense);
      RunResult r = run_algorithm(in, parse_algorithm(flags.variant), opt);
      write_run(out, in, r);
      if (reference) {
        RepresentationReport rep = representation_report(*reference, r.frontier);
        write_text((fs::path(out) / "metrics.json").string(), report_json(rep).dump(2) + "\n");
        std::cout << report_json(rep).dump() << "\n";
      }
      print_summary(r, out);
      return finish(r);
    }
    if (oracle->parsed()) {
      BoipInstance in = load_instance(instance_path);
      Frontier f = brute_force_frontier(in, cap);
      fs::create_directories(out);
      write_text((fs::path(out) / "frontier.csv").string(), frontier_to_csv(f, in.original_sense));
      std::cout << "oracle: N=" << f.size() << " -> " << out << "\n";
      return kOk;
    }
    if (metrics->parsed()) {
      std::array<Sense, 2> senses =
          metrics_instance.empty() ? parse_sense_pair(sense) : load_instance(metrics_instance).original_sense;
      Frontier ref = load_frontier(reference_path, senses);
      Frontier sub = load_frontier(subset_path, senses);
      Json j = report_json(representation_report(ref, sub));
      if (metrics->count("--out") > 0) {
        fs::create_directories(out);
        write_text((fs::path(out) / "metrics.json").string(), j.dump(2) + "\n");
      }
      std::cout << j.dump(2) << "\n";
      return kOk;
    }
    if (bench->parsed()) {
      ExperimentSpec spec = experiment_from_json(Json::parse(read_text(spec_path)));
      RunOptions cli = bench_flags.options();
      if (bench_flags.second_stage.size()) spec.options.second_stage = cli.second_stage;
      if (bench_flags.box_order.size()) spec.options.box_order = cli.box_order;
      if (cli.per_model_budget) spec.options.per_model_budget = cli.per_model_budget;
      spec.options.eps = cli.eps;
      spec.options.elimination = cli.elimination;
      spec.options.rbd_budget = cli.rbd_budget;
      spec.options.wall_budget = cli.wall_budget;
      spec.options.solver = cli.solver;
      fs::create_directories(out);
      auto rows = run_experiment(spec, out);
      int failures = 0;
      for (const auto& r : rows) failures += r.result.solver_failure ? 1 : 0;
      std::cout << "bench: " << rows.size() << " cells -> " << (fs::path(out) / "summary.csv").string() << "\n";
      return failures > 0 ? kSolverFailure : kOk;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  return kOk;
}
