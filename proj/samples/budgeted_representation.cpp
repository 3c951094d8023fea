#include "boip/boip.hpp"

#include <iostream>

// Full FN run as the reference, then every direction policy with a quarter
// of its R(b,d) budget.
int main() {
  using namespace boip;
  const BoipInstance in = gen_instance(ProblemKind::knapsack, 30, 11);
  const RunResult full = run(in, AlgoConfig::variant("FN"));
  if (!full.completed) return 1;
  const std::uint64_t budget = full.stats.n_rbd / 4;
  std::cout << in.name << ": N=" << full.frontier.size() << ", budget " << budget << " of " << full.stats.n_rbd
            << " R(b,d) models\n";

  for (const char* tag : {"FN", "CN", "NN"}) {
    AlgoConfig c = AlgoConfig::variant(tag);
    c.rbd_budget = budget;
    const RunResult r = run(in, c);
    const RepresentationReport rep = representation_report(full.frontier, r.frontier);
    std::cout << tag << "  points=" << rep.subset_size << "  CE=" << rep.ce << "  SCE=" << to_decimal(rep.sce)
              << "  SHG=" << (rep.shg ? to_decimal(*rep.shg) : std::string("-")) << "\n";
  }
  return 0;
}
