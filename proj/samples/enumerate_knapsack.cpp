#include "boip/boip.hpp"

#include <iostream>

int main() {
  using namespace boip;
  const BoipInstance in = gen_instance(ProblemKind::knapsack, 14, 7);
  const RunResult r = run(in, AlgoConfig::variant("CN"));

  std::cout << frontier_to_csv(r.frontier, in.original_sense);
  std::cout << stats_json(r).dump() << "\n";

  const bool exact = r.frontier == brute_force_frontier(in);
  const bool identity = verify_ip_identity(r);
  std::cout << "matches oracle: " << (exact ? "yes" : "no") << ", IP identity: " << (identity ? "holds" : "fails")
            << "\n";
  return exact && identity ? 0 : 1;
}
