#include "support.hpp"

#include <gtest/gtest.h>

using namespace boip;
using namespace boip::testing;

namespace {

BoipInstance knapsack3() {
  BoipInstance in;
  in.n = 3;
  in.objectives[0].coeffs = {-3, -4, -5};
  in.objectives[1].coeffs = {0, 0, 0};
  in.constraints.push_back({{2, 3, 4}, Relation::LE, 5});
  return in;
}

SingleObjectiveIP linear(const BoipInstance& in, int component) {
  const auto& o = in.objective(component);
  return SingleObjectiveIP(in, LinearObjective{o.coeffs, o.offset, 1});
}

}  // namespace

TEST(Solve, KnapsackOptimum) {
  BoipInstance in = knapsack3();
  SolveOutcome out = solve(linear(in, 1));
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_EQ(out.x, (Assignment{1, 1, 0}));
  EXPECT_EQ(out.value, -7);
}

TEST(Solve, InfeasibleRow) {
  BoipInstance in;
  in.n = 2;
  in.objectives[0].coeffs = {1, 1};
  in.objectives[1].coeffs = {1, 1};
  in.constraints.push_back({{1, 1}, Relation::GE, 3});
  EXPECT_EQ(solve(linear(in, 1)).status, SolveStatus::Infeasible);
}

TEST(Solve, ZeroNodeBudgetTimesOut) {
  BoipInstance in = knapsack3();
  SolveOutcome out = solve(linear(in, 1), SolverBudget::nodes(0));
  EXPECT_EQ(out.status, SolveStatus::TimedOut);
  EXPECT_FALSE(out.incumbent.has_value());
}

TEST(Solve, MinAlphaUnitDirection) {
  BoipInstance in = instance_from_points({{3, 5}});
  SingleObjectiveIP ip(in, MinAlphaObjective{{0, 0}, {1, 1}});
  SolveOutcome out = solve(ip);
  ASSERT_EQ(out.status, SolveStatus::Optimal);
  EXPECT_EQ(out.value, 5);
}

TEST(Solve, MinAlphaSkewedDirection) {
  BoipInstance in = instance_from_points({{3, 5}});
  SingleObjectiveIP ip(in, MinAlphaObjective{{0, 0}, {2, 1}});
  EXPECT_EQ(solve(ip).value, 5);
  SingleObjectiveIP ip2(in, MinAlphaObjective{{0, 0}, {1, 4}});
  EXPECT_EQ(solve(ip2).value, 3);
  SingleObjectiveIP ip3(in, MinAlphaObjective{{0, 0}, {2, 4}});
  EXPECT_EQ(solve(ip3).value, make_rational(3, 2));
}

TEST(Lexicographic, CornerPoints) {
  BoipInstance in = instance_from_points({{0, 3}, {1, 1}, {3, 0}});
  EXPECT_EQ(evaluate_objectives(in, solve_lexicographic(in, 1, 2).x), (Point{0, 3}));
  EXPECT_EQ(evaluate_objectives(in, solve_lexicographic(in, 2, 1).x), (Point{3, 0}));
}

TEST(Lexicographic, TieBrokenBySecondStage) {
  BoipInstance in = instance_from_points({{0, 3}, {0, 2}});
  EXPECT_EQ(evaluate_objectives(in, solve_lexicographic(in, 1, 2).x), (Point{0, 2}));
  EXPECT_THROW(solve_lexicographic(in, 1, 1), PreconditionError);
}

TEST(Enumerate, FullCube) {
  BoipInstance in;
  in.n = 2;
  in.objectives[0].coeffs = {1, 0};
  in.objectives[1].coeffs = {0, 1};
  EXPECT_EQ(enumerate_all(in).size(), 4u);
}

TEST(Enumerate, ZeroCapacityKnapsack) {
  BoipInstance in = knapsack3();
  in.constraints[0].rhs = 0;
  auto all = enumerate_all(in);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].first, (Assignment{0, 0, 0}));
}

TEST(Enumerate, MatchesIndependentRecount) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BoipInstance in = gen_instance(ProblemKind::generic, 10, seed);
    auto all = enumerate_all(in);
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < 1024; ++mask) {
      Assignment x(10);
      for (std::size_t j = 0; j < 10; ++j) x[j] = mask >> j & 1;
      if (is_feasible(in, x)) ++count;
    }
    EXPECT_EQ(all.size(), count);
    for (const auto& [x, z] : all) {
      EXPECT_TRUE(is_feasible(in, x));
      EXPECT_EQ(z, evaluate_objectives(in, x));
    }
  }
}

TEST(Enumerate, CapExceeded) {
  BoipInstance in = gen_instance(ProblemKind::generic, 12, 1);
  EXPECT_THROW(enumerate_all(in, 1000), PreconditionError);
}

TEST(SolveProperty, OptimumMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    BoipInstance in = small_instance(seed);
    if (in.n > 14) continue;
    auto all = enumerate_all(in);
    for (int comp = 1; comp <= 2; ++comp) {
      for (LpMode mode : {LpMode::fast, LpMode::exact}) {
        SolveOutcome out = solve(linear(in, comp), {}, {mode});
        if (all.empty()) {
          EXPECT_EQ(out.status, SolveStatus::Infeasible);
          continue;
        }
        std::int64_t best = comp == 1 ? all[0].second.z1 : all[0].second.z2;
        for (const auto& [x, z] : all) best = std::min(best, comp == 1 ? z.z1 : z.z2);
        ASSERT_EQ(out.status, SolveStatus::Optimal) << in.name;
        EXPECT_EQ(out.value, best) << in.name;
        EXPECT_TRUE(is_feasible(in, out.x));
      }
    }
  }
}

TEST(SolveProperty, MinAlphaTouchesAndBounds) {
  Rng rng(99);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    BoipInstance in = small_instance(seed);
    if (in.n > 14) continue;
    auto all = enumerate_all(in);
    if (all.empty()) continue;
    Point lo = all[0].second;
    for (const auto& [x, z] : all) lo = {std::min(lo.z1, z.z1), std::min(lo.z2, z.z2)};
    const RationalPair s{from_int64(lo.z1) - rng.uniform(0, 3), from_int64(lo.z2) - rng.uniform(0, 3)};
    const RationalPair d{make_rational(rng.uniform(1, 9), rng.uniform(1, 4)),
                         make_rational(rng.uniform(1, 9), rng.uniform(1, 4))};
    SingleObjectiveIP ip(in, MinAlphaObjective{s, d});
    SolveOutcome out = solve(ip);
    ASSERT_EQ(out.status, SolveStatus::Optimal);
    Rational best;
    bool first = true;
    for (const auto& [x, z] : all) {
      Rational v = objective_value(ip, x);
      if (first || v < best) best = v;
      first = false;
    }
    EXPECT_EQ(out.value, best) << in.name;
    const Point z = evaluate_objectives(in, out.x);
    const RationalPair y{s.first + out.value * d.first, s.second + out.value * d.second};
    EXPECT_LE(from_int64(z.z1), y.first);
    EXPECT_LE(from_int64(z.z2), y.second);
    EXPECT_TRUE(from_int64(z.z1) == y.first || from_int64(z.z2) == y.second);
  }
}

TEST(SolveProperty, RelaxationNeverExceedsOptimum) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    BoipInstance in = small_instance(seed);
    for (int comp = 1; comp <= 2; ++comp) {
      SingleObjectiveIP ip = linear(in, comp);
      SolveOutcome out = solve(ip);
      auto relax = lp_relaxation_value(ip);
      if (out.status != SolveStatus::Optimal) continue;
      ASSERT_TRUE(relax.has_value());
      EXPECT_LE(*relax, out.value);
    }
  }
}

TEST(SolveProperty, DeterministicTieBreak) {
  BoipInstance in = instance_from_points({{1, 1}, {1, 1}, {1, 1}});
  SolveOutcome a = solve(linear(in, 1));
  SolveOutcome b = solve(linear(in, 1));
  EXPECT_EQ(a.x, b.x);
}

TEST(SolveProperty, NodeBudgetLeavesIncumbentFeasible) {
  BoipInstance in = gen_instance(ProblemKind::knapsack, 40, 3);
  SolveOutcome out = solve(linear(in, 1), SolverBudget::nodes(5));
  if (out.status == SolveStatus::TimedOut && out.incumbent) { EXPECT_TRUE(is_feasible(in, out.incumbent->x)); }
  SolveOutcome full = solve(linear(in, 1));
  EXPECT_EQ(full.status, SolveStatus::Optimal);
}
