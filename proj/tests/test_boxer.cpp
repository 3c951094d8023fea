#include "support.hpp"

#include <gtest/gtest.h>

using namespace boip;
using namespace boip::testing;

namespace {

const char* kVariants[] = {"FN", "FY", "CN", "CY", "NN", "NY"};

Box make_box(std::int64_t s1, std::int64_t s2, std::int64_t p1, std::int64_t t2) {
  return Box{{from_int64(s1), from_int64(s2)}, {from_int64(p1), from_int64(s2)}, {from_int64(s1), from_int64(t2)}};
}

bool inside(const Point& z, const Box& b) {
  const RationalPair q = z.as_rational();
  return q.first >= b.s.first && q.second >= b.s.second && q.first < b.p.first && q.second < b.t.second;
}

bool interiors_overlap(const Box& a, const Box& b) {
  auto lo1 = std::max(a.s.first, b.s.first), hi1 = std::min(a.p.first, b.p.first);
  auto lo2 = std::max(a.s.second, b.s.second), hi2 = std::min(a.t.second, b.t.second);
  return lo1 < hi1 && lo2 < hi2;
}

}  // namespace

TEST(Run, ThreePointFrontier) {
  BoipInstance in = instance_from_points({{0, 3}, {1, 1}, {3, 0}});
  RunResult r = run(in, AlgoConfig::variant("FN"));
  EXPECT_TRUE(r.completed);
  EXPECT_EQ(r.frontier, brute_force_frontier(in));
  EXPECT_EQ(r.frontier.size(), 3u);
  EXPECT_TRUE(verify_ip_identity(r));
}

TEST(Run, SingleFeasiblePoint) {
  BoipInstance in = instance_from_points({{2, 2}, {5, 5}});
  RunResult r = run(in, AlgoConfig::variant("FN"));
  EXPECT_TRUE(r.completed);
  EXPECT_EQ(r.frontier.size(), 1u);
  EXPECT_EQ(r.stats.n_ip, 4u);
  EXPECT_EQ(r.stats.n_rbd, 0u);
  EXPECT_THROW(verify_ip_identity(r), PreconditionError);
}

TEST(Run, ZeroBudgetGivesCorners) {
  BoipInstance in = instance_from_points({{0, 3}, {1, 1}, {3, 0}});
  AlgoConfig c = AlgoConfig::variant("CN");
  c.rbd_budget = 0;
  RunResult r = run(in, c);
  EXPECT_FALSE(r.completed);
  EXPECT_EQ(r.frontier.points(), (std::vector<Point>{{0, 3}, {3, 0}}));
  EXPECT_THROW(verify_ip_identity(r), PreconditionError);
}

TEST(Run, InfeasibleInstance) {
  BoipInstance in;
  in.n = 2;
  in.objectives[0].coeffs = {1, 2};
  in.objectives[1].coeffs = {2, 1};
  in.constraints.push_back({{1, 1}, Relation::GE, 3});
  RunResult r = run(in, AlgoConfig::variant("FN"));
  EXPECT_TRUE(r.infeasible);
  EXPECT_TRUE(r.frontier.empty());
}

TEST(Run, UnknownVariant) {
  EXPECT_THROW(AlgoConfig::variant("XN"), PreconditionError);
  EXPECT_THROW(AlgoConfig::variant("FNN"), PreconditionError);
  EXPECT_EQ(AlgoConfig::variant("CY").tag(), "CY");
}

TEST(ChooseDirection, Policies) {
  CornerPoints c{};
  c.p0 = {20, 0};
  c.t0 = {0, 30};
  Box b = make_box(5, 5, 12, 9);
  EXPECT_EQ(choose_direction(DirectionPolicy::Fixed, b, c), (RationalPair{Rational(1), Rational(1)}));
  EXPECT_EQ(choose_direction(DirectionPolicy::Changing, b, c), (RationalPair{Rational(7), Rational(4)}));
  EXPECT_EQ(choose_direction(DirectionPolicy::Nadir, b, c), (RationalPair{Rational(15), Rational(25)}));
  EXPECT_THROW(choose_direction(DirectionPolicy::Changing, make_box(0, 0, 0, 4), c), PreconditionError);
}

TEST(SplitBox, UseN) {
  Box b = make_box(0, 0, 10, 10);
  SplitBoxes s = split_box(b, {4, 5}, {4, 5}, {Rational(4), Rational(5)}, SplitRule::UseN);
  EXPECT_EQ(s.first, make_box(4, 0, 10, 5));
  EXPECT_EQ(s.second, make_box(0, 5, 4, 10));
}

TEST(SplitBox, UseYTakesTighterCorner) {
  Box b = make_box(0, 0, 10, 10);
  const RationalPair yb{make_rational(9, 2), make_rational(9, 2)};
  SplitBoxes s = split_box(b, {4, 7}, {4, 7}, yb, SplitRule::UseY);
  EXPECT_EQ(s.first.s.first, make_rational(9, 2));
  EXPECT_EQ(s.first.s.second, 0);
  EXPECT_EQ(s.second.s.second, 7);
}

TEST(SplitBox, CornerPointGivesEmptyBox) {
  Box b = make_box(0, 0, 10, 10);
  SplitBoxes s = split_box(b, {0, 10}, {0, 10}, {Rational(0), Rational(10)}, SplitRule::UseN);
  EXPECT_EQ(s.second.width(), 0);
  EXPECT_FALSE(should_keep(s.second, SplitRule::UseN));
  EXPECT_FALSE(should_keep(s.second, SplitRule::UseY));
}

TEST(ShouldKeep, Rules) {
  EXPECT_FALSE(should_keep(make_box(0, 0, 1, 5), SplitRule::UseN));
  EXPECT_TRUE(should_keep(make_box(0, 0, 1, 5), SplitRule::UseY));
  EXPECT_TRUE(should_keep(make_box(0, 0, 2, 2), SplitRule::UseN));
  EXPECT_TRUE(should_keep(make_box(0, 0, 2, 2), SplitRule::UseY));
}

TEST(SelectNextBox, Orders) {
  BoxQueue q;
  q.push(make_box(0, 0, 2, 2));
  q.push(make_box(0, 0, 3, 3));
  q.push(make_box(5, 5, 8, 8));
  EXPECT_EQ(select_next_index(q, BoxOrder::FIFO), 0u);
  EXPECT_EQ(select_next_index(q, BoxOrder::LargestFirst), 1u);
  EXPECT_EQ(select_next_box(q, BoxOrder::LargestFirst), make_box(0, 0, 3, 3));
  EXPECT_EQ(select_next_box(q, BoxOrder::LargestFirst), make_box(5, 5, 8, 8));
  EXPECT_EQ(select_next_box(q, BoxOrder::FIFO), make_box(0, 0, 2, 2));
  EXPECT_THROW(select_next_box(q, BoxOrder::FIFO), PreconditionError);
}

TEST(TlRetry, Direction) {
  EXPECT_EQ(tl_retry({Rational(10), Rational(10)}), (RationalPair{Rational(10), Rational(9)}));
  EXPECT_EQ(tl_retry({Rational(10), Rational(1)}), (RationalPair{Rational(10), Rational(1)}));
}

TEST(IpIdentity, Arithmetic) {
  RunStats s;
  s.n_nondominated = 5;
  s.C = 1;
  s.E = 2;
  s.n_ip = 13;
  EXPECT_EQ(expected_ip_count(s), 13);
  EXPECT_TRUE(verify_ip_identity(s));
  RunStats corners;
  corners.n_nondominated = 2;
  corners.E = 1;
  corners.n_ip = 4;
  EXPECT_TRUE(verify_ip_identity(corners));
}

TEST(IpIdentity, TwoPointInstance) {
  BoipInstance in = instance_from_points({{0, 1}, {1, 0}, {1, 1}});
  RunResult r = run(in, AlgoConfig::variant("FN"));
  EXPECT_EQ(r.frontier.size(), 2u);
  EXPECT_EQ(r.stats.n_ip, 4u);
  EXPECT_EQ(r.stats.E, 1u);
  EXPECT_TRUE(verify_ip_identity(r));
}

TEST(RunProperty, ExactAndIdentityAllVariants) {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    BoipInstance in = small_instance(seed);
    const Frontier oracle = brute_force_frontier(in);
    for (const char* v : kVariants) {
      for (SecondStage stage : {SecondStage::P1P2, SecondStage::SModel}) {
        AlgoConfig c = AlgoConfig::variant(v);
        c.second_stage = stage;
        RunResult r = run(in, c);
        ASSERT_TRUE(r.completed) << in.name << " " << c.tag();
        EXPECT_EQ(r.frontier, oracle) << in.name << " " << c.tag();
        if (r.frontier.size() >= 2) { EXPECT_TRUE(verify_ip_identity(r)) << in.name << " " << c.tag(); }
        if (stage == SecondStage::SModel) { EXPECT_EQ(r.stats.C, 0u); }
      }
    }
  }
}

TEST(RunProperty, Prop3BoundsWithoutElimination) {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    BoipInstance in = small_instance(seed);
    const Frontier oracle = brute_force_frontier(in);
    for (const char* v : kVariants) {
      AlgoConfig c = AlgoConfig::variant(v);
      c.elimination = false;
      RunResult r = run(in, c);
      ASSERT_TRUE(r.completed);
      EXPECT_EQ(r.frontier, oracle) << in.name << " " << v;
      const std::uint64_t N = r.stats.n_nondominated;
      if (N < 2) continue;
      EXPECT_TRUE(verify_ip_identity(r));
      EXPECT_LE(2 * N + 1, r.stats.n_ip) << in.name << " " << v;
      EXPECT_LE(r.stats.n_ip, 4 * N - 3) << in.name << " " << v;
      EXPECT_LE(r.stats.C2, r.stats.C);
      EXPECT_LE(r.stats.C + r.stats.C2, N - 2);
    }
  }
}

TEST(RunProperty, QueueBoxesDisjointAndCoverUnfound) {
  for (std::uint64_t seed = 0; seed < 18; ++seed) {
    BoipInstance in = small_instance(seed);
    const Frontier oracle = brute_force_frontier(in);
    for (const char* v : kVariants) {
      AlgoConfig c = AlgoConfig::variant(v);
      std::uint64_t violations = 0;
      c.observer = [&](const IterationRecord& rec, const BoxQueue& q, const Frontier& f) {
        const auto& e = q.entries();
        for (std::size_t i = 0; i < e.size(); ++i)
          for (std::size_t j = i + 1; j < e.size(); ++j)
            if (interiors_overlap(e[i].box, e[j].box)) ++violations;
        for (const auto& z : oracle.points()) {
          if (f.contains(z)) continue;
          bool covered = false;
          for (const auto& entry : e) covered = covered || inside(z, entry.box);
          if (!covered) ++violations;
        }
        if (rec.status == SolveStatus::Optimal && !(rec.equal1 || rec.equal2)) ++violations;
      };
      RunResult r = run(in, c);
      EXPECT_EQ(violations, 0u) << in.name << " " << v;
      EXPECT_EQ(r.frontier, oracle);
    }
  }
}

TEST(RunProperty, LargestFirstOrder) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    BoipInstance in = small_instance(seed);
    AlgoConfig c = AlgoConfig::variant("CN");
    c.box_order = BoxOrder::LargestFirst;
    EXPECT_EQ(c.tag(), "CN-BO");
    RunResult r = run(in, c);
    EXPECT_EQ(r.frontier, brute_force_frontier(in)) << in.name;
    if (r.frontier.size() >= 2) { EXPECT_TRUE(verify_ip_identity(r)); }
  }
}

TEST(RunProperty, TimeLimitRetryStaysExact) {
  std::uint64_t retries = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    BoipInstance in = gen_instance(ProblemKind::knapsack, 14, seed);
    for (const char* v : {"FN", "CN", "NY"}) {
      AlgoConfig c = AlgoConfig::variant(v);
      c.per_model_budget = SolverBudget::nodes(1);
      RunResult r = run(in, c);
      ASSERT_TRUE(r.completed);
      EXPECT_EQ(r.frontier, brute_force_frontier(in)) << in.name << " " << v;
      EXPECT_EQ(c.tag().substr(0, 3), "TL-");
      retries += r.stats.tl_retries;
      std::uint64_t logged = 0;
      for (const auto& rec : r.iteration_log) logged += rec.retried ? 1 : 0;
      EXPECT_EQ(logged, r.stats.tl_retries);
    }
  }
  EXPECT_GT(retries, 0u);
}

TEST(RunProperty, BudgetPrefixIsSubsetOfFrontier) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    BoipInstance in = small_instance(seed);
    const Frontier oracle = brute_force_frontier(in);
    for (std::uint64_t budget = 0; budget < 4; ++budget) {
      AlgoConfig c = AlgoConfig::variant("CN");
      c.rbd_budget = budget;
      RunResult r = run(in, c);
      EXPECT_TRUE(r.frontier.subset_of(oracle));
      EXPECT_LE(r.stats.n_rbd, budget);
    }
  }
}

TEST(Diagonal, EliminatesNMinusOneBoxes) {
  for (int a : {3, 4, 5}) {
    BoipInstance in = diagonal_instance(a);
    RunResult r = run(in, AlgoConfig::variant("FN"));
    ASSERT_TRUE(r.completed);
    EXPECT_EQ(r.frontier.size(), (std::size_t{1} << a) + 1);
    EXPECT_EQ(r.stats.E, r.stats.n_nondominated - 1) << "a=" << a;
    EXPECT_TRUE(verify_ip_identity(r));
  }
}
