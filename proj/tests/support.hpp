#pragma once

#include "boip/boip.hpp"

#include <vector>

namespace boip::testing {

/// Instance whose feasible objective set is exactly `points`: one binary per
/// point and a single row forcing exactly one of them on.
inline BoipInstance instance_from_points(const std::vector<Point>& points) {
  BoipInstance in;
  in.name = "points";
  in.n = points.size();
  in.constraints.push_back({std::vector<std::int64_t>(in.n, 1), Relation::EQ, 1});
  for (const auto& p : points) {
    in.objectives[0].coeffs.push_back(p.z1);
    in.objectives[1].coeffs.push_back(p.z2);
  }
  return in;
}

/// Feasible objective set {(i, 2^a - i) : 0 <= i <= 2^a}.
inline BoipInstance diagonal_instance(int a) {
  std::vector<Point> pts;
  const std::int64_t top = std::int64_t{1} << a;
  for (std::int64_t i = 0; i <= top; ++i) pts.push_back({i, top - i});
  return instance_from_points(pts);
}

inline Assignment one_hot(std::size_t n, std::size_t i) {
  Assignment x(n, 0);
  x[i] = 1;
  return x;
}

/// Small seeded instance of every kind, sized for the enumeration oracle.
inline BoipInstance small_instance(std::uint64_t seed) {
  switch (seed % 3) {
    case 0: return gen_instance(ProblemKind::knapsack, 6 + seed % 9, seed, GenParams{1, 30, 1, 30, 3, 10});
    case 1: return gen_instance(ProblemKind::assignment, 3 + seed % 4, seed, GenParams{1, 30, 1, 30, 3, 10});
    default: return gen_instance(ProblemKind::generic, 5 + seed % 8, seed, GenParams{1, 20, 1, 20, 3, 10});
  }
}

}  // namespace boip::testing
