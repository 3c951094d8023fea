#pragma once

#include "boip/ipsolve.hpp"
#include "boip/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace boip {

namespace detail {

inline std::uint64_t factorial_capped(std::size_t k, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    if (f > cap / i) return cap + 1;
    f *= i;
  }
  return f;
}

inline std::size_t assignment_side(const BoipInstance& instance) {
  auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(instance.n))));
  return k * k == instance.n ? k : 0;
}

}  // namespace detail

/// Exact frontier by exhaustive enumeration. Assignment instances with k*k
/// variables (x_ij at index i*k+j) are enumerated over the k! permutations.
inline Frontier brute_force_frontier(const BoipInstance& instance, std::uint64_t cap = std::uint64_t{1} << 20) {
  instance.validate();
  std::vector<Point> points;
  const std::size_t k = instance.kind == ProblemKind::assignment ? detail::assignment_side(instance) : 0;
  if (k > 0) {
    if (detail::factorial_capped(k, cap) > cap) throw PreconditionError("enumeration exceeds cap");
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Assignment x(instance.n, 0);
    do {
      std::fill(x.begin(), x.end(), 0);
      for (std::size_t i = 0; i < k; ++i) x[i * k + perm[i]] = 1;
      if (is_feasible(instance, x)) points.push_back(evaluate_objectives(instance, x));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return filter_nondominated(std::move(points));
  }
  for_each_feasible(instance, cap, [&](const Assignment&, const Point& z) { points.push_back(z); });
  return filter_nondominated(std::move(points));
}

}  // namespace boip
