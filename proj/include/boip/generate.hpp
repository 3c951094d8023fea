#pragma once

#include "boip/model.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace boip {

struct GenParams {
  std::int64_t value_lo = 1;  // profits (knapsack), costs (assignment), objective range (generic)
  std::int64_t value_hi = 100;
  std::int64_t weight_lo = 1;
  std::int64_t weight_hi = 100;
  std::size_t rows = 3;          // generic only
  std::int64_t coeff_range = 10;  // generic only: row coefficients in [-r, r]
};

/// Seeded source with a bounded draw that does not depend on the standard
/// library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw PreconditionError("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % range);
  }

 private:
  std::mt19937_64 eng_;
};

inline void check_gen_params(const GenParams& p) {
  if (p.value_lo > p.value_hi || p.weight_lo > p.weight_hi) throw PreconditionError("empty generator range");
  if (p.weight_lo < 0) throw PreconditionError("knapsack weights must be nonnegative");
  if (p.coeff_range < 0) throw PreconditionError("coefficient range must be nonnegative");
  constexpr std::int64_t kMax = std::int64_t{1} << 40;
  auto big = [&](std::int64_t v) { return v > kMax || v < -kMax; };
  if (big(p.value_lo) || big(p.value_hi) || big(p.weight_lo) || big(p.weight_hi) || big(p.coeff_range))
    throw PreconditionError("generator ranges limited to 2^40 in magnitude");
}

/// knapsack: size items, two max objectives, capacity floor(total weight / 2).
/// assignment: size x size agents/tasks, n = size^2, x_ij at index i*size+j.
/// generic: size variables, random rows satisfied by x = 0.
inline BoipInstance gen_instance(ProblemKind kind, std::size_t size, std::uint64_t seed, const GenParams& params = {}) {
  check_gen_params(params);
  if (size == 0) throw PreconditionError("instance size must be positive");
  if (size > 4096) throw PreconditionError("instance size too large");
  Rng rng(seed);
  BoipInstance in;
  in.kind = kind;
  switch (kind) {
    case ProblemKind::knapsack: {
      in.name = "knapsack-" + std::to_string(size) + "-" + std::to_string(seed);
      in.n = size;
      in.original_sense = {Sense::max, Sense::max};
      for (auto& obj : in.objectives) {
        obj.coeffs.resize(size);
        for (auto& c : obj.coeffs) c = -rng.uniform(params.value_lo, params.value_hi);
      }
      LinearRow cap{std::vector<std::int64_t>(size), Relation::LE, 0};
      std::int64_t total = 0;
      for (auto& w : cap.coeffs) {
        w = rng.uniform(params.weight_lo, params.weight_hi);
        total += w;
      }
      cap.rhs = total / 2;
      in.constraints.push_back(std::move(cap));
      break;
    }
    case ProblemKind::assignment: {
      if (size > 64) throw PreconditionError("assignment size too large");
      in.name = "assignment-" + std::to_string(size) + "-" + std::to_string(seed);
      const std::size_t k = size;
      in.n = k * k;
      for (auto& obj : in.objectives) {
        obj.coeffs.resize(in.n);
        for (auto& c : obj.coeffs) c = rng.uniform(params.value_lo, params.value_hi);
      }
      for (std::size_t i = 0; i < k; ++i) {
        LinearRow row{std::vector<std::int64_t>(in.n, 0), Relation::EQ, 1};
        for (std::size_t j = 0; j < k; ++j) row.coeffs[i * k + j] = 1;
        in.constraints.push_back(std::move(row));
      }
      for (std::size_t j = 0; j < k; ++j) {
        LinearRow col{std::vector<std::int64_t>(in.n, 0), Relation::EQ, 1};
        for (std::size_t i = 0; i < k; ++i) col.coeffs[i * k + j] = 1;
        in.constraints.push_back(std::move(col));
      }
      break;
    }
    case ProblemKind::generic: {
      in.name = "generic-" + std::to_string(size) + "-" + std::to_string(seed);
      in.n = size;
      for (auto& obj : in.objectives) {
        obj.coeffs.resize(size);
        for (auto& c : obj.coeffs) c = rng.uniform(-params.value_hi, params.value_hi);
      }
      for (std::size_t r = 0; r < params.rows; ++r) {
        LinearRow row{std::vector<std::int64_t>(size), Relation::LE, 0};
        std::int64_t mass = 0;
        for (auto& a : row.coeffs) {
          a = rng.uniform(-params.coeff_range, params.coeff_range);
          mass += a < 0 ? -a : a;
        }
        const std::int64_t slack = rng.uniform(0, mass / 2);
        if (rng.uniform(0, 1) == 0) {
          row.rhs = slack;
        } else {
          row.rel = Relation::GE;
          row.rhs = -slack;
        }
        in.constraints.push_back(std::move(row));
      }
      break;
    }
  }
  in.validate();
  return in;
}

}  // namespace boip
