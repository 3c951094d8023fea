#pragma once

#include "boip/ipsolve.hpp"
#include "boip/model.hpp"
#include "boip/rational.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace boip {

struct EpsilonPolicy {
  Rational epsilon{1, 2};

  void validate() const {
    if (!(epsilon > 0 && epsilon < 1)) throw PreconditionError("epsilon must lie strictly between 0 and 1");
  }
};

namespace detail {

inline std::int64_t saturate(__int128 v) {
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (v < lo) return lo;
  if (v > hi) return hi;
  return static_cast<std::int64_t>(v);
}

inline std::int64_t saturate(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v < 0 ? std::numeric_limits<std::int64_t>::min() : std::numeric_limits<std::int64_t>::max();
}

}  // namespace detail

/// The row z_component(x) rel bound, written over raw x.
inline LinearRow objective_row(const BoipInstance& instance, int component, Relation rel, std::int64_t bound) {
  const ObjectiveRow& obj = instance.objective(component);
  return {obj.coeffs, rel, detail::saturate(static_cast<__int128>(bound) - obj.offset)};
}

inline LinearRow objective_row(const BoipInstance& instance, int component, Relation rel, const BigInt& bound) {
  const ObjectiveRow& obj = instance.objective(component);
  return {obj.coeffs, rel, detail::saturate(bound - static_cast<long>(obj.offset))};
}

/// Integer upper bound equivalent to z <= corner - eps for integer z.
inline BigInt tightened_bound(const Rational& corner, const EpsilonPolicy& eps) {
  return floor_of(corner - eps.epsilon);
}

inline void check_direction(const RationalPair& d) {
  if (sgn(d.first) <= 0 || sgn(d.second) <= 0)
    throw PreconditionError("direction must be strictly positive, got (" + to_string(d.first) + "," +
                            to_string(d.second) + ")");
}

inline void check_box(const Box& box) {
  if (!box.well_formed()) throw PreconditionError("malformed box");
}

inline SingleObjectiveIP build_ps(const BoipInstance& instance, const Box& box, const RationalPair& d,
                                  const EpsilonPolicy& eps = {}) {
  eps.validate();
  check_direction(d);
  check_box(box);
  std::vector<LinearRow> rows{objective_row(instance, 1, Relation::LE, tightened_bound(box.p.first, eps)),
                              objective_row(instance, 2, Relation::LE, tightened_bound(box.t.second, eps))};
  return SingleObjectiveIP(instance, MinAlphaObjective{box.s, d}, std::move(rows), "R(b,d)");
}

/// component 1: min z2 with z1 held at z1(xb); component 2: the mirror image.
inline SingleObjectiveIP build_stage2(const BoipInstance& instance, const Assignment& xb, int component) {
  if (component != 1 && component != 2) throw PreconditionError("component must be 1 or 2");
  const Point zb = evaluate_objectives(instance, xb);
  const int other = 3 - component;
  const ObjectiveRow& obj = instance.objective(other);
  std::vector<LinearRow> rows{objective_row(instance, component, Relation::EQ, component == 1 ? zb.z1 : zb.z2)};
  return SingleObjectiveIP(instance, LinearObjective{obj.coeffs, obj.offset, 1}, std::move(rows),
                           component == 1 ? "P1" : "P2");
}

inline SingleObjectiveIP build_s_model(const BoipInstance& instance, const Assignment& xb) {
  const Point zb = evaluate_objectives(instance, xb);
  const auto& c1 = instance.objectives[0];
  const auto& c2 = instance.objectives[1];
  LinearObjective sum{std::vector<std::int64_t>(instance.n), c1.offset + c2.offset, 1};
  for (std::size_t j = 0; j < instance.n; ++j) sum.coeffs[j] = c1.coeffs[j] + c2.coeffs[j];
  std::vector<LinearRow> rows{objective_row(instance, 1, Relation::LE, zb.z1),
                              objective_row(instance, 2, Relation::LE, zb.z2)};
  return SingleObjectiveIP(instance, std::move(sum), std::move(rows), "S");
}

/// min w z1 + (1-w) z2 over the box, with w = a/b scaled to a c1 + (b-a) c2.
inline SingleObjectiveIP build_ws(const BoipInstance& instance, const Box& box, const Rational& w,
                                  const EpsilonPolicy& eps = {}) {
  eps.validate();
  check_box(box);
  if (!(w > 0 && w < 1)) throw PreconditionError("weight must lie strictly between 0 and 1, got " + to_string(w));
  const BigInt a = w.get_num();
  const BigInt b = w.get_den();
  const BigInt a2 = b - a;
  const auto& c1 = instance.objectives[0];
  const auto& c2 = instance.objectives[1];
  auto combine = [&](std::int64_t u, std::int64_t v) {
    BigInt r = a * static_cast<long>(u) + a2 * static_cast<long>(v);
    if (!r.fits_slong_p() || abs(r) >= (BigInt(1) << 62)) throw PreconditionError("weighted objective overflows");
    return static_cast<std::int64_t>(r.get_si());
  };
  LinearObjective obj{std::vector<std::int64_t>(instance.n), combine(c1.offset, c2.offset), b};
  BigInt total = 0;
  for (std::size_t j = 0; j < instance.n; ++j) {
    obj.coeffs[j] = combine(c1.coeffs[j], c2.coeffs[j]);
    total += obj.coeffs[j] < 0 ? BigInt(static_cast<long>(-obj.coeffs[j])) : BigInt(static_cast<long>(obj.coeffs[j]));
  }
  if (total >= (BigInt(1) << 62)) throw PreconditionError("weighted objective overflows");
  std::vector<LinearRow> rows{objective_row(instance, 1, Relation::LE, tightened_bound(box.p.first, eps)),
                              objective_row(instance, 2, Relation::LE, tightened_bound(box.t.second, eps))};
  return SingleObjectiveIP(instance, std::move(obj), std::move(rows), "WS(b,w)");
}

/// min of the other objective subject to z_bound <= level and z_other <= other_bound.
inline SingleObjectiveIP build_eps_constraint(const BoipInstance& instance, std::int64_t level, int bound_component,
                                              std::int64_t other_bound) {
  if (bound_component != 1 && bound_component != 2) throw PreconditionError("component must be 1 or 2");
  const int other = 3 - bound_component;
  const ObjectiveRow& obj = instance.objective(other);
  std::vector<LinearRow> rows{objective_row(instance, bound_component, Relation::LE, level),
                              objective_row(instance, other, Relation::LE, other_bound)};
  return SingleObjectiveIP(instance, LinearObjective{obj.coeffs, obj.offset, 1}, std::move(rows), "eps");
}

}  // namespace boip
