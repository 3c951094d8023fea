#pragma once

#include "boip/boxer.hpp"
#include "boip/ipsolve.hpp"
#include "boip/model.hpp"
#include "boip/scalarize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boip {

enum class WeightPolicy { FW, CW, NW };

inline const char* to_string(WeightPolicy p) {
  switch (p) {
    case WeightPolicy::FW: return "FW";
    case WeightPolicy::CW: return "CW";
    case WeightPolicy::NW: return "NW";
  }
  return "?";
}

inline WeightPolicy parse_weight_policy(std::string_view s) {
  if (s == "FW") return WeightPolicy::FW;
  if (s == "CW") return WeightPolicy::CW;
  if (s == "NW") return WeightPolicy::NW;
  throw PreconditionError("unknown weight policy '" + std::string(s) + "'");
}

struct WsConfig {
  WeightPolicy weight_policy = WeightPolicy::FW;
  EpsilonPolicy eps;
  std::optional<double> global_wall_limit;
  std::optional<std::uint64_t> rbd_budget;
  bool elimination = true;
  SolverOptions solver;
};

struct BaConfig {
  std::optional<double> global_wall_limit;
  std::optional<std::uint64_t> rbd_budget;
  SolverOptions solver;
};

inline Rational choose_weight(WeightPolicy policy, const Box& box, const CornerPoints& corners) {
  Rational w;
  switch (policy) {
    case WeightPolicy::FW: w = Rational(1, 2); break;
    case WeightPolicy::CW: w = box.height() / (box.width() + box.height()); break;
    case WeightPolicy::NW: {
      Rational a = from_int64(corners.p0.z1) - box.s.first;
      Rational b = from_int64(corners.t0.z2) - box.s.second;
      w = b / (a + b);
      break;
    }
  }
  if (!(w > 0 && w < 1)) throw PreconditionError("weight policy produced a weight outside (0,1)");
  return w;
}

inline RunResult run_ws(const BoipInstance& instance, const WsConfig& config) {
  config.eps.validate();
  auto initial = [](const CornerPoints& c) { return Box::from_corners(c.p0.as_rational(), c.t0.as_rational()); };
  auto keep = [&](const Box& b) {
    if (config.elimination) return should_keep(b, SplitRule::UseN);
    return sgn(b.width()) > 0 && sgn(b.height()) > 0;
  };
  auto step = [&](detail::RunContext& ctx, const CornerPoints& corners, const Box& box, IterationRecord& rec,
                  Frontier& frontier, std::vector<Box>& children) {
    rec.box = box;
    const Rational w = choose_weight(config.weight_policy, box, corners);
    rec.direction = {w, 1 - w};
    SolveOutcome r = ctx.solve(build_ws(instance, box, w, config.eps));
    rec.status = r.status;
    if (r.status != SolveStatus::Optimal) return;
    const Point n = evaluate_objectives(instance, r.x);
    rec.nb = n;
    if (frontier.insert(n) == Frontier::Insert::added) rec.added.push_back(n);
    SplitBoxes split = split_box(box, n, n, n.as_rational(), SplitRule::UseN);
    children.push_back(std::move(split.first));
    children.push_back(std::move(split.second));
  };
  auto observer = [](const IterationRecord&, const BoxQueue&, const Frontier&) {};
  return detail::run_boxes<Box>(instance, std::string("WS:") + to_string(config.weight_policy),
                                config.global_wall_limit, config.rbd_budget, config.solver, BoxOrder::FIFO, initial,
                                keep, step, observer);
}

/// Pair of adjacent known points, upper-left zl and lower-right zr, with
/// every unexplored point of the pair known to have z2 >= lo.
struct BaBox {
  Point zl;
  Point zr;
  std::int64_t lo = 0;

  Rational area() const { return from_int64(zr.z1 - zl.z1) * from_int64(zl.z2 - zr.z2); }
  Box as_box() const { return Box::from_corners(zr.as_rational(), zl.as_rational()); }
};

inline bool ba_alive(const BaBox& b) {
  return b.zr.z1 - b.zl.z1 > 1 && static_cast<__int128>(b.zl.z2) - 1 >= b.lo;
}

inline std::int64_t ba_level(const BaBox& b) {
  const __int128 sum = static_cast<__int128>(b.zl.z2) - 1 + b.lo;
  const __int128 half = sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
  return static_cast<std::int64_t>(half);
}

inline RunResult run_ba(const BoipInstance& instance, const BaConfig& config) {
  auto initial = [](const CornerPoints& c) { return BaBox{c.t0, c.p0, c.p0.z2 + 1}; };
  auto keep = [](const BaBox& b) { return ba_alive(b); };
  auto step = [&](detail::RunContext& ctx, const CornerPoints&, const BaBox& box, IterationRecord& rec,
                  Frontier& frontier, std::vector<BaBox>& children) {
    rec.box = box.as_box();
    const std::int64_t mu = ba_level(box);
    rec.direction = {from_int64(mu), from_int64(box.lo)};
    SolveOutcome first = ctx.solve(build_eps_constraint(instance, mu, 2, box.zr.z1 - 1));
    rec.status = first.status;
    if (first.status != SolveStatus::Optimal) {
      children.push_back(BaBox{box.zl, box.zr, mu + 1});
      return;
    }
    const Point n = evaluate_objectives(instance, ctx.solve_optimal(build_stage2(instance, first.x, 1)).x);
    rec.nb = n;
    if (frontier.insert(n) == Frontier::Insert::added) rec.added.push_back(n);
    children.push_back(BaBox{box.zl, n, mu + 1});
    children.push_back(BaBox{n, box.zr, box.lo});
  };
  auto observer = [](const IterationRecord&, const BasicBoxQueue<BaBox>&, const Frontier&) {};
  return detail::run_boxes<BaBox>(instance, "BA", config.global_wall_limit, config.rbd_budget, config.solver,
                                  BoxOrder::FIFO, initial, keep, step, observer);
}

}  // namespace boip
