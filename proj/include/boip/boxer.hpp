#pragma once

#include "boip/ipsolve.hpp"
#include "boip/model.hpp"
#include "boip/rational.hpp"
#include "boip/scalarize.hpp"

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boip {

enum class DirectionPolicy { Fixed, Changing, Nadir };
enum class SplitRule { UseN, UseY };
enum class SecondStage { P1P2, SModel };
enum class BoxOrder { FIFO, LargestFirst };

struct CornerPoints {
  Point t0;  // lexmin(z1, z2)
  Point p0;  // lexmin(z2, z1)
  Point ideal;
  Point nadir;
};

struct IterationRecord {
  std::uint64_t index = 0;
  Box box;
  RationalPair direction;
  SolveStatus status = SolveStatus::Infeasible;
  bool retried = false;
  std::optional<Rational> alpha;
  std::optional<RationalPair> yb;
  std::optional<Point> nb;
  bool equal1 = false;
  bool equal2 = false;
  bool c_case = false;
  bool c2_case = false;
  std::vector<Point> added;
  std::uint64_t eliminated = 0;
  std::size_t queue_size = 0;
};

template <class B>
class BasicBoxQueue {
 public:
  struct Entry {
    B box;
    std::uint64_t seq;
  };

  void push(B box) { entries_.push_back({std::move(box), next_seq_++}); }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::deque<Entry>& entries() const { return entries_; }

  B take(std::size_t index) {
    B b = std::move(entries_[index].box);
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(index));
    return b;
  }

 private:
  std::deque<Entry> entries_;
  std::uint64_t next_seq_ = 0;
};

using BoxQueue = BasicBoxQueue<Box>;

/// Index of the box to explore next. Entries are kept in insertion order, so
/// the first maximum is the earliest inserted.
template <class B>
std::size_t select_next_index(const BasicBoxQueue<B>& queue, BoxOrder order) {
  if (queue.empty()) throw PreconditionError("box queue is empty");
  if (order == BoxOrder::FIFO) return 0;
  const auto& e = queue.entries();
  std::size_t best = 0;
  Rational best_area = e[0].box.area();
  for (std::size_t i = 1; i < e.size(); ++i) {
    Rational a = e[i].box.area();
    if (a > best_area) {
      best = i;
      best_area = std::move(a);
    }
  }
  return best;
}

template <class B>
B select_next_box(BasicBoxQueue<B>& queue, BoxOrder order) {
  return queue.take(select_next_index(queue, order));
}

using IterationObserver = std::function<void(const IterationRecord&, const BoxQueue&, const Frontier&)>;

struct AlgoConfig {
  DirectionPolicy direction_policy = DirectionPolicy::Fixed;
  SplitRule split_rule = SplitRule::UseN;
  SecondStage second_stage = SecondStage::P1P2;
  BoxOrder box_order = BoxOrder::FIFO;
  EpsilonPolicy eps;
  std::optional<SolverBudget> per_model_budget;
  std::optional<double> global_wall_limit;
  std::optional<std::uint64_t> rbd_budget;
  bool elimination = true;
  SolverOptions solver;
  IterationObserver observer;

  /// FN, FY, CN, CY, NN, NY.
  static AlgoConfig variant(std::string_view tag) {
    if (tag.size() != 2) throw PreconditionError("unknown variant '" + std::string(tag) + "'");
    AlgoConfig c;
    switch (tag[0]) {
      case 'F': c.direction_policy = DirectionPolicy::Fixed; break;
      case 'C': c.direction_policy = DirectionPolicy::Changing; break;
      case 'N': c.direction_policy = DirectionPolicy::Nadir; break;
      default: throw PreconditionError("unknown variant '" + std::string(tag) + "'");
    }
    switch (tag[1]) {
      case 'N': c.split_rule = SplitRule::UseN; break;
      case 'Y': c.split_rule = SplitRule::UseY; break;
      default: throw PreconditionError("unknown variant '" + std::string(tag) + "'");
    }
    return c;
  }

  std::string tag() const {
    std::string t;
    t += direction_policy == DirectionPolicy::Fixed ? 'F' : direction_policy == DirectionPolicy::Changing ? 'C' : 'N';
    t += split_rule == SplitRule::UseN ? 'N' : 'Y';
    if (per_model_budget) t = "TL-" + t;
    if (second_stage == SecondStage::SModel) t += "-S";
    if (box_order == BoxOrder::LargestFirst) t += "-BO";
    return t;
  }
};

struct RunStats {
  std::uint64_t n_nondominated = 0;
  std::uint64_t n_ip = 0;
  std::uint64_t n_rbd = 0;
  std::uint64_t C = 0;
  std::uint64_t C2 = 0;
  std::uint64_t E = 0;
  std::uint64_t tl_retries = 0;
  std::uint64_t nodes = 0;
  std::vector<double> per_model_times;
  double wall_seconds = 0.0;
};

struct RunResult {
  std::string algorithm;
  Frontier frontier;
  RunStats stats;
  bool completed = false;
  bool infeasible = false;
  bool solver_failure = false;
  std::string failure_message;
  std::optional<CornerPoints> corner_points;
  std::vector<IterationRecord> iteration_log;
};

inline RationalPair choose_direction(DirectionPolicy policy, const Box& box, const CornerPoints& corners) {
  RationalPair d;
  switch (policy) {
    case DirectionPolicy::Fixed: d = {Rational(1), Rational(1)}; break;
    case DirectionPolicy::Changing: d = {box.width(), box.height()}; break;
    case DirectionPolicy::Nadir:
      d = {from_int64(corners.p0.z1) - box.s.first, from_int64(corners.t0.z2) - box.s.second};
      break;
  }
  if (sgn(d.first) <= 0 || sgn(d.second) <= 0)
    throw PreconditionError("direction policy produced a nonpositive component");
  return d;
}

/// UseN keeps boxes with both extents > 1; UseY with both >= 1.
inline bool should_keep(const Box& box, SplitRule rule) {
  const Rational w = box.width();
  const Rational h = box.height();
  if (rule == SplitRule::UseN) return w > 1 && h > 1;
  return w >= 1 && h >= 1;
}

struct SplitBoxes {
  Box first;
  Box second;
};

/// First box b((c1_1, p2), p, c1) and second box b((t1, c2_2), c2, t), where
/// the corners c1, c2 are n1, n2 or, under UseY, y^b when that is tighter.
inline SplitBoxes split_box(const Box& box, const Point& n1, const Point& n2, const RationalPair& yb, SplitRule rule) {
  RationalPair c1 = n1.as_rational();
  RationalPair c2 = n2.as_rational();
  if (rule == SplitRule::UseY) {
    if (yb.first > c1.first) c1 = yb;
    if (yb.second > c2.second) c2 = yb;
  }
  return {Box::from_corners(box.p, c1), Box::from_corners(c2, box.t)};
}

/// Direction for the retry after a timed-out R(b,d): (d1, d2 - 1) when that
/// stays positive, otherwise d unchanged.
inline RationalPair tl_retry(const RationalPair& d) {
  if (d.second - 1 > 0) return {d.first, d.second - 1};
  return d;
}

inline std::int64_t expected_ip_count(const RunStats& s) {
  const auto N = static_cast<std::int64_t>(s.n_nondominated);
  return 3 * N + static_cast<std::int64_t>(s.C) - 3 * static_cast<std::int64_t>(s.C2) -
         static_cast<std::int64_t>(s.E) - 1;
}

inline bool verify_ip_identity(const RunStats& stats) {
  if (stats.n_nondominated < 2) throw PreconditionError("IP-count identity needs at least two nondominated points");
  return static_cast<std::int64_t>(stats.n_ip) == expected_ip_count(stats);
}

inline bool verify_ip_identity(const RunResult& result) {
  if (!result.completed) throw PreconditionError("IP-count identity checked on an incomplete run");
  return verify_ip_identity(result.stats);
}

namespace detail {

struct Truncated {};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Budget and accounting shared by the box algorithms.
class RunContext {
 public:
  using Clock = std::chrono::steady_clock;

  RunContext(std::optional<double> wall_limit, SolverOptions options, RunStats& stats)
      : start_(Clock::now()), wall_limit_(wall_limit), options_(options), stats_(stats) {}

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  void check_wall() const {
    if (wall_limit_ && elapsed() >= *wall_limit_) throw Truncated{};
  }

  /// Solves one model and counts it. A timeout caused by the global budget
  /// unwinds the iteration; one caused by `local` is returned to the caller
  /// without being counted.
  SolveOutcome solve(const SingleObjectiveIP& ip, const std::optional<SolverBudget>& local = std::nullopt) {
    check_wall();
    SolverBudget budget;
    bool local_wall = false;
    if (local) budget = *local;
    if (wall_limit_) {
      const double remaining = *wall_limit_ - elapsed();
      if (!budget.wall_clock_limit || remaining <= *budget.wall_clock_limit) {
        budget.wall_clock_limit = remaining;
      } else {
        local_wall = true;
      }
    } else if (budget.wall_clock_limit) {
      local_wall = true;
    }
    SolveOutcome out;
    try {
      out = boip::solve(ip, budget, options_);
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::exception& e) {
      throw SolverFailure(std::string(ip.label) + ": " + e.what());
    }
    stats_.nodes += out.nodes;
    if (out.status == SolveStatus::TimedOut) {
      const bool by_local_nodes = local && local->node_limit && out.nodes >= *local->node_limit;
      if (!(by_local_nodes || local_wall)) throw Truncated{};
      if (wall_limit_ && elapsed() >= *wall_limit_) throw Truncated{};
      return out;
    }
    ++stats_.n_ip;
    stats_.per_model_times.push_back(out.seconds);
    return out;
  }

  /// Two-stage lexicographic minimum, counted as two models.
  std::optional<Assignment> lexmin(const BoipInstance& instance, int first) {
    const int second = 3 - first;
    const ObjectiveRow& f = instance.objective(first);
    const ObjectiveRow& s = instance.objective(second);
    SolveOutcome a = solve(SingleObjectiveIP(instance, LinearObjective{f.coeffs, f.offset, 1}, {}, "lexmin-1"));
    if (a.status != SolveStatus::Optimal) return std::nullopt;
    SingleObjectiveIP stage2(instance, LinearObjective{s.coeffs, s.offset, 1},
                             {objective_row(instance, first, Relation::EQ, to_int64(a.value))}, "lexmin-2");
    SolveOutcome b = solve(stage2);
    if (b.status != SolveStatus::Optimal) throw SolverFailure("second lexicographic stage lost feasibility");
    return b.x;
  }

  SolveOutcome solve_optimal(const SingleObjectiveIP& ip) {
    SolveOutcome out = solve(ip);
    if (out.status != SolveStatus::Optimal)
      throw SolverFailure(ip.label + " model unexpectedly " + to_string(out.status));
    return out;
  }

 private:
  Clock::time_point start_;
  std::optional<double> wall_limit_;
  SolverOptions options_;
  RunStats& stats_;
};

/// Shared skeleton: two lexmins, the initial box, then `step` on each box
/// until the queue empties or a limit hits. `step` fills the record, stages
/// frontier updates and children; they are committed only if it returns.
template <class B, class Initial, class Keep, class Step, class Observer>
RunResult run_boxes(const BoipInstance& instance, std::string algorithm, std::optional<double> wall_limit,
                    std::optional<std::uint64_t> probe_budget, SolverOptions options, BoxOrder order,
                    Initial&& initial, Keep&& keep, Step&& step, Observer&& observer) {
  RunResult result;
  result.algorithm = std::move(algorithm);
  instance.validate();
  RunStats& stats = result.stats;
  RunContext ctx(wall_limit, options, stats);
  Frontier frontier;
  BasicBoxQueue<B> queue;
  try {
    std::optional<Assignment> xt = ctx.lexmin(instance, 1);
    if (!xt) {
      result.infeasible = true;
      result.completed = true;
      stats.wall_seconds = ctx.elapsed();
      return result;
    }
    std::optional<Assignment> xp = ctx.lexmin(instance, 2);
    if (!xp) throw SolverFailure("second lexmin infeasible on a feasible instance");
    CornerPoints corners;
    corners.t0 = evaluate_objectives(instance, *xt);
    corners.p0 = evaluate_objectives(instance, *xp);
    corners.ideal = {corners.t0.z1, corners.p0.z2};
    corners.nadir = {corners.p0.z1, corners.t0.z2};
    result.corner_points = corners;
    frontier.insert(corners.t0);
    frontier.insert(corners.p0);

    B first = initial(corners);
    if (keep(first)) queue.push(std::move(first));
    else ++stats.E;

    std::uint64_t index = 0;
    while (!queue.empty()) {
      if (probe_budget && stats.n_rbd >= *probe_budget) throw Truncated{};
      ctx.check_wall();
      const std::size_t at = select_next_index(queue, order);
      IterationRecord rec;
      rec.index = index;
      Frontier staged = frontier;
      std::vector<B> children;
      step(ctx, corners, queue.entries()[at].box, rec, staged, children);
      queue.take(at);
      ++index;
      ++stats.n_rbd;
      if (rec.retried) ++stats.tl_retries;
      if (rec.c_case) ++stats.C;
      if (rec.c2_case) ++stats.C2;
      frontier = std::move(staged);
      for (auto& child : children) {
        if (keep(child)) {
          queue.push(std::move(child));
        } else {
          ++stats.E;
          ++rec.eliminated;
        }
      }
      rec.queue_size = queue.size();
      observer(rec, queue, frontier);
      result.iteration_log.push_back(std::move(rec));
    }
    result.completed = true;
  } catch (const Truncated&) {
    result.completed = false;
  } catch (const SolverFailure& e) {
    result.completed = false;
    result.solver_failure = true;
    result.failure_message = e.what();
  }
  result.frontier = std::move(frontier);
  stats.n_nondominated = result.frontier.size();
  stats.wall_seconds = ctx.elapsed();
  return result;
}

}  // namespace detail

inline RunResult run(const BoipInstance& instance, const AlgoConfig& config) {
  config.eps.validate();
  const SplitRule rule = config.split_rule;
  auto initial = [](const CornerPoints& c) { return Box::from_corners(c.p0.as_rational(), c.t0.as_rational()); };
  auto keep = [&](const Box& b) {
    if (config.elimination) return should_keep(b, rule);
    return sgn(b.width()) > 0 && sgn(b.height()) > 0;
  };
  auto step = [&](detail::RunContext& ctx, const CornerPoints& corners, const Box& box, IterationRecord& rec,
                  Frontier& frontier, std::vector<Box>& children) {
    rec.box = box;
    RationalPair d = choose_direction(config.direction_policy, box, corners);
    SolveOutcome r = ctx.solve(build_ps(instance, box, d, config.eps), config.per_model_budget);
    if (r.status == SolveStatus::TimedOut) {
      d = tl_retry(d);
      rec.retried = true;
      r = ctx.solve(build_ps(instance, box, d, config.eps));
    }
    rec.direction = d;
    rec.status = r.status;
    if (r.status == SolveStatus::Infeasible) return;

    const Rational& alpha = r.value;
    const RationalPair yb{box.s.first + alpha * d.first, box.s.second + alpha * d.second};
    const Point nb = evaluate_objectives(instance, r.x);
    rec.alpha = alpha;
    rec.yb = yb;
    rec.nb = nb;
    rec.equal1 = yb.first == from_int64(nb.z1);
    rec.equal2 = yb.second == from_int64(nb.z2);

    Point n1 = nb, n2 = nb;
    if (config.second_stage == SecondStage::SModel) {
      n1 = n2 = evaluate_objectives(instance, ctx.solve_optimal(build_s_model(instance, r.x)).x);
    } else {
      if (rec.equal1) n1 = evaluate_objectives(instance, ctx.solve_optimal(build_stage2(instance, r.x, 1)).x);
      if (rec.equal2) n2 = evaluate_objectives(instance, ctx.solve_optimal(build_stage2(instance, r.x, 2)).x);
    }

    const bool add1 = n1.z2 < nb.z2;
    const bool add2 = n2.z1 < nb.z1;
    auto add = [&](const Point& p) {
      if (frontier.insert(p) == Frontier::Insert::added) rec.added.push_back(p);
    };
    if (add1) add(n1);
    if (add2) add(n2);
    if (!add1 && !add2) add(nb);
    if (config.second_stage == SecondStage::P1P2 && rec.equal1 && rec.equal2) {
      rec.c_case = true;
      rec.c2_case = add1 && add2;
    }

    SplitBoxes split = split_box(box, n1, n2, yb, rule);
    children.push_back(std::move(split.first));
    children.push_back(std::move(split.second));
  };
  auto observer = [&](const IterationRecord& rec, const BoxQueue& queue, const Frontier& frontier) {
    if (config.observer) config.observer(rec, queue, frontier);
  };
  return detail::run_boxes<Box>(instance, config.tag(), config.global_wall_limit, config.rbd_budget, config.solver,
                                config.box_order, initial, keep, step, observer);
}

}  // namespace boip
