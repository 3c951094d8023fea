#pragma once

#include "boip/model.hpp"
#include "boip/rational.hpp"
#include "boip/simplex.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace boip {

/// Minimize (coeffs . x + offset) / denominator.
struct LinearObjective {
  std::vector<std::int64_t> coeffs;
  std::int64_t offset = 0;
  BigInt denominator = 1;
};

/// Minimize alpha subject to z(x) <= reference + alpha * direction.
struct MinAlphaObjective {
  RationalPair reference;
  RationalPair direction;
};

using IpObjective = std::variant<LinearObjective, MinAlphaObjective>;

struct SingleObjectiveIP {
  std::reference_wrapper<const BoipInstance> base;
  std::vector<LinearRow> extra_rows;
  IpObjective objective;
  std::string label;

  SingleObjectiveIP(const BoipInstance& instance, IpObjective obj, std::vector<LinearRow> extra = {},
                    std::string name = {})
      : base(instance), extra_rows(std::move(extra)), objective(std::move(obj)), label(std::move(name)) {}

  const BoipInstance& instance() const { return base.get(); }
  bool is_min_alpha() const { return std::holds_alternative<MinAlphaObjective>(objective); }
};

struct SolverBudget {
  std::optional<double> wall_clock_limit;
  std::optional<std::uint64_t> node_limit;

  static SolverBudget unlimited() { return {}; }
  static SolverBudget nodes(std::uint64_t n) { return {std::nullopt, n}; }
  static SolverBudget seconds(double s) { return {s, std::nullopt}; }
};

enum class SolveStatus { Optimal, Infeasible, TimedOut };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimedOut: return "timed_out";
  }
  return "?";
}

struct Incumbent {
  Assignment x;
  Rational value;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  Assignment x;
  Rational value;
  std::optional<Incumbent> incumbent;
  std::uint64_t nodes = 0;
  std::uint64_t exact_fallbacks = 0;
  double seconds = 0.0;
};

enum class LpMode {
  fast,  // floating-point simplex, every prune certified by a rigorous bound
  exact  // rational simplex at every node
};

struct SolverOptions {
  LpMode lp_mode = LpMode::fast;
};

/// Objective value of a complete assignment, in the IP's own units.
inline Rational objective_value(const SingleObjectiveIP& ip, const Assignment& x) {
  if (const auto* lin = std::get_if<LinearObjective>(&ip.objective)) {
    return make_rational(BigInt(static_cast<long>(dot(lin->coeffs, x) + lin->offset)), lin->denominator);
  }
  const auto& ma = std::get<MinAlphaObjective>(ip.objective);
  const Point z = evaluate_objectives(ip.instance(), x);
  Rational a1 = (from_int64(z.z1) - ma.reference.first) / ma.direction.first;
  Rational a2 = (from_int64(z.z2) - ma.reference.second) / ma.direction.second;
  return a1 > a2 ? a1 : a2;
}

inline bool satisfies_all_rows(const SingleObjectiveIP& ip, const Assignment& x) {
  if (!is_feasible(ip.instance(), x)) return false;
  for (const auto& row : ip.extra_rows)
    if (!row_holds(row, dot(row.coeffs, x))) return false;
  return true;
}

namespace detail {

struct LinearBounds {
  BigInt lo;
  BigInt hi;
};

inline LinearBounds form_range(const std::vector<std::int64_t>& coeffs, std::int64_t offset) {
  LinearBounds b{BigInt(static_cast<long>(offset)), BigInt(static_cast<long>(offset))};
  for (auto c : coeffs) {
    if (c < 0) b.lo += static_cast<long>(c);
    else b.hi += static_cast<long>(c);
  }
  return b;
}

/// Depth-first branch and bound over binaries. Branches on the lowest-index
/// fractional variable, 0-branch first; keeps the first optimal leaf found.
class BranchAndBound {
 public:
  BranchAndBound(const SingleObjectiveIP& ip, SolverOptions options)
      : ip_(ip), inst_(ip.instance()), options_(options), n_(inst_.n) {
    validate();
    build_exact_lp();
    if (options_.lp_mode == LpMode::fast) build_float_lp();
  }

  SolveOutcome run(const SolverBudget& budget) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    SolveOutcome out;
    std::vector<std::vector<std::int8_t>> stack;
    stack.emplace_back(n_, static_cast<std::int8_t>(-1));
    bool exhausted = false;
    while (!stack.empty()) {
      if (budget.node_limit && out.nodes >= *budget.node_limit) {
        exhausted = true;
        break;
      }
      if (budget.wall_clock_limit &&
          std::chrono::duration<double>(Clock::now() - start).count() >= *budget.wall_clock_limit) {
        exhausted = true;
        break;
      }
      std::vector<std::int8_t> fix = std::move(stack.back());
      stack.pop_back();
      ++out.nodes;
      const int branch_var = process(fix, out);
      if (branch_var < 0) continue;
      auto one = fix;
      one[static_cast<std::size_t>(branch_var)] = 1;
      fix[static_cast<std::size_t>(branch_var)] = 0;
      stack.push_back(std::move(one));
      stack.push_back(std::move(fix));
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (exhausted) {
      out.status = SolveStatus::TimedOut;
      if (incumbent_) out.incumbent = Incumbent{incumbent_->x, incumbent_->value};
      return out;
    }
    if (!incumbent_) {
      out.status = SolveStatus::Infeasible;
      return out;
    }
    out.status = SolveStatus::Optimal;
    out.x = incumbent_->x;
    out.value = incumbent_->value;
    return out;
  }

  /// Exact optimal value of the root LP relaxation in objective units, or
  /// nullopt when the relaxation is infeasible.
  std::optional<Rational> root_relaxation_value() const {
    auto sol = lp::solve(exact_lp_);
    if (sol.status != lp::Status::optimal) return std::nullopt;
    return to_objective_units(sol.objective);
  }

 private:
  struct Candidate {
    Assignment x;
    Rational value;      // objective units
    Rational raw_value;  // LP objective units
  };

  void validate() const {
    inst_.validate();
    for (const auto& row : ip_.extra_rows)
      if (row.coeffs.size() != n_) throw PreconditionError("extra constraint has wrong length");
    if (const auto* ma = std::get_if<MinAlphaObjective>(&ip_.objective)) {
      if (sgn(ma->direction.first) <= 0 || sgn(ma->direction.second) <= 0)
        throw PreconditionError("direction must be strictly positive in both components");
    } else {
      const auto& lin = std::get<LinearObjective>(ip_.objective);
      if (lin.coeffs.size() != n_) throw PreconditionError("objective has wrong length");
      if (lin.denominator <= 0) throw PreconditionError("objective denominator must be positive");
    }
  }

  std::size_t num_cols() const { return ip_.is_min_alpha() ? n_ + 1 : n_; }

  template <class T>
  void add_integer_rows(lp::Problem<T>& lp) const {
    std::vector<T> coeffs(lp.num_cols, T(0));
    auto push = [&](const LinearRow& row) {
      for (std::size_t j = 0; j < n_; ++j) coeffs[j] = T(static_cast<long>(row.coeffs[j]));
      lp.add_row(coeffs, row.rel, T(static_cast<long>(row.rhs)));
    };
    for (const auto& row : inst_.constraints) push(row);
    for (const auto& row : ip_.extra_rows) push(row);
  }

  void build_exact_lp() {
    exact_lp_ = lp::Problem<Rational>(num_cols());
    add_integer_rows(exact_lp_);
    if (const auto* lin = std::get_if<LinearObjective>(&ip_.objective)) {
      for (std::size_t j = 0; j < n_; ++j) exact_lp_.cost[j] = from_int64(lin->coeffs[j]);
    } else {
      const auto& ma = std::get<MinAlphaObjective>(ip_.objective);
      exact_lp_.cost[n_] = 1;
      const RationalPair* ref = &ma.reference;
      const RationalPair* dir = &ma.direction;
      Rational lo_alpha, hi_alpha;
      for (int i = 0; i < 2; ++i) {
        const ObjectiveRow& obj = inst_.objectives[static_cast<std::size_t>(i)];
        const Rational& s = i == 0 ? ref->first : ref->second;
        const Rational& d = i == 0 ? dir->first : dir->second;
        std::vector<Rational> coeffs(num_cols(), Rational(0));
        for (std::size_t j = 0; j < n_; ++j) coeffs[j] = from_int64(obj.coeffs[j]);
        coeffs[n_] = -d;
        exact_lp_.add_row(coeffs, Relation::LE, s - from_int64(obj.offset));
        auto range = form_range(obj.coeffs, obj.offset);
        Rational lo = (Rational(range.lo) - s) / d;
        Rational hi = (Rational(range.hi) - s) / d;
        if (i == 0 || lo > lo_alpha) lo_alpha = lo;
        if (i == 0 || hi > hi_alpha) hi_alpha = hi;
      }
      alpha_lo_ = lo_alpha;
      alpha_hi_ = hi_alpha;
      exact_lp_.col_lower[n_] = lo_alpha;
      exact_lp_.col_upper[n_] = hi_alpha;
    }
  }

  void build_float_lp() {
    float_lp_ = lp::Problem<double>(num_cols());
    float_lp_.matrix.reserve(exact_lp_.matrix.size());
    for (const auto& v : exact_lp_.matrix) float_lp_.matrix.push_back(v.get_d());
    for (const auto& v : exact_lp_.rhs) float_lp_.rhs.push_back(v.get_d());
    float_lp_.rel = exact_lp_.rel;
    for (std::size_t j = 0; j < num_cols(); ++j) float_lp_.cost[j] = exact_lp_.cost[j].get_d();
    if (ip_.is_min_alpha()) {
      float_lp_.col_lower[n_] = to_double_down(alpha_lo_);
      float_lp_.col_upper[n_] = to_double_up(alpha_hi_);
    }
  }

  Rational to_objective_units(const Rational& raw) const {
    if (const auto* lin = std::get_if<LinearObjective>(&ip_.objective))
      return (raw + from_int64(lin->offset)) / Rational(lin->denominator);
    return raw;
  }

  // Any strictly better solution has raw LP objective <= threshold_.
  void update_threshold() {
    if (const auto* lin = std::get_if<LinearObjective>(&ip_.objective)) {
      (void)lin;
      threshold_ = incumbent_->raw_value - 1;
      return;
    }
    const auto& ma = std::get<MinAlphaObjective>(ip_.objective);
    const Rational& alpha = incumbent_->raw_value;
    Rational z1 = Rational(ceil_of(ma.reference.first + alpha * ma.direction.first) - 1);
    Rational z2 = Rational(ceil_of(ma.reference.second + alpha * ma.direction.second) - 1);
    Rational a1 = (z1 - ma.reference.first) / ma.direction.first;
    Rational a2 = (z2 - ma.reference.second) / ma.direction.second;
    threshold_ = a1 > a2 ? a1 : a2;
  }

  void consider(const Assignment& x) {
    if (!satisfies_all_rows(ip_, x)) return;
    Rational value = objective_value(ip_, x);
    if (incumbent_ && !(value < incumbent_->value)) return;
    Rational raw = value;
    if (const auto* lin = std::get_if<LinearObjective>(&ip_.objective))
      raw = from_int64(dot(lin->coeffs, x));
    incumbent_ = Candidate{x, value, raw};
    update_threshold();
  }

  int first_unfixed(const std::vector<std::int8_t>& fix) const {
    for (std::size_t j = 0; j < n_; ++j)
      if (fix[j] < 0) return static_cast<int>(j);
    return -1;
  }

  bool beats_threshold(const Rational& bound) const { return incumbent_ && bound > threshold_; }

  // Returns the branching variable, or -1 when the node is closed.
  int process(std::vector<std::int8_t>& fix, SolveOutcome& out) {
    if (first_unfixed(fix) < 0) {
      Assignment x(fix.begin(), fix.end());
      consider(x);
      return -1;
    }
    if (options_.lp_mode == LpMode::fast) {
      std::optional<int> decided = process_float(fix);
      if (decided) return *decided;
      ++out.exact_fallbacks;
    }
    return process_exact(fix);
  }

  std::optional<int> process_float(std::vector<std::int8_t>& fix) {
    std::vector<double> lo(float_lp_.col_lower), up(float_lp_.col_upper);
    for (std::size_t j = 0; j < n_; ++j)
      if (fix[j] >= 0) lo[j] = up[j] = fix[j];
    auto sol = lp::solve(float_lp_, std::span<const double>(lo), std::span<const double>(up));
    if (sol.status == lp::Status::infeasible) {
      double cert = lp::certified_lagrangian_bound(float_lp_, lo, up, {}, sol.duals);
      if (cert > 0) return -1;
      return std::nullopt;
    }
    if (sol.status != lp::Status::optimal) return std::nullopt;

    std::optional<lp::CertifiedBound> cert;
    auto certified_prune = [&]() -> std::optional<bool> {
      if (!incumbent_) return false;
      if (!cert) cert = lp::certified_lagrangian(float_lp_, lo, up, float_lp_.cost, sol.duals);
      if (std::isfinite(cert->bound) && Rational(cert->bound) > threshold_) return true;
      // The float optimum claims a prune the certificate cannot confirm.
      if (sol.objective > threshold_.get_d() + 1e-6 * (1.0 + std::fabs(threshold_.get_d()))) return std::nullopt;
      return false;
    };

    auto pruned = certified_prune();
    if (!pruned) return std::nullopt;
    if (*pruned) return -1;

    int frac = -1;
    for (std::size_t j = 0; j < n_; ++j) {
      if (fix[j] >= 0) continue;
      if (std::fabs(sol.x[j] - std::round(sol.x[j])) > 1e-6) {
        frac = static_cast<int>(j);
        break;
      }
    }
    if (frac < 0) {
      Assignment x(n_);
      for (std::size_t j = 0; j < n_; ++j)
        x[j] = fix[j] >= 0 ? static_cast<std::uint8_t>(fix[j]) : (sol.x[j] > 0.5 ? 1 : 0);
      consider(x);
      pruned = certified_prune();
      if (pruned && *pruned) return -1;
    }

    // Reduced-cost fixing: forcing x_j off its Lagrangian-minimizing bound
    // raises the bound by |g_j|, so variables whose flip cannot beat the
    // incumbent are fixed for the whole subtree.
    if (incumbent_ && cert && std::isfinite(cert->bound)) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (fix[j] >= 0) continue;
        const double g = cert->reduced[j];
        const double gain = std::fabs(g) - cert->reduced_err[j];
        if (gain <= 0) continue;
        const double forced = cert->bound + gain;
        if (forced > cert->bound && Rational(forced) > threshold_) fix[j] = g > 0 ? 0 : 1;
      }
      if (frac >= 0 && fix[static_cast<std::size_t>(frac)] >= 0) {
        frac = -1;
        for (std::size_t j = 0; j < n_; ++j) {
          if (fix[j] < 0 && std::fabs(sol.x[j] - std::round(sol.x[j])) > 1e-6) {
            frac = static_cast<int>(j);
            break;
          }
        }
      }
    }
    if (frac >= 0) return frac;
    const int next = first_unfixed(fix);
    if (next < 0) {
      consider(Assignment(fix.begin(), fix.end()));
      return -1;
    }
    return next;
  }

  int process_exact(const std::vector<std::int8_t>& fix) {
    std::vector<Rational> lo(exact_lp_.col_lower), up(exact_lp_.col_upper);
    for (std::size_t j = 0; j < n_; ++j)
      if (fix[j] >= 0) lo[j] = up[j] = fix[j];
    auto sol = lp::solve(exact_lp_, std::span<const Rational>(lo), std::span<const Rational>(up));
    if (sol.status == lp::Status::infeasible) return -1;
    if (sol.status != lp::Status::optimal) throw std::runtime_error("exact LP relaxation did not solve");
    if (beats_threshold(sol.objective)) return -1;
    for (std::size_t j = 0; j < n_; ++j)
      if (fix[j] < 0 && !is_integer(sol.x[j])) return static_cast<int>(j);
    Assignment x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = sol.x[j] > Rational(1, 2) ? 1 : 0;
    consider(x);
    if (beats_threshold(sol.objective)) return -1;
    return first_unfixed(fix);
  }

  const SingleObjectiveIP& ip_;
  const BoipInstance& inst_;
  SolverOptions options_;
  std::size_t n_;
  lp::Problem<Rational> exact_lp_;
  lp::Problem<double> float_lp_;
  Rational alpha_lo_, alpha_hi_;
  std::optional<Candidate> incumbent_;
  Rational threshold_;
};

}  // namespace detail

inline SolveOutcome solve(const SingleObjectiveIP& ip, const SolverBudget& budget = {},
                          SolverOptions options = {}) {
  detail::BranchAndBound bb(ip, options);
  return bb.run(budget);
}

inline std::optional<Rational> lp_relaxation_value(const SingleObjectiveIP& ip) {
  detail::BranchAndBound bb(ip, SolverOptions{LpMode::exact});
  return bb.root_relaxation_value();
}

/// Two-stage lexicographic minimization: z_first, then z_second with z_first
/// held at its optimum. Always two models when the first stage is optimal.
inline SolveOutcome solve_lexicographic(const BoipInstance& instance, int first, int second,
                                        const SolverBudget& budget = {}, SolverOptions options = {}) {
  if (!((first == 1 && second == 2) || (first == 2 && second == 1)))
    throw PreconditionError("lexicographic order must be (1,2) or (2,1)");
  const ObjectiveRow& f = instance.objective(first);
  const ObjectiveRow& s = instance.objective(second);
  SingleObjectiveIP stage1(instance, LinearObjective{f.coeffs, f.offset, 1}, {}, "lex-stage1");
  SolveOutcome a = solve(stage1, budget, options);
  if (a.status != SolveStatus::Optimal) return a;
  LinearRow fixed{f.coeffs, Relation::EQ, to_int64(a.value) - f.offset};
  SingleObjectiveIP stage2(instance, LinearObjective{s.coeffs, s.offset, 1}, {fixed}, "lex-stage2");
  SolveOutcome b = solve(stage2, budget, options);
  b.nodes += a.nodes;
  b.seconds += a.seconds;
  return b;
}

/// Visits every feasible assignment in Gray-code order.
template <class Visitor>
void for_each_feasible(const BoipInstance& instance, std::uint64_t cap, Visitor&& visit) {
  const std::size_t n = instance.n;
  if (n >= 63 || (std::uint64_t{1} << n) > cap) throw PreconditionError("enumeration exceeds cap");
  instance.validate();
  const std::size_t m = instance.constraints.size();
  std::vector<std::int64_t> activity(m, 0);
  std::int64_t z1 = instance.objectives[0].offset;
  std::int64_t z2 = instance.objectives[1].offset;
  Assignment x(n, 0);
  auto feasible = [&]() {
    for (std::size_t i = 0; i < m; ++i)
      if (!row_holds(instance.constraints[i], activity[i])) return false;
    return true;
  };
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 0; k < total; ++k) {
    if (k > 0) {
      const auto j = static_cast<std::size_t>(std::countr_zero(k));
      const std::int64_t sign = x[j] ? -1 : 1;
      x[j] ^= 1;
      for (std::size_t i = 0; i < m; ++i) activity[i] += sign * instance.constraints[i].coeffs[j];
      z1 += sign * instance.objectives[0].coeffs[j];
      z2 += sign * instance.objectives[1].coeffs[j];
    }
    if (feasible()) visit(x, Point{z1, z2});
  }
}

inline std::vector<std::pair<Assignment, Point>> enumerate_all(const BoipInstance& instance,
                                                               std::uint64_t cap = std::uint64_t{1} << 20) {
  std::vector<std::pair<Assignment, Point>> out;
  for_each_feasible(instance, cap, [&](const Assignment& x, const Point& z) { out.emplace_back(x, z); });
  return out;
}

}  // namespace boip
