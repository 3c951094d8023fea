#pragma once

// Dense-tableau bounded-variable primal simplex, templated on the scalar.
//
// Rows are written in activity form A x - r = 0 where each row variable r_i
// carries the row's bounds (LE: r <= b, GE: r >= b, EQ: r = b). Structural
// columns must have finite bounds. Phase 1 uses one artificial per row whose
// initial activity violates its bounds.
//
// Dual convention: for any multipliers y,
//   c'x >= sum_j min_{x_j in [l_j,u_j]} (c_j - y'A_j) x_j + sum_i min_{r_i} y_i r_i,
// and the returned duals are the y that make this tight at an optimum
// (phase-1 duals with c = 0 certify infeasibility).

#include "boip/model.hpp"
#include "boip/rational.hpp"

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace boip::lp {

enum class Status { optimal, infeasible, unbounded, failed };

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double v) { return std::fabs(v) <= 1e-11; }
  static bool negative(double v) { return v < -1e-9; }
  static bool positive(double v) { return v > 1e-9; }
  static bool pivot_ok(double v) { return std::fabs(v) > 1e-9; }
  static double clamp_nonneg(double v) { return v < 0 ? 0.0 : v; }
  static double magnitude(double v) { return std::fabs(v); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool pivot_ok(const Rational& v) { return sgn(v) != 0; }
  static Rational clamp_nonneg(const Rational& v) { return v; }
  static double magnitude(const Rational& v) { return std::fabs(v.get_d()); }
};

template <class T>
struct Problem {
  std::size_t num_cols = 0;
  std::vector<T> cost;
  std::vector<T> col_lower;
  std::vector<T> col_upper;
  std::vector<T> matrix;  // row-major
  std::vector<Relation> rel;
  std::vector<T> rhs;

  explicit Problem(std::size_t cols = 0)
      : num_cols(cols), cost(cols, T(0)), col_lower(cols, T(0)), col_upper(cols, T(1)) {}

  std::size_t num_rows() const { return rel.size(); }
  const T& at(std::size_t row, std::size_t col) const { return matrix[row * num_cols + col]; }

  void add_row(std::span<const T> coeffs, Relation r, T b) {
    matrix.insert(matrix.end(), coeffs.begin(), coeffs.end());
    rel.push_back(r);
    rhs.push_back(std::move(b));
  }
};

template <class T>
struct Solution {
  Status status = Status::failed;
  T objective = T(0);
  std::vector<T> x;
  std::vector<T> duals;
  std::size_t iterations = 0;
};

namespace detail {

template <class T>
class Tableau {
  using Tr = ScalarTraits<T>;
  enum class At : unsigned char { lower, upper, basic };

 public:
  Tableau(const Problem<T>& lp, std::span<const T> lower, std::span<const T> upper)
      : m_(lp.num_rows()), n_(lp.num_cols) {
    // Count artificials first so the column layout is fixed.
    std::vector<T> activity(m_, T(0));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!Tr::is_zero(lp.at(i, j))) activity[i] += lp.at(i, j) * lower[j];

    std::vector<int> art_sign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const T& b = lp.rhs[i];
      if (lp.rel[i] != Relation::LE && activity[i] < b) art_sign[i] = 1;
      if (lp.rel[i] != Relation::GE && activity[i] > b) art_sign[i] = -1;
      if (art_sign[i] != 0) ++num_art_;
    }
    cols_ = n_ + m_ + num_art_;
    tab_.assign(m_ * cols_, T(0));
    lo_.assign(cols_, T(0));
    up_.assign(cols_, T(0));
    has_lo_.assign(cols_, 1);
    has_up_.assign(cols_, 1);
    val_.assign(cols_, T(0));
    state_.assign(cols_, At::lower);
    basis_.assign(m_, 0);

    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = lower[j];
      up_[j] = upper[j];
      val_[j] = lower[j];
    }
    std::size_t art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t r = n_ + i;
      const T& b = lp.rhs[i];
      has_lo_[r] = lp.rel[i] != Relation::LE;
      has_up_[r] = lp.rel[i] != Relation::GE;
      if (has_lo_[r]) lo_[r] = b;
      if (has_up_[r]) up_[r] = b;
      T* row = &tab_[i * cols_];
      if (art_sign[i] == 0) {
        for (std::size_t j = 0; j < n_; ++j) row[j] = -lp.at(i, j);
        row[r] = T(1);
        basis_[i] = r;
        state_[r] = At::basic;
        val_[r] = activity[i];
      } else {
        const int sigma = art_sign[i];
        for (std::size_t j = 0; j < n_; ++j) row[j] = sigma > 0 ? lp.at(i, j) : -lp.at(i, j);
        row[r] = T(-sigma);
        row[art] = T(1);
        val_[r] = b;
        state_[r] = sigma > 0 ? At::lower : At::upper;
        lo_[art] = T(0);
        has_up_[art] = 0;
        basis_[i] = art;
        state_[art] = At::basic;
        val_[art] = sigma > 0 ? b - activity[i] : activity[i] - b;
        ++art;
      }
    }
    cost_.assign(cols_, T(0));
  }

  Solution<T> run(const Problem<T>& lp) {
    Solution<T> sol;
    if (num_art_ > 0) {
      for (std::size_t a = n_ + m_; a < cols_; ++a) cost_[a] = T(1);
      Status st = iterate(sol.iterations);
      if (st != Status::optimal) {
        sol.status = Status::failed;
        return sol;
      }
      T infeas(0);
      for (std::size_t a = n_ + m_; a < cols_; ++a) infeas += val_[a];
      if (phase1_infeasible(infeas)) {
        sol.status = Status::infeasible;
        sol.objective = infeas;
        sol.duals = duals();
        return sol;
      }
      for (std::size_t a = n_ + m_; a < cols_; ++a) {
        cost_[a] = T(0);
        up_[a] = T(0);
        has_up_[a] = 1;
        if (state_[a] != At::basic) val_[a] = T(0);
      }
    }
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = lp.cost[j];
    Status st = iterate(sol.iterations);
    sol.status = st;
    if (st != Status::optimal) return sol;
    sol.x.assign(val_.begin(), val_.begin() + static_cast<std::ptrdiff_t>(n_));
    sol.objective = T(0);
    for (std::size_t j = 0; j < n_; ++j)
      if (!Tr::is_zero(lp.cost[j])) sol.objective += lp.cost[j] * val_[j];
    sol.duals = duals();
    return sol;
  }

 private:
  static bool phase1_infeasible(const T& infeas) {
    if constexpr (Tr::exact) {
      return sgn(infeas) > 0;
    } else {
      return infeas > 1e-7;
    }
  }

  bool fixed(std::size_t j) const { return has_lo_[j] && has_up_[j] && lo_[j] == up_[j]; }

  std::vector<T> duals() const {
    std::vector<T> y(m_, T(0));
    for (std::size_t k = 0; k < m_; ++k) {
      const T& cb = cost_[basis_[k]];
      if (Tr::is_zero(cb)) continue;
      for (std::size_t i = 0; i < m_; ++i) {
        const T& e = tab_[k * cols_ + n_ + i];
        if (!Tr::is_zero(e)) y[i] -= cb * e;
      }
    }
    return y;
  }

  Status iterate(std::size_t& iterations) {
    const std::size_t limit = Tr::exact ? std::numeric_limits<std::size_t>::max() : 50 * (m_ + cols_) + 1000;
    std::size_t degenerate_streak = 0;
    std::vector<T> cb(m_);
    std::vector<T> reduced(cols_);
    for (;;) {
      if (iterations >= limit) return Status::failed;
      for (std::size_t i = 0; i < m_; ++i) cb[i] = cost_[basis_[i]];
      const bool bland = Tr::exact || degenerate_streak > 50;

      // Pricing.
      std::size_t enter = cols_;
      int dir = 0;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (state_[j] == At::basic || fixed(j)) continue;
        T d = cost_[j];
        for (std::size_t i = 0; i < m_; ++i) {
          const T& e = tab_[i * cols_ + j];
          if (!Tr::is_zero(e) && !Tr::is_zero(cb[i])) d -= cb[i] * e;
        }
        int cand = 0;
        if (Tr::negative(d) && state_[j] == At::lower) cand = 1;
        if (Tr::positive(d) && state_[j] == At::upper) cand = -1;
        if (cand == 0) continue;
        if (bland) {
          enter = j;
          dir = cand;
          break;
        }
        double mag = Tr::magnitude(d);
        if (mag > best) {
          best = mag;
          enter = j;
          dir = cand;
        }
      }
      if (enter == cols_) return Status::optimal;
      ++iterations;

      // Ratio test.
      bool bounded = has_lo_[enter] && has_up_[enter];
      T step = bounded ? up_[enter] - lo_[enter] : T(0);
      std::size_t leave_row = m_;
      bool leave_to_upper = false;
      double leave_piv = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        T a = tab_[i * cols_ + enter];
        if (!Tr::pivot_ok(a)) continue;
        if (dir < 0) a = -a;
        const std::size_t b = basis_[i];
        T ratio;
        bool to_upper;
        if (a > 0) {
          if (!has_lo_[b]) continue;
          ratio = Tr::clamp_nonneg(val_[b] - lo_[b]) / a;
          to_upper = false;
        } else {
          if (!has_up_[b]) continue;
          ratio = Tr::clamp_nonneg(up_[b] - val_[b]) / (-a);
          to_upper = true;
        }
        bool take = false;
        if (!bounded || ratio < step) {
          take = true;
        } else if (ratio == step && leave_row != m_) {
          if (bland) {
            take = basis_[i] < basis_[leave_row];
          } else {
            take = Tr::magnitude(a) > leave_piv;
          }
        }
        if (take) {
          step = ratio;
          bounded = true;
          leave_row = i;
          leave_to_upper = to_upper;
          leave_piv = Tr::magnitude(a);
        }
      }
      if (!bounded) return Status::unbounded;
      degenerate_streak = Tr::is_zero(step) ? degenerate_streak + 1 : 0;

      T delta = dir > 0 ? step : T(-step);
      if (!Tr::is_zero(delta)) {
        val_[enter] += delta;
        for (std::size_t i = 0; i < m_; ++i) {
          const T& e = tab_[i * cols_ + enter];
          if (!Tr::is_zero(e)) val_[basis_[i]] -= e * delta;
        }
      }
      if (leave_row == m_) {
        // Bound flip.
        state_[enter] = dir > 0 ? At::upper : At::lower;
        val_[enter] = dir > 0 ? up_[enter] : lo_[enter];
        continue;
      }
      const std::size_t leaving = basis_[leave_row];
      state_[leaving] = leave_to_upper ? At::upper : At::lower;
      val_[leaving] = leave_to_upper ? up_[leaving] : lo_[leaving];
      pivot(leave_row, enter);
      basis_[leave_row] = enter;
      state_[enter] = At::basic;
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    T* prow = &tab_[r * cols_];
    const T inv = T(1) / prow[q];
    for (std::size_t j = 0; j < cols_; ++j)
      if (!Tr::is_zero(prow[j])) prow[j] *= inv;
    prow[q] = T(1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      T* row = &tab_[i * cols_];
      const T f = row[q];
      if (Tr::is_zero(f)) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!Tr::is_zero(prow[j])) row[j] -= f * prow[j];
      row[q] = T(0);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t num_art_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> tab_;
  std::vector<T> lo_, up_;
  std::vector<char> has_lo_, has_up_;
  std::vector<T> val_;
  std::vector<At> state_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;
};

}  // namespace detail

template <class T>
Solution<T> solve(const Problem<T>& lp, std::span<const T> lower, std::span<const T> upper) {
  detail::Tableau<T> tableau(lp, lower, upper);
  return tableau.run(lp);
}

template <class T>
Solution<T> solve(const Problem<T>& lp) {
  return solve(lp, std::span<const T>(lp.col_lower), std::span<const T>(lp.col_upper));
}

/// Lower bound on min c'x over the LP from multipliers y (signs clamped to
/// the admissible cone), computed exactly.
template <class T>
T lagrangian_bound(const Problem<T>& lp, std::span<const T> lower, std::span<const T> upper,
                   std::span<const T> cost, std::span<const T> y_in) {
  const std::size_t m = lp.num_rows();
  std::vector<T> y(y_in.begin(), y_in.end());
  T total(0);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rel[i] == Relation::LE && y[i] > 0) y[i] = T(0);
    if (lp.rel[i] == Relation::GE && y[i] < 0) y[i] = T(0);
    total += y[i] * lp.rhs[i];
  }
  for (std::size_t j = 0; j < lp.num_cols; ++j) {
    T g = cost.empty() ? T(0) : cost[j];
    for (std::size_t i = 0; i < m; ++i) g -= y[i] * lp.at(i, j);
    total += g >= 0 ? g * lower[j] : g * upper[j];
  }
  return total;
}

struct CertifiedBound {
  double bound = -std::numeric_limits<double>::infinity();
  std::vector<double> reduced;      // g_j = c_j - y'A_j as computed
  std::vector<double> reduced_err;  // rigorous bound on |g_j - exact g_j|
};

/// Floating-point Lagrangian bound minus a rigorous a-priori bound on both
/// rounding in the arithmetic and a relative error of one unit roundoff in
/// every matrix, rhs and cost entry. The result never exceeds the exact
/// Lagrangian value of the LP whose data `lp` approximates, provided the
/// column bounds are exactly representable.
inline CertifiedBound certified_lagrangian(const Problem<double>& lp, std::span<const double> lower,
                                           std::span<const double> upper, std::span<const double> cost,
                                           std::span<const double> y_in) {
  const std::size_t m = lp.num_rows();
  const std::size_t n = lp.num_cols;
  const double gamma = 2.0 * static_cast<double>(n + m + 10) * DBL_EPSILON;
  CertifiedBound out;
  out.reduced.resize(n);
  out.reduced_err.resize(n);
  std::vector<double> y(y_in.begin(), y_in.end());
  double sum = 0.0;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rel[i] == Relation::LE && y[i] > 0) y[i] = 0.0;
    if (lp.rel[i] == Relation::GE && y[i] < 0) y[i] = 0.0;
    const double term = y[i] * lp.rhs[i];
    sum += term;
    magnitude += std::fabs(term);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double g = cost.empty() ? 0.0 : cost[j];
    double g_mag = std::fabs(g);
    for (std::size_t i = 0; i < m; ++i) {
      const double prod = y[i] * lp.at(i, j);
      g -= prod;
      g_mag += std::fabs(prod);
    }
    const double reach = std::max(std::fabs(lower[j]), std::fabs(upper[j]));
    const double term = g >= 0 ? g * lower[j] : g * upper[j];
    sum += term;
    magnitude += g_mag * reach + std::fabs(term);
    out.reduced[j] = g;
    out.reduced_err[j] = gamma * g_mag * 1.001 + DBL_MIN;
  }
  if (!std::isfinite(sum) || !std::isfinite(magnitude)) return out;
  out.bound = sum - gamma * magnitude * 1.001 - DBL_MIN;
  return out;
}

inline double certified_lagrangian_bound(const Problem<double>& lp, std::span<const double> lower,
                                         std::span<const double> upper, std::span<const double> cost,
                                         std::span<const double> y_in) {
  return certified_lagrangian(lp, lower, upper, cost, y_in).bound;
}

}  // namespace boip::lp
