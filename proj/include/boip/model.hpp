#pragma once

#include "boip/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace boip {

enum class ProblemKind { knapsack, assignment, generic };
enum class Relation { LE, EQ, GE };
enum class Sense { min, max };

/// Thrown when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LinearRow {
  std::vector<std::int64_t> coeffs;
  Relation rel = Relation::LE;
  std::int64_t rhs = 0;
};

struct ObjectiveRow {
  std::vector<std::int64_t> coeffs;
  std::int64_t offset = 0;
};

/// Biobjective 0-1 program with both objectives minimized. Maximization
/// objectives are stored negated; `original_sense` remembers which.
struct BoipInstance {
  std::string name;
  ProblemKind kind = ProblemKind::generic;
  std::size_t n = 0;
  std::vector<LinearRow> constraints;
  std::array<ObjectiveRow, 2> objectives;
  std::array<Sense, 2> original_sense{Sense::min, Sense::min};

  const ObjectiveRow& objective(int component) const {
    return objectives.at(static_cast<std::size_t>(component - 1));
  }

  // Every linear form must stay below 2^62 in magnitude so that 64-bit
  // evaluation with 128-bit accumulation can never overflow.
  void validate() const {
    constexpr std::int64_t kLimit = std::int64_t{1} << 62;
    auto check_form = [&](std::span<const std::int64_t> coeffs, std::int64_t constant, const char* what) {
      if (coeffs.size() != n) throw PreconditionError(std::string(what) + " has wrong length");
      __int128 total = constant < 0 ? -static_cast<__int128>(constant) : constant;
      for (auto c : coeffs) total += c < 0 ? -static_cast<__int128>(c) : c;
      if (total >= kLimit) throw PreconditionError(std::string(what) + " coefficients too large");
    };
    for (const auto& row : constraints) check_form(row.coeffs, row.rhs, "constraint");
    for (const auto& obj : objectives) check_form(obj.coeffs, obj.offset, "objective");
  }
};

using Assignment = std::vector<std::uint8_t>;

struct Point {
  std::int64_t z1 = 0;
  std::int64_t z2 = 0;

  friend auto operator<=>(const Point&, const Point&) = default;

  RationalPair as_rational() const { return {from_int64(z1), from_int64(z2)}; }
};

/// a dominates b: a <= b componentwise and a != b.
inline bool dominates(const Point& a, const Point& b) {
  return a.z1 <= b.z1 && a.z2 <= b.z2 && a != b;
}

inline std::int64_t dot(std::span<const std::int64_t> coeffs, const Assignment& x) {
  __int128 acc = 0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (x[j]) acc += coeffs[j];
  return static_cast<std::int64_t>(acc);
}

inline Point evaluate_objectives(const BoipInstance& instance, const Assignment& x) {
  if (x.size() != instance.n) throw PreconditionError("assignment length does not match instance");
  return {dot(instance.objectives[0].coeffs, x) + instance.objectives[0].offset,
          dot(instance.objectives[1].coeffs, x) + instance.objectives[1].offset};
}

inline bool row_holds(const LinearRow& row, std::int64_t activity) {
  switch (row.rel) {
    case Relation::LE: return activity <= row.rhs;
    case Relation::GE: return activity >= row.rhs;
    case Relation::EQ: return activity == row.rhs;
  }
  return false;
}

inline bool is_feasible(const BoipInstance& instance, const Assignment& x) {
  if (x.size() != instance.n) throw PreconditionError("assignment length does not match instance");
  return std::all_of(instance.constraints.begin(), instance.constraints.end(),
                     [&](const LinearRow& row) { return row_holds(row, dot(row.coeffs, x)); });
}

/// Nondominated set kept sorted by strictly increasing z1 (hence strictly
/// decreasing z2).
class Frontier {
 public:
  enum class Insert { added, duplicate, dominated };

  Frontier() = default;

  /// Adopts points that already satisfy the ordering invariant.
  static Frontier from_sorted(std::vector<Point> points) {
    Frontier f;
    f.points_ = std::move(points);
    if (!f.invariant_holds()) throw PreconditionError("points are not a sorted nondominated set");
    return f;
  }

  /// Inserts p, evicting any points it dominates.
  Insert insert(const Point& p) {
    auto it = std::lower_bound(points_.begin(), points_.end(), p,
                               [](const Point& a, const Point& b) { return a.z1 < b.z1; });
    if (it != points_.end() && *it == p) return Insert::duplicate;
    // The predecessor has smaller z1; if its z2 is also <= p.z2 it dominates p.
    if (it != points_.begin() && std::prev(it)->z2 <= p.z2) return Insert::dominated;
    if (it != points_.end() && it->z1 == p.z1 && it->z2 < p.z2) return Insert::dominated;
    auto last = it;
    while (last != points_.end() && last->z2 >= p.z2) ++last;
    it = points_.erase(it, last);
    points_.insert(it, p);
    return Insert::added;
  }

  bool contains(const Point& p) const {
    return std::binary_search(points_.begin(), points_.end(), p);
  }

  bool invariant_holds() const {
    for (std::size_t i = 1; i < points_.size(); ++i)
      if (!(points_[i - 1].z1 < points_[i].z1 && points_[i - 1].z2 > points_[i].z2)) return false;
    return true;
  }

  bool subset_of(const Frontier& other) const {
    return std::all_of(points_.begin(), points_.end(), [&](const Point& p) { return other.contains(p); });
  }

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  friend bool operator==(const Frontier&, const Frontier&) = default;

 private:
  std::vector<Point> points_;
};

inline Frontier filter_nondominated(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  std::vector<Point> kept;
  for (const auto& p : points) {
    if (!kept.empty() && kept.back().z2 <= p.z2) continue;
    kept.push_back(p);
  }
  return Frontier::from_sorted(std::move(kept));
}

struct IdealNadir {
  Point ideal;
  Point nadir;
};

inline IdealNadir corner_and_nadir(const Frontier& frontier) {
  if (frontier.empty()) throw PreconditionError("ideal/nadir of an empty frontier");
  const auto& pts = frontier.points();
  return {{pts.front().z1, pts.back().z2}, {pts.back().z1, pts.front().z2}};
}

/// Search region b(s, p, t): s1 <= y1 <= p1, s2 <= y2 <= t2 with s = (t1, p2).
struct Box {
  RationalPair s;
  RationalPair p;
  RationalPair t;

  static Box from_corners(const RationalPair& p, const RationalPair& t) {
    return Box{{t.first, p.second}, p, t};
  }

  Rational width() const { return p.first - s.first; }
  Rational height() const { return t.second - s.second; }
  Rational area() const { return width() * height(); }

  bool well_formed() const {
    return s.first == t.first && s.second == p.second && is_integer(p.first) && is_integer(t.second);
  }

  friend bool operator==(const Box&, const Box&) = default;
};

}  // namespace boip
