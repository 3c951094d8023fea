#pragma once

#include "boip/model.hpp"
#include "boip/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace boip {

namespace detail {

inline void require_subset(const Frontier& reference, const Frontier& subset) {
  if (!subset.subset_of(reference)) throw PreconditionError("subset is not contained in the reference frontier");
}

inline std::int64_t chebyshev(const Point& a, const Point& b) {
  const __int128 d1 = static_cast<__int128>(a.z1) - b.z1;
  const __int128 d2 = static_cast<__int128>(a.z2) - b.z2;
  const __int128 m = std::max(d1 < 0 ? -d1 : d1, d2 < 0 ? -d2 : d2);
  return static_cast<std::int64_t>(m);
}

}  // namespace detail

/// max over reference points of the Chebyshev distance to the nearest subset point.
inline std::int64_t coverage_error(const Frontier& reference, const Frontier& subset) {
  if (subset.empty()) throw PreconditionError("coverage error of an empty subset");
  detail::require_subset(reference, subset);
  std::int64_t worst = 0;
  for (const auto& n : reference.points()) {
    std::int64_t best = -1;
    for (const auto& m : subset.points()) {
      const std::int64_t d = detail::chebyshev(n, m);
      if (best < 0 || d < best) best = d;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

inline Rational scaled_coverage_error(const Frontier& reference, const Frontier& subset, const Point& ideal,
                                      const Point& nadir) {
  const BigInt r1 = BigInt(static_cast<long>(nadir.z1)) - static_cast<long>(ideal.z1);
  const BigInt r2 = BigInt(static_cast<long>(nadir.z2)) - static_cast<long>(ideal.z2);
  const BigInt range = r1 > r2 ? r1 : r2;
  if (range <= 0) throw PreconditionError("scaled coverage error needs a nonzero ideal-nadir range");
  return make_rational(BigInt(static_cast<long>(coverage_error(reference, subset))), range);
}

inline Rational scaled_coverage_error(const Frontier& reference, const Frontier& subset) {
  const IdealNadir in = corner_and_nadir(reference);
  return scaled_coverage_error(reference, subset, in.ideal, in.nadir);
}

/// Area of the union of the rectangles [n, nadir] by a staircase sweep.
inline BigInt hypervolume(const Frontier& set, const Point& nadir) {
  BigInt area = 0;
  BigInt prev = static_cast<long>(nadir.z2);
  for (const auto& n : set.points()) {
    if (n.z1 > nadir.z1 || n.z2 > nadir.z2) throw PreconditionError("point exceeds the nadir");
    const BigInt width = BigInt(static_cast<long>(nadir.z1)) - static_cast<long>(n.z1);
    const BigInt z2 = static_cast<long>(n.z2);
    area += width * (prev - z2);
    prev = z2;
  }
  return area;
}

inline Rational scaled_hypervolume_gap(const Frontier& reference, const Frontier& subset, const Point& nadir) {
  detail::require_subset(reference, subset);
  const BigInt href = hypervolume(reference, nadir);
  if (href <= 0) throw PreconditionError("reference hypervolume is zero");
  return make_rational(href - hypervolume(subset, nadir), href);
}

struct RepresentationReport {
  std::size_t subset_size = 0;
  std::int64_t ce = 0;
  Rational sce;
  BigInt hv_ref;
  BigInt hv_subset;
  std::optional<Rational> shg;  // undefined when the reference hypervolume is zero
};

/// All four measures with ideal and nadir taken from the reference frontier.
inline RepresentationReport representation_report(const Frontier& reference, const Frontier& subset) {
  const IdealNadir in = corner_and_nadir(reference);
  RepresentationReport r;
  r.subset_size = subset.size();
  r.ce = coverage_error(reference, subset);
  r.sce = scaled_coverage_error(reference, subset, in.ideal, in.nadir);
  r.hv_ref = hypervolume(reference, in.nadir);
  r.hv_subset = hypervolume(subset, in.nadir);
  if (r.hv_ref > 0) r.shg = make_rational(r.hv_ref - r.hv_subset, r.hv_ref);
  return r;
}

}  // namespace boip
