#pragma once

#include "boip/boxer.hpp"
#include "boip/io.hpp"
#include "boip/metrics.hpp"
#include "boip/rational.hpp"

#include <numeric>
#include <string>

namespace boip {

inline Json pair_json(const RationalPair& p) { return Json::array({to_string(p.first), to_string(p.second)}); }
inline Json point_json(const Point& p) { return Json::array({p.z1, p.z2}); }

/// Run counters; deterministic for a fixed instance and configuration.
inline Json stats_json(const RunResult& r) {
  Json j;
  j["algorithm"] = r.algorithm;
  j["N"] = r.stats.n_nondominated;
  j["ip_count"] = r.stats.n_ip;
  j["rbd_count"] = r.stats.n_rbd;
  j["C"] = r.stats.C;
  j["C2"] = r.stats.C2;
  j["E"] = r.stats.E;
  j["tl_retries"] = r.stats.tl_retries;
  j["nodes"] = r.stats.nodes;
  j["completed"] = r.completed;
  j["infeasible"] = r.infeasible;
  j["solver_failure"] = r.solver_failure;
  if (r.solver_failure) j["failure"] = r.failure_message;
  if (r.corner_points) {
    j["t0"] = point_json(r.corner_points->t0);
    j["p0"] = point_json(r.corner_points->p0);
  }
  return j;
}

/// Wall-clock figures, kept apart from the deterministic stats.
inline Json timing_json(const RunResult& r) {
  Json j;
  j["algorithm"] = r.algorithm;
  j["wall_seconds"] = r.stats.wall_seconds;
  j["model_seconds"] = std::accumulate(r.stats.per_model_times.begin(), r.stats.per_model_times.end(), 0.0);
  j["per_model_seconds"] = r.stats.per_model_times;
  return j;
}

inline Json iteration_json(const IterationRecord& rec) {
  Json j;
  j["iter"] = rec.index;
  j["s"] = pair_json(rec.box.s);
  j["p"] = pair_json(rec.box.p);
  j["t"] = pair_json(rec.box.t);
  j["d"] = pair_json(rec.direction);
  j["status"] = to_string(rec.status);
  if (rec.retried) j["retried"] = true;
  if (rec.alpha) j["alpha"] = to_string(*rec.alpha);
  if (rec.yb) j["yb"] = pair_json(*rec.yb);
  if (rec.nb) j["nb"] = point_json(*rec.nb);
  Json added = Json::array();
  for (const auto& p : rec.added) added.push_back(point_json(p));
  j["added"] = std::move(added);
  j["eliminated"] = rec.eliminated;
  j["queue"] = rec.queue_size;
  return j;
}

/// One JSON record per line.
inline std::string iteration_log_text(const RunResult& r) {
  std::string out;
  for (const auto& rec : r.iteration_log) out += iteration_json(rec).dump() + "\n";
  return out;
}

inline double rounded(const Rational& r, int digits = 4) { return std::stod(to_decimal(r, digits)); }

inline Json report_json(const RepresentationReport& r) {
  Json j;
  j["n_subset"] = r.subset_size;
  j["ce"] = r.ce;
  j["sce"] = rounded(r.sce);
  j["hv_ref"] = r.hv_ref.get_str();
  j["hv_subset"] = r.hv_subset.get_str();
  j["shg"] = r.shg ? Json(rounded(*r.shg)) : Json(nullptr);
  j["sce_exact"] = to_string(r.sce);
  j["shg_exact"] = r.shg ? Json(to_string(*r.shg)) : Json(nullptr);
  return j;
}

}  // namespace boip
