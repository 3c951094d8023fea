#pragma once

#include "boip/model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace boip {

using Json = nlohmann::ordered_json;

inline const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::knapsack: return "knapsack";
    case ProblemKind::assignment: return "assignment";
    case ProblemKind::generic: return "generic";
  }
  return "?";
}

inline ProblemKind parse_kind(const std::string& s) {
  if (s == "knapsack") return ProblemKind::knapsack;
  if (s == "assignment") return ProblemKind::assignment;
  if (s == "generic") return ProblemKind::generic;
  throw PreconditionError("unknown problem kind '" + s + "'");
}

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::LE: return "LE";
    case Relation::EQ: return "EQ";
    case Relation::GE: return "GE";
  }
  return "?";
}

inline Relation parse_relation(const std::string& s) {
  if (s == "LE") return Relation::LE;
  if (s == "EQ") return Relation::EQ;
  if (s == "GE") return Relation::GE;
  throw PreconditionError("unknown relation '" + s + "'");
}

inline const char* to_string(Sense s) { return s == Sense::min ? "min" : "max"; }

inline Sense parse_sense(const std::string& s) {
  if (s == "min") return Sense::min;
  if (s == "max") return Sense::max;
  throw PreconditionError("unknown sense '" + s + "'");
}

/// Instance JSON in the original sense; max objectives are negated on load.
inline BoipInstance instance_from_json(const Json& j) {
  try {
    BoipInstance in;
    in.name = j.value("name", std::string{});
    in.kind = parse_kind(j.value("kind", std::string("generic")));
    in.n = j.at("n").get<std::size_t>();
    if (j.contains("sense")) {
      const auto& s = j.at("sense");
      if (s.size() != 2) throw PreconditionError("sense must have two entries");
      in.original_sense = {parse_sense(s[0].get<std::string>()), parse_sense(s[1].get<std::string>())};
    }
    const auto& objs = j.at("objectives");
    if (objs.size() != 2) throw PreconditionError("exactly two objectives are required");
    for (std::size_t i = 0; i < 2; ++i) {
      ObjectiveRow row{objs[i].at("coeffs").get<std::vector<std::int64_t>>(), objs[i].value("offset", std::int64_t{0})};
      if (in.original_sense[i] == Sense::max) {
        for (auto& c : row.coeffs) c = -c;
        row.offset = -row.offset;
      }
      in.objectives[i] = std::move(row);
    }
    if (j.contains("constraints")) {
      for (const auto& c : j.at("constraints")) {
        in.constraints.push_back(LinearRow{c.at("coeffs").get<std::vector<std::int64_t>>(),
                                           parse_relation(c.at("rel").get<std::string>()),
                                           c.at("rhs").get<std::int64_t>()});
      }
    }
    in.validate();
    return in;
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed instance: ") + e.what());
  }
}

inline Json instance_to_json(const BoipInstance& in) {
  Json j;
  j["name"] = in.name;
  j["kind"] = to_string(in.kind);
  j["n"] = in.n;
  j["sense"] = Json::array({to_string(in.original_sense[0]), to_string(in.original_sense[1])});
  Json objs = Json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    ObjectiveRow row = in.objectives[i];
    if (in.original_sense[i] == Sense::max) {
      for (auto& c : row.coeffs) c = -c;
      row.offset = -row.offset;
    }
    objs.push_back(Json{{"coeffs", row.coeffs}, {"offset", row.offset}});
  }
  j["objectives"] = std::move(objs);
  Json cons = Json::array();
  for (const auto& c : in.constraints)
    cons.push_back(Json{{"coeffs", c.coeffs}, {"rel", to_string(c.rel)}, {"rhs", c.rhs}});
  j["constraints"] = std::move(cons);
  return j;
}

inline std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

inline BoipInstance load_instance(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw PreconditionError("'" + path + "' is not valid JSON: " + e.what());
  }
  BoipInstance in = instance_from_json(j);
  if (in.name.empty()) in.name = path;
  return in;
}

inline void save_instance(const std::string& path, const BoipInstance& in) {
  write_text(path, instance_to_json(in).dump(2) + "\n");
}

inline std::int64_t to_sense(std::int64_t v, Sense s) { return s == Sense::max ? -v : v; }

/// CSV with header "z1,z2", one point per line, in the original sense.
inline std::string frontier_to_csv(const Frontier& f, const std::array<Sense, 2>& sense) {
  std::string out = "z1,z2\n";
  for (const auto& p : f.points())
    out += std::to_string(to_sense(p.z1, sense[0])) + "," + std::to_string(to_sense(p.z2, sense[1])) + "\n";
  return out;
}

inline Frontier frontier_from_csv(const std::string& text, const std::array<Sense, 2>& sense) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("empty frontier file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "z1,z2") throw PreconditionError("frontier file must start with header z1,z2");
  std::vector<Point> pts;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw PreconditionError("bad frontier line '" + line + "'");
    try {
      std::size_t used1 = 0, used2 = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const std::int64_t z1 = std::stoll(a, &used1);
      const std::int64_t z2 = std::stoll(b, &used2);
      if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument("trailing characters");
      pts.push_back({to_sense(z1, sense[0]), to_sense(z2, sense[1])});
    } catch (const std::logic_error&) {
      throw PreconditionError("bad frontier line '" + line + "'");
    }
  }
  std::sort(pts.begin(), pts.end());
  return Frontier::from_sorted(std::move(pts));
}

inline Frontier load_frontier(const std::string& path, const std::array<Sense, 2>& sense) {
  return frontier_from_csv(read_text(path), sense);
}

}  // namespace boip
