#pragma once

// JSON records and CSV tables. Timing lives in its own block so that the rest of a
// manifest is byte-identical across reruns.

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "klsf/classifier.hpp"
#include "klsf/constructions.hpp"
#include "klsf/covering.hpp"
#include "klsf/search.hpp"
#include "klsf/spectral.hpp"

namespace klsf {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

inline Json to_json(const Params& q) {
  return Json{{"k", q.k}, {"l", q.l}, {"p", q.p}, {"n", q.n}, {"m", q.m()}, {"lambda", q.lambda()}, {"theta", q.theta()}};
}

inline Json points_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& x : pts) a.push_back(x);
  return a;
}

inline Json to_json(const TypeSpec& s) {
  Json j{{"type", structure_name(s.which)}, {"params", to_json(s.params)}};
  if (s.start) j["a"] = *s.start;
  if (s.which == Structure::Type2 || s.which == Structure::Type4) j["V"] = points_json(s.subspace);
  if (s.which == Structure::Type5 || s.which == Structure::RZ) {
    j["s"] = s.s;
    j["P"] = points_json(s.pset);
  }
  return j;
}

inline Json matrix_json(const ModMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline Json to_json(const ClassReport& r) {
  Json j{{"label", label_name(r.label)}};
  Json matches = Json::array();
  for (auto m : r.matches) matches.push_back(label_name(m));
  j["matches"] = matches;
  if (r.type_witness)
    j["witness"] = Json{{"spec", to_json(r.type_witness->spec)},
                        {"map", matrix_json(r.type_witness->map)},
                        {"normal", r.type_witness->normal}};
  if (r.trivial_witness)
    j["witness"] = Json{{"cuboid_j", r.trivial_witness->j},
                        {"functional", r.trivial_witness->functional},
                        {"scale", r.trivial_witness->scale},
                        {"map", matrix_json(r.trivial_witness->map)}};
  j["notes"] = r.notes;
  return j;
}

inline Json generated_record(const TypeSpec& spec, const Generated& g, const Params& q) {
  Json j = to_json(spec);
  j["set"] = to_literal(g.set);
  j["size"] = g.set.size();
  j["sumfree"] = is_kl_sumfree(g.set, q.k, q.l);
  j["support"] = to_literal(g.support);
  j["weight"] = g.profile.weight;
  if (q.cuboid_range()) j["nontrivial"] = nontriviality_check(g.set, q).nontrivial ? "nontrivial" : "trivial";
  if (!g.flags.empty()) j["flags"] = g.flags;
  return j;
}

inline Json cuboid_record(const CuboidSpec& spec, const VecSet& set) {
  return Json{{"type", "cuboid"},
              {"params", to_json(spec.params)},
              {"j", spec.j},
              {"a", spec.start()},
              {"set", to_literal(set)},
              {"size", set.size()},
              {"sumfree", is_kl_sumfree(set, spec.params.k, spec.params.l)}};
}

inline Json to_json(const SearchResult& r) {
  Json j{{"params", to_json(r.params)}, {"max_size", r.max_size}};
  Json ext = Json::array();
  for (const auto& s : r.extremal) ext.push_back(to_literal(s));
  j["extremal_orbits"] = ext;
  Json sec = Json::array();
  for (const auto& o : r.second_level) sec.push_back(Json{{"set", to_literal(o.set)}, {"report", to_json(o.report)}});
  j["second_level_orbits"] = sec;
  j["findings"] = r.findings;
  j["node_count"] = r.node_count;
  return j;
}

inline Json to_json(const CoveringVerdict& v) {
  return Json{{"set", to_literal(v.set)},
              {"doubling", v.doubling},
              {"target_len", v.target_len},
              {"achieved_len", v.achieved_len},
              {"covered", v.covered},
              {"witness", Json{{"start", v.witness.start}, {"diff", v.witness.diff}, {"length", v.witness.length}}}};
}

inline Json to_json(const TauScan& s) {
  Json j{{"p", s.p},
         {"c", std::to_string(s.c.num) + "/" + std::to_string(s.c.den)},
         {"mode", s.mode},
         {"sets_examined", s.sets_examined},
         {"tau_feasible", s.tau_feasible},
         {"monotone", s.monotone}};
  if (s.mode == "sampled") {
    j["seed"] = s.seed;
    j["trials"] = s.trials;
  }
  Json rows = Json::array();
  for (const auto& r : s.rows) rows.push_back(Json{{"tau", r.tau}, {"tested", r.tested}, {"violations", r.violations}});
  j["grid"] = rows;
  Json v = Json::array();
  for (const auto& x : s.violations) v.push_back(to_json(x));
  j["violations"] = v;
  return j;
}

inline Json to_json(const SpectralCheck& c) {
  if (!c.applicable) return Json{{"verdict", "not applicable"}};
  return Json{{"verdict", c.pass ? "pass" : "fail"},
              {"max_nonzero", c.max_nonzero},
              {"bound", c.bound},
              {"vanishing_residual", c.vanishing_residual}};
}

/// CSV columns: tau,tested,violations.
inline void write_tau_csv(std::ostream& os, const TauScan& s) {
  os << "tau,tested,violations\n";
  for (const auto& r : s.rows) os << r.tau << "," << r.tested << "," << r.violations << "\n";
}

/// CSV columns: kind,size,set,label.
inline void write_orbit_csv(std::ostream& os, const SearchResult& r) {
  os << "kind,size,set,label\n";
  for (const auto& s : r.extremal) os << "extremal," << s.size() << ",\"" << to_literal(s) << "\",\n";
  for (const auto& o : r.second_level)
    os << "second," << o.set.size() << ",\"" << to_literal(o.set) << "\"," << label_name(o.report.label) << "\n";
}

/// CSV columns: index,t,re,im,abs (t as space-separated coordinates).
inline void write_spectrum_csv(std::ostream& os, const Spectrum& s, const VecSet& shape) {
  os << "index,t,re,im,abs\n";
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    const auto t = shape.point_of(i);
    os << i << ",";
    for (std::size_t j = 0; j < t.size(); ++j) os << (j ? " " : "") << t[j];
    os << "," << s.coeffs[i].real() << "," << s.coeffs[i].imag() << "," << std::abs(s.coeffs[i]) << "\n";
  }
}

struct RunManifest {
  std::vector<std::string> command;
  Json grid = Json::array();
  Json seeds = Json::array();
  Json results = Json::array();
  Json timing = Json::object();

  Json to_json() const {
    return Json{{"schema", kSchemaVersion},
                {"tool", "klsf"},
                {"version", kToolVersion},
                {"command", command},
                {"grid", grid},
                {"seeds", seeds},
                {"results", results},
                {"timing", timing}};
  }

  /// The manifest without its timing block.
  Json reproducible_part() const {
    Json j = to_json();
    j.erase("timing");
    return j;
  }
};

}  // namespace klsf
