#ifndef POLARSOLVE_REPORT_HPP
#define POLARSOLVE_REPORT_HPP

// Serialization of run results. JSON output is deterministic: ordered keys,
// rationals as exact "num/den" strings, no wall-clock data unless requested.

#include <polarsolve/pipeline.hpp>

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>

namespace polarsolve {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const UniPoly& p) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

inline ordered_json to_json(const RatInterval& iv) { return ordered_json::array({to_string(iv.lo), to_string(iv.hi)}); }

inline ordered_json to_json(const HypothesisReport& h) {
  ordered_json j;
  j["regular_sequence"] = to_string(h.regular_sequence);
  ordered_json rad = ordered_json::array();
  for (auto s : h.radical_intermediate_ideals) rad.push_back(to_string(s));
  j["radical_intermediate_ideals"] = rad;
  j["smooth_on_reals"] = to_string(h.smooth_on_reals);
  j["generic_position"] = h.generic_position;
  j["compactness"] = h.compactness;
  j["details"] = h.details;
  return j;
}

inline ordered_json to_json(const DegreeReport& d) {
  ordered_json j;
  j["d"] = d.d;
  j["D"] = d.bezout_D.get_str();
  j["minor_degrees"] = d.minor_degrees;
  j["D_top"] = d.polar_bound.get_str();
  j["delta_bound"] = d.delta_bound.get_str();
  j["closed_form_bound"] = d.closed_form_bound.get_str();
  return j;
}

inline ordered_json to_json(const CircuitMetrics& m) {
  ordered_json j;
  j["size_L"] = m.size_L;
  j["nonscalar_depth_ell"] = m.nonscalar_depth_ell;
  j["nonscalar_size"] = m.nonscalar_size;
  return j;
}

inline ordered_json to_json(const RunReport& r, bool with_timings = false) {
  ordered_json j;
  j["empty"] = r.empty();
  j["q"] = to_json(r.representation.q);
  ordered_json params = ordered_json::array();
  for (const auto& p : r.representation.params) params.push_back(to_json(p));
  j["params"] = params;
  ordered_json pts = ordered_json::array();
  for (const auto& pt : r.solutions.points) {
    ordered_json pj;
    pj["interval"] = to_json(pt.root_interval);
    pj["thom"] = pt.thom_code;
    ordered_json box = ordered_json::array();
    for (const auto& b : pt.box) box.push_back(to_json(b));
    pj["box"] = box;
    pts.push_back(pj);
  }
  j["points"] = pts;
  j["hypotheses"] = to_json(r.hypothesis);
  j["degrees"] = to_json(r.degrees);
  j["seed"] = r.seed;
  j["retries"] = r.retries;

  ordered_json sep = ordered_json::array();
  for (const auto& c : r.representation.separating_form) sep.push_back(to_string(c));
  j["separating_form"] = sep;
  ordered_json coords;
  coords["identity"] = r.coordinates.is_identity();
  ordered_json z = ordered_json::array();
  for (const auto& v : r.coordinates.z) z.push_back(to_string(v));
  coords["z"] = z;
  j["coordinates"] = coords;
  ordered_json charts;
  std::size_t skipped = 0, empty = 0;
  for (const auto& c : r.charts) {
    if (c.status == ChartStatus::skipped) ++skipped;
    if (c.status == ChartStatus::empty) ++empty;
  }
  charts["total"] = r.charts.size();
  charts["used"] = r.charts_used;
  charts["empty"] = empty;
  charts["skipped"] = skipped;
  j["charts"] = charts;
  ordered_json cert;
  cert["membership"] = r.certificate_ok;
  cert["degree_bounds"] = r.degree_bounds_ok;
  if (r.empty()) {
    cert["root_bound"] = to_string(r.solutions.root_bound);
    cert["sturm_count"] = r.solutions.sturm_count;
  }
  j["certificate"] = cert;
  j["conclusion"] = r.conclusion();
  if (r.circuit_metrics) j["circuit"] = to_json(*r.circuit_metrics);
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  if (with_timings) {
    ordered_json t;
    for (const auto& [stage, secs] : r.timings) t[stage] = secs;
    j["timings"] = t;
  }
  return j;
}

inline std::string emit_json(const RunReport& r, bool with_timings = false) { return to_json(r, with_timings).dump(2) + "\n"; }

inline std::string emit_text(const RunReport& r) {
  std::ostringstream out;
  const std::size_t n = r.representation.params.size();
  out << "separating form T = " << [&] {
    MultiPoly l(n);
    for (std::size_t k = 0; k < n; ++k) l += MultiPoly::variable(n, k) * r.representation.separating_form[k];
    return l.to_string();
  }() << "\n";
  out << "q(T) = " << r.representation.q.to_string() << "   (degree " << r.representation.degree() << ")\n";
  for (std::size_t k = 0; k < n; ++k)
    out << "X" << k + 1 << " = " << r.representation.params[k].to_string() << "\n";
  out << "charts: " << r.charts.size() << " total, " << r.charts_used << " with solutions; retries: " << r.retries
      << "\n";
  out << "hypotheses: regular sequence " << to_string(r.hypothesis.regular_sequence) << ", smooth on reals "
      << to_string(r.hypothesis.smooth_on_reals) << ", compactness " << r.hypothesis.compactness << "\n";
  out << "degree bounds: deg q = " << r.representation.degree() << " <= D_top = " << r.degrees.polar_bound.get_str()
      << " <= " << r.degrees.closed_form_bound.get_str() << (r.degree_bounds_ok ? "" : "  VIOLATED") << "\n";
  out << "membership certificate: " << (r.certificate_ok ? "ok" : "FAILED") << "\n";
  if (r.empty()) {
    out << r.conclusion() << "\n";
  } else {
    out << r.solutions.points.size() << " real point(s):\n";
    std::size_t idx = 0;
    for (const auto& pt : r.solutions.points) {
      out << "  [" << ++idx << "] T in (" << to_display(pt.root_interval.lo) << ", " << to_display(pt.root_interval.hi)
          << "), thom (";
      for (std::size_t t = 0; t < pt.thom_code.size(); ++t) out << (t ? "," : "") << pt.thom_code[t];
      out << ")\n";
      for (std::size_t k = 0; k < pt.box.size(); ++k)
        out << "      X" << k + 1 << " in [" << pt.box[k].lo.get_d() << ", " << pt.box[k].hi.get_d() << "]\n";
    }
  }
  for (const auto& [stage, secs] : r.timings) out << "time " << stage << ": " << secs << " s\n";
  return out.str();
}

}  // namespace polarsolve

#endif  // POLARSOLVE_REPORT_HPP
