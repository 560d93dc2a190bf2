#pragma once

// JSON forms of every report.  Documents carry a top-level schema_version.

#include <optional>
#include <string>

#include <json.hpp>

#include "gafcell/bounds.hpp"
#include "gafcell/geometry.hpp"
#include "gafcell/protocol.hpp"
#include "gafcell/sim.hpp"
#include "gafcell/verify.hpp"

namespace gafcell {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace jsonio {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

template <class E, class Parse>
E parse_enum(const json& j, Parse parse, const char* what) {
  const std::string s = j.get<std::string>();
  const auto v = parse(s);
  if (!v) throw InvalidArgument(std::string("unknown ") + what + " '" + s + "'");
  return *v;
}

}  // namespace jsonio

// enums as strings
inline void to_json(json& j, ShapeKind v) { j = std::string(to_string(v)); }
inline void from_json(const json& j, ShapeKind& v) { v = jsonio::parse_enum<ShapeKind>(j, parse_shape_kind, "shape"); }
inline void to_json(json& j, Protocol v) { j = std::string(to_string(v)); }
inline void from_json(const json& j, Protocol& v) { v = jsonio::parse_enum<Protocol>(j, parse_protocol, "protocol"); }
inline void to_json(json& j, Binding v) { j = std::string(to_string(v)); }
inline void from_json(const json& j, Binding& v) {
  v = jsonio::parse_enum<Binding>(
      j,
      [](std::string_view s) -> std::optional<Binding> {
        for (Binding b : {Binding::ReqI, Binding::ReqII, Binding::Identical})
          if (to_string(b) == s) return b;
        return std::nullopt;
      },
      "binding");
}
inline void to_json(json& j, Agreement v) { j = std::string(to_string(v)); }
inline void from_json(const json& j, Agreement& v) {
  v = jsonio::parse_enum<Agreement>(
      j,
      [](std::string_view s) -> std::optional<Agreement> {
        for (Agreement a : {Agreement::Match, Agreement::Mismatch, Agreement::NoReference})
          if (to_string(a) == s) return a;
        return std::nullopt;
      },
      "agreement");
}
inline void to_json(json& j, NodeState v) { j = std::string(to_string(v)); }
inline void from_json(const json& j, NodeState& v) { v = jsonio::parse_enum<NodeState>(j, parse_node_state, "state"); }

inline void to_json(json& j, const Vec3& v) { j = json::array({v.x, v.y, v.z}); }
inline void from_json(const json& j, Vec3& v) { v = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

inline void to_json(json& j, const SubcellRegime& r) {
  if (r.is_finite()) {
    j = {{"kind", "finite"}, {"subcell_size", r.subcell_size()}};
  } else {
    j = {{"kind", "infinitesimal"}};
  }
}
inline void from_json(const json& j, SubcellRegime& r) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") {
    r = SubcellRegime::finite(j.at("subcell_size").get<double>());
  } else if (kind == "infinitesimal") {
    r = SubcellRegime::infinitesimal();
  } else {
    throw InvalidArgument("unknown subcell regime '" + kind + "'");
  }
}

inline void to_json(json& j, const ConstraintReport& r) {
  j = {{"protocol", r.protocol},
       {"shape", r.shape},
       {"range", r.range},
       {"regime", r.regime},
       {"req1_max_size_param", r.req1_max_size_param},
       {"req2_max_size_param", r.req2_max_size_param},
       {"binding", r.binding},
       {"combined_max_size_param", r.combined_max_size_param},
       {"max_cell_measure", r.max_cell_measure},
       {"req1_measure", r.req1_measure},
       {"req2_measure", r.req2_measure},
       {"published_measure", jsonio::opt(r.published_measure)},
       {"agreement", r.agreement},
       {"agreement_details", r.agreement_details},
       {"lattice_max_size_param", jsonio::opt(r.lattice_max_size_param)},
       {"lattice_quotient", jsonio::opt(r.lattice_quotient)}};
}
inline void from_json(const json& j, ConstraintReport& r) {
  j.at("protocol").get_to(r.protocol);
  j.at("shape").get_to(r.shape);
  j.at("range").get_to(r.range);
  j.at("regime").get_to(r.regime);
  j.at("req1_max_size_param").get_to(r.req1_max_size_param);
  j.at("req2_max_size_param").get_to(r.req2_max_size_param);
  j.at("binding").get_to(r.binding);
  j.at("combined_max_size_param").get_to(r.combined_max_size_param);
  j.at("max_cell_measure").get_to(r.max_cell_measure);
  j.at("req1_measure").get_to(r.req1_measure);
  j.at("req2_measure").get_to(r.req2_measure);
  r.published_measure = jsonio::get_opt<double>(j, "published_measure");
  j.at("agreement").get_to(r.agreement);
  j.at("agreement_details").get_to(r.agreement_details);
  r.lattice_max_size_param = jsonio::get_opt<double>(j, "lattice_max_size_param");
  r.lattice_quotient = jsonio::get_opt<int>(j, "lattice_quotient");
}

inline void to_json(json& j, const Table1Row& r) {
  j = {{"label", r.label}, {"protocol", r.protocol}, {"shape", r.shape}, {"max_measure", r.max_measure}};
}
inline void from_json(const json& j, Table1Row& r) {
  j.at("label").get_to(r.label);
  j.at("protocol").get_to(r.protocol);
  j.at("shape").get_to(r.shape);
  j.at("max_measure").get_to(r.max_measure);
}

inline void to_json(json& j, const LifetimeRow& r) {
  j = {{"shape", r.shape}, {"cell_measure", r.cell_measure}, {"percent_of_bound", r.percent_of_bound}};
}
inline void from_json(const json& j, LifetimeRow& r) {
  j.at("shape").get_to(r.shape);
  j.at("cell_measure").get_to(r.cell_measure);
  j.at("percent_of_bound").get_to(r.percent_of_bound);
}

inline void to_json(json& j, const TheoremBound& b) {
  j = {{"dimension", b.dimension},
       {"range", b.range},
       {"single_cell_max", b.single_cell_max},
       {"delta", b.delta},
       {"asymptotic_avg", b.asymptotic_avg}};
}
inline void from_json(const json& j, TheoremBound& b) {
  j.at("dimension").get_to(b.dimension);
  j.at("range").get_to(b.range);
  j.at("single_cell_max").get_to(b.single_cell_max);
  j.at("delta").get_to(b.delta);
  j.at("asymptotic_avg").get_to(b.asymptotic_avg);
}

inline void to_json(json& j, const VolumeEstimate& v) {
  j = {{"value", v.value}, {"standard_error", v.standard_error}, {"samples", v.samples}};
}
inline void from_json(const json& j, VolumeEstimate& v) {
  j.at("value").get_to(v.value);
  j.at("standard_error").get_to(v.standard_error);
  j.at("samples").get_to(v.samples);
}

inline void to_json(json& j, const Comparison& c) {
  j = {{"quantity", c.quantity},     {"closed_form", c.closed_form}, {"sampled", c.sampled},
       {"relative_error", c.relative_error}, {"tolerance", c.tolerance},     {"pass", c.pass}};
}
inline void from_json(const json& j, Comparison& c) {
  j.at("quantity").get_to(c.quantity);
  j.at("closed_form").get_to(c.closed_form);
  j.at("sampled").get_to(c.sampled);
  j.at("relative_error").get_to(c.relative_error);
  j.at("tolerance").get_to(c.tolerance);
  j.at("pass").get_to(c.pass);
}

inline void to_json(json& j, const MetricsVerification& m) {
  j = {{"shape", m.shape}, {"checks", m.checks}, {"pass", m.pass()}};
}
inline void from_json(const json& j, MetricsVerification& m) {
  j.at("shape").get_to(m.shape);
  j.at("checks").get_to(m.checks);
}

inline void to_json(json& j, const ConstraintVerification& v) {
  j = {{"report", v.report},
       {"req1_at_max", v.req1_at_max},
       {"req2_at_max", v.req2_at_max},
       {"req1_at_overshoot", v.req1_at_overshoot},
       {"req2_at_overshoot", v.req2_at_overshoot},
       {"pass", v.pass()}};
}
inline void from_json(const json& j, ConstraintVerification& v) {
  j.at("report").get_to(v.report);
  j.at("req1_at_max").get_to(v.req1_at_max);
  j.at("req2_at_max").get_to(v.req2_at_max);
  j.at("req1_at_overshoot").get_to(v.req1_at_overshoot);
  j.at("req2_at_overshoot").get_to(v.req2_at_overshoot);
}

inline void to_json(json& j, const Lemma1Verification& v) {
  j = {{"cells", v.cells},
       {"closed_form", v.closed_form},
       {"estimate", v.estimate},
       {"relative_error", v.relative_error},
       {"tolerance", v.tolerance},
       {"pass", v.pass()}};
}
inline void from_json(const json& j, Lemma1Verification& v) {
  j.at("cells").get_to(v.cells);
  j.at("closed_form").get_to(v.closed_form);
  j.at("estimate").get_to(v.estimate);
  j.at("relative_error").get_to(v.relative_error);
  j.at("tolerance").get_to(v.tolerance);
}

inline void to_json(json& j, const AuditRecord& a) {
  j = {{"time", a.time},
       {"active_count", a.active_count},
       {"live_count", a.live_count},
       {"nonempty_cells", a.nonempty_cells},
       {"exactly_one_active", a.exactly_one_active},
       {"req1_worst", a.req1_worst},
       {"req2_worst", a.req2_worst},
       {"req1_pass", a.req1_pass},
       {"req2_pass", a.req2_pass},
       {"uncovered_cells", a.uncovered_cells}};
}
inline void from_json(const json& j, AuditRecord& a) {
  j.at("time").get_to(a.time);
  j.at("active_count").get_to(a.active_count);
  j.at("live_count").get_to(a.live_count);
  j.at("nonempty_cells").get_to(a.nonempty_cells);
  j.at("exactly_one_active").get_to(a.exactly_one_active);
  j.at("req1_worst").get_to(a.req1_worst);
  j.at("req2_worst").get_to(a.req2_worst);
  j.at("req1_pass").get_to(a.req1_pass);
  j.at("req2_pass").get_to(a.req2_pass);
  j.at("uncovered_cells").get_to(a.uncovered_cells);
}

inline void to_json(json& j, const CellDeath& d) { j = {{"cell", d.cell}, {"time", d.time}}; }
inline void from_json(const json& j, CellDeath& d) {
  j.at("cell").get_to(d.cell);
  j.at("time").get_to(d.time);
}

inline void to_json(json& j, const SimReport& r) {
  j = {{"seed", r.seed},
       {"nodes", r.nodes},
       {"time_step", r.time_step},
       {"end_time", r.end_time},
       {"cells", r.cells},
       {"nonempty_cells", r.nonempty_cells},
       {"lifetime_first_cell_death", r.lifetime_first_cell_death},
       {"censored", r.censored},
       {"lifetime_model_estimate", r.lifetime_model_estimate},
       {"initial_energy", r.initial_energy},
       {"energy_consumed", r.energy_consumed},
       {"energy_from_draws", r.energy_from_draws},
       {"req1_pass_rate", r.req1_pass_rate},
       {"req2_pass_rate", r.req2_pass_rate},
       {"single_active_fraction", r.single_active_fraction},
       {"audits", r.audits},
       {"cell_deaths", r.cell_deaths}};
}
inline void from_json(const json& j, SimReport& r) {
  j.at("seed").get_to(r.seed);
  j.at("nodes").get_to(r.nodes);
  j.at("time_step").get_to(r.time_step);
  j.at("end_time").get_to(r.end_time);
  j.at("cells").get_to(r.cells);
  j.at("nonempty_cells").get_to(r.nonempty_cells);
  j.at("lifetime_first_cell_death").get_to(r.lifetime_first_cell_death);
  j.at("censored").get_to(r.censored);
  j.at("lifetime_model_estimate").get_to(r.lifetime_model_estimate);
  j.at("initial_energy").get_to(r.initial_energy);
  j.at("energy_consumed").get_to(r.energy_consumed);
  j.at("energy_from_draws").get_to(r.energy_from_draws);
  j.at("req1_pass_rate").get_to(r.req1_pass_rate);
  j.at("req2_pass_rate").get_to(r.req2_pass_rate);
  j.at("single_active_fraction").get_to(r.single_active_fraction);
  j.at("audits").get_to(r.audits);
  j.at("cell_deaths").get_to(r.cell_deaths);
}

inline void to_json(json& j, const LifetimeSummary& s) {
  j = {{"label", s.label},
       {"cell_measure", s.cell_measure},
       {"lifetimes", s.lifetimes},
       {"mean", s.mean},
       {"stddev", s.stddev},
       {"ci_low", s.ci_low},
       {"ci_high", s.ci_high},
       {"censored_runs", s.censored_runs},
       {"predicted_ratio", s.predicted_ratio},
       {"measured_ratio", s.measured_ratio},
       {"ratio_ci_low", s.ratio_ci_low},
       {"ratio_ci_high", s.ratio_ci_high},
       {"relative_deviation", s.relative_deviation}};
}
inline void from_json(const json& j, LifetimeSummary& s) {
  j.at("label").get_to(s.label);
  j.at("cell_measure").get_to(s.cell_measure);
  j.at("lifetimes").get_to(s.lifetimes);
  j.at("mean").get_to(s.mean);
  j.at("stddev").get_to(s.stddev);
  j.at("ci_low").get_to(s.ci_low);
  j.at("ci_high").get_to(s.ci_high);
  j.at("censored_runs").get_to(s.censored_runs);
  j.at("predicted_ratio").get_to(s.predicted_ratio);
  j.at("measured_ratio").get_to(s.measured_ratio);
  j.at("ratio_ci_low").get_to(s.ratio_ci_low);
  j.at("ratio_ci_high").get_to(s.ratio_ci_high);
  j.at("relative_deviation").get_to(s.relative_deviation);
}

inline void to_json(json& j, const LifetimeComparison& c) {
  j = {{"seeds", c.seeds}, {"reference", c.reference}, {"confidence", c.confidence}, {"rows", c.rows}};
}
inline void from_json(const json& j, LifetimeComparison& c) {
  j.at("seeds").get_to(c.seeds);
  j.at("reference").get_to(c.reference);
  j.at("confidence").get_to(c.confidence);
  j.at("rows").get_to(c.rows);
}

// Wraps a payload as a versioned document.
template <class T>
json document(const std::string& kind, const T& payload) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"data", payload}};
}

template <class T>
T from_document(const json& doc, const std::string& kind) {
  if (doc.at("schema_version").get<int>() != kSchemaVersion) throw InvalidArgument("unsupported schema_version");
  if (doc.at("kind").get<std::string>() != kind) throw InvalidArgument("expected a " + kind + " document");
  return doc.at("data").get<T>();
}

}  // namespace gafcell
