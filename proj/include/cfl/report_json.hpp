#ifndef CFL_REPORT_JSON_HPP
#define CFL_REPORT_JSON_HPP

// Canonical JSON for every report type: object keys sorted, reals
// rounded to 12 significant digits, arrays in index order. NaN and
// infinities are rejected.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfl/cliques.hpp"
#include "cfl/error.hpp"
#include "cfl/lp_factor.hpp"
#include "cfl/pipeline.hpp"
#include "cfl/spectral.hpp"

namespace cfl {

using Json = nlohmann::json;  // std::map backed, so keys come out sorted

class SerializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double canonical_real(double x) {
  if (!std::isfinite(x)) throw SerializationError("non-finite real cannot be serialized");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

inline Json real(double x) { return Json(canonical_real(x)); }

inline Json reals(const std::vector<double>& xs) {
  Json a = Json::array();
  for (const double x : xs) a.push_back(real(x));
  return a;
}

namespace json_detail {

inline void check_finite(const Json& j) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw SerializationError("non-finite real cannot be serialized");
  if (j.is_structured())
    for (const auto& item : j) check_finite(item);
}

inline std::string tuple_key(std::span<const Vertex> c) {
  std::string key;
  for (const Vertex v : c) key += (key.empty() ? "" : ",") + std::to_string(v);
  return key;
}

}  // namespace json_detail

namespace json_detail {

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string out(buf);
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

/// Same layout as Json::dump(2), except that floats are printed with
/// %.12g; the library printer is not always shortest.
inline void write(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write(value, depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out += ",\n";
      out += pad;
      write(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    out += format_real(j.get<double>());
  } else {
    out += j.dump();
  }
}

}  // namespace json_detail

/// Canonical bytes: two-space indentation, floats to 12 significant
/// digits, and a trailing newline.
inline std::string serialize_report(const Json& j) {
  json_detail::check_finite(j);
  std::string out;
  json_detail::write(j, 0, out);
  return out + "\n";
}

inline Json to_json(const SpectralCert& c) {
  return {{"n", c.n},
          {"d", c.d},
          {"lambda", real(c.lambda)},
          {"method", to_string(c.method)},
          {"residual", real(c.residual)},
          {"mu_second", real(c.mu_second)},
          {"mu_last", real(c.mu_last)},
          {"trivial_gap", c.trivial_gap}};
}

inline Json to_json(const MixingAuditReport& r) {
  return {{"samples", r.samples},
          {"max_violation", real(r.max_violation)},
          {"violated", r.violated},
          {"worst_a_size", r.worst_a_size},
          {"worst_b_size", r.worst_b_size}};
}

inline Json to_json(const HypothesisReport& h) {
  return {{"t", h.t},
          {"n", h.n},
          {"d", h.d},
          {"lambda", real(h.lambda)},
          {"c", real(h.c)},
          {"lambda_bound", real(h.lambda_bound)},
          {"beta", real(h.beta)},
          {"delta", real(h.delta)},
          {"dense_threshold", real(h.dense_threshold)},
          {"sparse_threshold", real(h.sparse_threshold)},
          {"degree_floor", real(h.degree_floor)},
          {"degree_floor_sharp", real(h.degree_floor_sharp)},
          {"lambda_ok", h.lambda_ok},
          {"dense_ok", h.dense_ok},
          {"sparse_ok", h.sparse_ok},
          {"branch", to_string(h.branch)}};
}

inline Json to_json(const CliqueWindow& w) {
  return {{"count", w.count}, {"lower", real(w.lower)}, {"upper", real(w.upper)}, {"within", w.within},
          {"ratio", real(w.ratio)}};
}

inline Json to_json(const PropertyPReport& r) {
  Json j{{"t", r.t},           {"D", r.D},         {"Dprime", r.Dprime},     {"n", r.n},
         {"u0_size", r.u0_size}, {"required", r.required}, {"trials", r.trials}, {"failures", r.failures},
         {"min_family", r.min_family}, {"witness", nullptr}};
  if (r.witness) j["witness"] = {{"u", r.witness->u}, {"u0", r.witness->u0}, {"family_size", r.witness->family_size}};
  return j;
}

inline Json to_json(const SpanAuditReport& r) {
  Json j{{"t", r.t}, {"size", r.size}, {"trials", r.trials}, {"failures", r.failures}, {"witness", nullptr}};
  if (r.witness) j["witness"] = *r.witness;
  return j;
}

/// Clique weights keyed by "v1,v2,...", zeros below `tol` omitted.
inline Json clique_weights(const CliqueSet& cliques, const std::vector<double>& f, double tol) {
  Json j = Json::object();
  for (CliqueId id = 0; id < cliques.size(); ++id)
    if (f[static_cast<std::size_t>(id)] > tol) j[json_detail::tuple_key(cliques.clique(id))] = real(f[static_cast<std::size_t>(id)]);
  return j;
}

inline Json to_json(const CliqueSet& cliques, const PrimalSolution& p, double tol) {
  return {{"objective", real(p.objective)}, {"f", clique_weights(cliques, p.f, tol)}};
}

inline Json to_json(const WeightedGraph& wg, const DualSolution& d, double tol) {
  Json h = Json::object();
  for (EdgeId e = 0; e < wg.num_edges(); ++e)
    if (d.h[static_cast<std::size_t>(e)] > tol) {
      const auto& ed = wg.graph().edge(e);
      h[std::to_string(ed.u) + "," + std::to_string(ed.v)] = real(d.h[static_cast<std::size_t>(e)]);
    }
  return {{"objective", real(d.objective)}, {"g", reals(d.g)}, {"h", h}};
}

inline Json to_json(const CliqueSet& cliques, const FactorCert& c, double tol) {
  return {{"has_factor", c.has_factor},
          {"t_star", real(c.t_star)},
          {"slack", real(c.slack)},
          {"per_vertex_load", reals(c.per_vertex_load)},
          {"policy", to_string(c.policy)},
          {"dual_objective", real(c.dual_objective)},
          {"max_relative_pair_load", real(c.max_relative_pair_load)},
          {"f", clique_weights(cliques, c.f, tol)}};
}

inline Json to_json(const LpPropertyReport& r) {
  Json sweep = Json::array();
  for (const auto& [threshold, size] : r.v1_sweep) sweep.push_back({{"threshold", real(threshold)}, {"size", size}});
  return {{"n", r.n},
          {"t", r.t},
          {"t_star", real(r.t_star)},
          {"t_integral", real(r.t_integral)},
          {"lower_by_integral", r.lower_by_integral},
          {"upper_by_size", r.upper_by_size},
          {"restriction", r.restriction},
          {"restriction_feasible", r.restriction_feasible},
          {"restricted_value", real(r.restricted_value)},
          {"restricted_t_star", real(r.restricted_t_star)},
          {"restriction_ok", r.restriction_ok},
          {"v1_size", r.v1_size},
          {"lower_by_support", r.lower_by_support},
          {"v1_sweep", sweep},
          {"all_ok", r.all_ok()}};
}

inline Json to_json(const SlacknessReport& r) {
  return {{"objective_gap", real(r.objective_gap)}, {"worst_slack", real(r.worst_slack)},
          {"active_vertices", r.active_vertices},   {"active_edges", r.active_edges},
          {"active_cliques", r.active_cliques},     {"ok", r.ok}};
}

inline Json to_json(const RichFactorReport& r) {
  return {{"t", r.t},
          {"alpha", real(r.alpha)},
          {"D", r.D},
          {"rich_edges", r.rich_edges},
          {"family_required", r.family_required},
          {"family_min", r.family_min},
          {"family_short_vertices", r.family_short_vertices},
          {"families_ok", r.families_ok},
          {"span", to_json(r.span)},
          {"span_ok", r.span_ok},
          {"property", to_json(r.property)},
          {"property_ok", r.property_ok},
          {"hypotheses_ok", r.hypotheses_ok},
          {"has_factor", r.factor.has_factor},
          {"t_star", real(r.factor.t_star)},
          {"slack", real(r.factor.slack)}};
}

inline Json to_json(const DenseRound& r) {
  return {{"index", r.index},
          {"t_star", real(r.t_star)},
          {"has_factor", r.has_factor},
          {"integral", r.integral},
          {"rich_edges", r.rich_edges},
          {"max_decrement_residual", real(r.max_decrement_residual)},
          {"max_clamp_violation", real(r.max_clamp_violation)}};
}

inline Json to_json(const SplitBalance& s) {
  return {{"expected", real(s.expected)}, {"sigma", real(s.sigma)}, {"part_edges", s.part_edges},
          {"max_z", real(s.max_z)},       {"outside_5_sigma", s.outside_5_sigma}};
}

inline Json to_json(const SparsePart& p) {
  return {{"index", p.index},
          {"edges", p.edges},
          {"cliques", p.cliques},
          {"min_vertex_cliques", p.min_vertex_cliques},
          {"max_vertex_cliques", p.max_vertex_cliques},
          {"has_factor", p.has_factor},
          {"integral", p.integral},
          {"t_star", real(p.t_star)}};
}

inline Json to_json(const ConcentrationReport& r) {
  return {{"applicable", r.applicable},
          {"ell", r.ell},
          {"k", real(r.k)},
          {"degree_lower", real(r.degree_lower)},
          {"degree_upper", real(r.degree_upper)},
          {"min_degree", r.min_degree},
          {"max_degree", r.max_degree},
          {"mean_degree", real(r.mean_degree)},
          {"outside_band", r.outside_band},
          {"isolated", r.isolated},
          {"codegree_bound", real(r.codegree_bound)},
          {"max_codegree", r.max_codegree},
          {"codegree_ok", r.codegree_ok},
          {"flagged", r.flagged}};
}

inline Json to_json(const MatchingResult& m) {
  return {{"n", m.n},
          {"matched", m.matched},
          {"uncovered", m.uncovered},
          {"uncovered_count", m.uncovered_count},
          {"nibble_rounds", m.nibble_rounds},
          {"from_nibble", m.from_nibble},
          {"from_greedy", m.from_greedy},
          {"improved_by", m.improved_by}};
}

inline Json to_json(const PipelineReport& r) {
  Json stages{{"hypothesis_check", to_json(r.hypothesis)},
              {"max_edge_load", real(r.max_edge_load)},
              {"max_factors_per_clique", r.max_factors_per_clique},
              {"hf_hyperedges", r.hf_hyperedges},
              {"concentration", to_json(r.concentration)},
              {"dense", nullptr},
              {"sparse", nullptr}};
  if (r.dense) {
    Json rounds = Json::array();
    for (const auto& round : r.dense->rounds) rounds.push_back(to_json(round));
    stages["dense"] = {{"alpha", real(r.dense->alpha)}, {"rounds", rounds}, {"stopped_early", r.dense->stopped_early}};
  }
  if (r.sparse) {
    Json parts = Json::array();
    for (const auto& p : r.sparse->parts) parts.push_back(to_json(p));
    stages["sparse"] = {{"split_balance", to_json(r.sparse->balance)}, {"parts", parts},
                        {"failed_parts", r.sparse->failed_parts}};
  }
  const auto& c = r.config;
  Json params{{"n", r.n},
              {"d", r.d},
              {"t", r.t},
              {"lambda", real(r.lambda)},
              {"ell", r.ell_target},
              {"ell_achieved", r.ell_achieved},
              {"seed", r.seed},
              {"mode", to_string(r.mode)},
              {"mode_requested", to_string(r.mode_requested)},
              {"alpha", c.alpha ? real(*c.alpha) : Json(nullptr)},
              {"epsilon", real(c.epsilon)},
              {"matching", to_string(c.match)},
              {"improve", c.improve},
              {"policy", to_string(c.policy)},
              {"prefer_integral", c.prefer_integral},
              {"tol", real(c.tol)}};
  return {{"parameters", params},
          {"stages", stages},
          {"result", to_json(r.matching)},
          {"uncovered_count", r.matching.uncovered_count},
          {"uncovered_fraction", real(r.uncovered_fraction)},
          {"asymptotic_bound", real(r.asymptotic_bound)},
          {"asymptotic_bound_vacuous", r.asymptotic_bound_vacuous},
          {"within_asymptotic_bound", r.within_asymptotic_bound},
          {"matching_wiring", {{"delta_prime", real(r.delta_prime)}, {"gamma", real(r.gamma)},
                               {"codegree_constant", real(r.codegree_constant)}}}};
}

}  // namespace cfl

#endif  // CFL_REPORT_JSON_HPP
