#pragma once

// AnalysisReport: every analysis of one module gathered into a canonical JSON
// object, plus a flat "key  value" rendering for terminals.

#include <string>
#include <vector>

#include "phimod/admissibility.hpp"
#include "phimod/dichotomy.hpp"
#include "phimod/endo.hpp"
#include "phimod/io.hpp"

namespace phimod {

struct ReportOptions {
  long precision = kDefaultPrecision;
  SearchOptions search;
  std::string input_hash;
};

inline Json subspaces_to_json(const std::vector<Subspace>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(subspace_to_json(s));
  return out;
}

inline Json validation_to_json(const ValidationReport& r) {
  Json axioms = Json::array();
  for (const auto& c : r.checks) axioms.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"ok", r.ok()}, {"axioms", std::move(axioms)}};
}

inline Json semilinear_to_json(const SemilinearSolution& s) {
  Json unknowns = Json::array();
  for (const auto& u : s.per_unknown) {
    Json j = {{"name", u.name}, {"row", u.row}, {"col", u.col}, {"status", to_string(u.status)}, {"rule", u.rule}};
    if (u.status == UnknownStatus::Tied) {
      j["tied_to"] = u.tied_to;
      j["factor"] = u.factor.str();
    }
    unknowns.push_back(std::move(j));
  }
  Json constraints = Json::array();
  for (const auto& c : s.constraints) constraints.push_back(c.str());
  return {{"qp_dimension", s.qp_dimension ? Json(*s.qp_dimension) : Json(nullptr)},
          {"unknowns", std::move(unknowns)},
          {"constraints", std::move(constraints)},
          {"trace", s.trace},
          {"changed_basis", s.changed_basis}};
}

inline Json endomorphisms_to_json(const FilteredPhiNModule& m, bool with_filtration, bool with_semilinear) {
  Json out;
  out["dim_without_filtration"] = endomorphism_ring(m, false).dimension;
  if (with_filtration) out["dim_with_filtration"] = endomorphism_ring(m, true).dimension;
  if (with_semilinear) {
    try {
      out["semilinear"] = semilinear_to_json(semilinear_endomorphism_dimension(m));
    } catch (const Error& e) {
      out["semilinear"] = {{"qp_dimension", nullptr}, {"error", e.what()}};
    }
  }
  return out;
}

inline Json theorem1_to_json(const Theorem1Check& t) {
  Json j = {{"type01", t.type01}};
  if (t.type01) j["admissibility"] = to_string(t.admissibility);
  if (!t.breach.empty()) {
    j["precondition_breach"] = t.breach;
    return j;
  }
  j["kind"] = to_string(t.witness->kind);
  j["m0"] = subspace_to_json(t.witness->m0);
  j["chain"] = subspaces_to_json(t.witness->chain);
  j["irreducible"] = t.irreducible ? Json(*t.irreducible) : Json("undecided");
  j["conclusion_holds"] = t.conclusion_holds;
  return j;
}

/// Full report. Throws PrecisionExhausted when the slope decomposition cannot
/// be made exact; the caller decides what that means.
inline Json analysis_report(const FilteredPhiNModule& m, const ReportOptions& opt) {
  Json r;
  r["header"] = {{"input_sha256", opt.input_hash},
                 {"precision", opt.precision},
                 {"seed", opt.search.seed},
                 {"trials", opt.search.trials},
                 {"p", m.ctx.p()},
                 {"dim", m.dim}};
  auto val = validate(m);
  r["validation"] = validation_to_json(val);
  if (!val.ok()) return r;

  r["numbers"] = {{"t_H", hodge_number(m)},
                  {"t_N", newton_number(m)},
                  {"hodge_tate_type", hodge_tate_type(m).str()},
                  {"type01", is_type_01(m)},
                  {"crystalline", is_crystalline(m)}};

  auto dec = slope_decomposition(m, opt.precision);
  Json parts = Json::array();
  for (const auto& part : dec.parts)
    parts.push_back({{"slope", part.slope.str()},
                     {"multiplicity", part.subspace.dim()},
                     {"subspace", subspace_to_json(part.subspace)}});
  r["slopes"] = {{"exact", dec.exact},
                 {"parts", std::move(parts)},
                 {"monodromy_lowers_slope", check_monodromy_lowers_slope(m, dec).ok()}};

  auto wa = is_weakly_admissible(m, opt.search);
  Json checked = Json::array();
  for (const auto& c : wa.checked)
    checked.push_back({{"subspace", subspace_to_json(c.subspace)}, {"t_H", c.hodge}, {"t_N", c.newton}});
  r["admissibility"] = {{"verdict", to_string(wa.verdict)},
                        {"witness", wa.witness ? subspace_to_json(*wa.witness) : Json(nullptr)},
                        {"completeness", to_string(wa.enumeration.completeness)},
                        {"method", wa.enumeration.method},
                        {"all_lines_stable", wa.enumeration.all_lines},
                        {"stable_subspaces", subspaces_to_json(wa.enumeration.subspaces)},
                        {"checked", std::move(checked)}};

  auto subs = weakly_admissible_submodules(m, opt.search);
  r["wa_submodules"] = {{"subspaces", subspaces_to_json(subs.subspaces)},
                        {"completeness", to_string(subs.completeness)},
                        {"all_lines", subs.all_lines}};

  auto strong = is_strongly_irreducible_over_unramified(m, opt.search);
  r["strong_irreducibility"] = {{"verdict", to_string(strong.verdict)}, {"reason", strong.reason}};

  auto cf = has_crystalline_filtration(m, opt.search);
  r["crystalline_filtration"] = {{"verdict", to_string(cf.verdict)}, {"chain", subspaces_to_json(cf.chain)}};

  r["dichotomy"] = theorem1_to_json(theorem1_check(m, opt.precision, opt.search));
  r["endomorphisms"] = endomorphisms_to_json(m, true, true);

  r["summary"] = {{"t_H", hodge_number(m)},
                  {"t_N", newton_number(m)},
                  {"wa", to_string(wa.verdict)},
                  {"wa_submodules", subspaces_to_json(subs.subspaces)},
                  {"crystalline_filtration", to_string(cf.verdict)},
                  {"end_dim", r["endomorphisms"]["dim_with_filtration"]}};
  return r;
}

namespace detail {

inline std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline bool is_matrix(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& row : j) {
    if (!row.is_array()) return false;
    for (const auto& x : row)
      if (!x.is_string()) return false;
  }
  return true;
}

inline void flatten(const Json& j, const std::string& key, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, out);
  } else if (is_matrix(j) && !j.empty()) {
    // subspace basis or matrix: rows inline
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) s += "; ";
      for (std::size_t c = 0; c < j[i].size(); ++c) s += (c ? " " : "") + j[i][c].get<std::string>();
    }
    out.emplace_back(key, s + "]");
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(key, j.is_array() ? "[]" : scalar_text(j));
  }
}

}  // namespace detail

/// Two-column text rendering: dotted key, value. Order follows the sorted JSON keys.
inline std::string render_table(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

}  // namespace phimod
