#pragma once

// ModuleDocument: the UTF-8 JSON form of a filtered (phi, N)-module.
//
//   {"dim": 2, "filtration": [{"basis": [["1","0"],["0","1"]], "degree": 0}, ...],
//    "n": [["0","0"],["1","0"]], "p": 5, "phi": [["25","0"],["0","5"]]}
//
// Rationals are strings ("a" or "a/b"), matrices row-major, the filtration
// is listed at its jumps only. Output is canonical: sorted keys, reduced
// rationals, each filtration basis in reduced row-echelon form.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phimod/module.hpp"

namespace phimod {

using Json = nlohmann::json;

namespace detail {

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Rational rational_field(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError("field '" + where + "': expected a rational string like \"3/4\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError("field '" + where + "': " + e.what());
  }
}

inline Matrix matrix_field(const Json& j, const std::string& where, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError("field '" + where + "': expected an array of " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    std::string rw = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols)
      throw ParseError("field '" + rw + "': expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_field(row[c], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline long integer_field(const Json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ParseError("field '" + key + "': missing");
  const auto& j = doc[key];
  if (!j.is_number_integer()) throw ParseError("field '" + key + "': expected an integer");
  return j.get<long>();
}

}  // namespace detail

inline Json subspace_to_json(const Subspace& s) { return detail::matrix_to_json(s.basis()); }

inline Json to_json(const FilteredPhiNModule& m) {
  Json fil = Json::array();
  for (const auto& step : m.fil.steps())
    fil.push_back({{"degree", step.degree}, {"basis", subspace_to_json(step.subspace)}});
  return {{"p", m.ctx.p()},
          {"dim", m.dim},
          {"phi", detail::matrix_to_json(m.phi)},
          {"n", detail::matrix_to_json(m.mono)},
          {"filtration", std::move(fil)}};
}

/// Canonical text: two-space indent, sorted keys, trailing newline.
inline std::string to_document(const FilteredPhiNModule& m) { return to_json(m).dump(2) + "\n"; }

inline FilteredPhiNModule from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected a JSON object");
  long p = detail::integer_field(doc, "p");
  long dim = detail::integer_field(doc, "dim");
  if (dim < 0) throw ParseError("field 'dim': must be >= 0");
  const auto n = static_cast<std::size_t>(dim);
  for (const char* key : {"phi", "n", "filtration"})
    if (!doc.contains(key)) throw ParseError(std::string("field '") + key + "': missing");
  Matrix phi = detail::matrix_field(doc["phi"], "phi", n, n);
  Matrix mono = detail::matrix_field(doc["n"], "n", n, n);

  const auto& jf = doc["filtration"];
  if (!jf.is_array()) throw ParseError("field 'filtration': expected an array of {degree, basis}");
  std::vector<Filtration::Step> steps;
  for (std::size_t k = 0; k < jf.size(); ++k) {
    std::string where = "filtration[" + std::to_string(k) + "]";
    const auto& js = jf[k];
    if (!js.is_object() || !js.contains("degree") || !js.contains("basis"))
      throw ParseError("field '" + where + "': expected {\"degree\": int, \"basis\": [...]}");
    if (!js["degree"].is_number_integer()) throw ParseError("field '" + where + ".degree': expected an integer");
    const auto& jb = js["basis"];
    if (!jb.is_array()) throw ParseError("field '" + where + ".basis': expected an array of row vectors");
    Matrix rows = detail::matrix_field(jb, where + ".basis", jb.size(), n);
    steps.push_back({js["degree"].get<long>(), Subspace::row_space(rows)});
  }
  try {
    return {PrimeContext(p), std::move(phi), std::move(mono), Filtration::normalized(n, std::move(steps))};
  } catch (const BadParameters& e) {
    std::string what = e.what();
    throw ParseError((what.find("prime") != std::string::npos ? "field 'p': " : "field 'filtration': ") + what);
  }
}

/// Parses document text; JSON syntax errors carry nlohmann's line/column.
inline FilteredPhiNModule parse_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("JSON syntax: ") + e.what());
  }
  return from_json(doc);
}

}  // namespace phimod
