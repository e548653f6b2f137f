#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phimod/admissibility.hpp"
#include "phimod/module.hpp"

namespace phimod {

struct EndRingResult {
  std::size_t dimension = 0;
  std::vector<Matrix> basis;
  bool used_filtration = false;
};

/// Q_p-linear endomorphisms: f phi = phi f, f N = N f and, optionally,
/// f(Fil^d) inside Fil^d at every jump.
inline EndRingResult endomorphism_ring(const FilteredPhiNModule& m, bool respect_filtration) {
  const std::size_t n = m.dim;
  const std::size_t unknowns = n * n;  // f(i, j) at index i * n + j
  std::vector<Vector> rows;
  auto commute = [&](const Matrix& op) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vector eq(unknowns);
        for (std::size_t k = 0; k < n; ++k) {
          eq[a * n + k] += op(k, b);  // (f op)(a, b)
          eq[k * n + b] -= op(a, k);  // (op f)(a, b)
        }
        rows.push_back(std::move(eq));
      }
  };
  commute(m.phi);
  commute(m.mono);
  if (respect_filtration) {
    for (const auto& step : m.fil.steps()) {
      if (step.subspace.is_full()) continue;
      Matrix ann = step.subspace.annihilator();
      for (std::size_t r = 0; r < ann.rows(); ++r)
        for (const auto& u : step.subspace.basis_vectors()) {
          Vector eq(unknowns);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) eq[i * n + j] = ann(r, i) * u[j];
          rows.push_back(std::move(eq));
        }
    }
  }
  EndRingResult out;
  out.used_filtration = respect_filtration;
  Matrix system = rows.empty() ? Matrix(0, unknowns) : Matrix::from_rows(rows, unknowns);
  for (const auto& v : null_space_basis(system)) {
    Matrix f(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) f(i, j) = v[i * n + j];
    out.basis.push_back(std::move(f));
  }
  out.dimension = out.basis.size();
  return out;
}

/// One constraint on an unknown entry of an endomorphism of M (x) K.
struct SemilinearConstraint {
  enum class Form { SigmaScale, LinearZero, LinearTie, Fixed };
  std::string unknown;
  Form form;
  Rational scale;       // SigmaScale: sigma(u) = scale * u
  std::string other;    // LinearTie: u = factor * other
  Rational factor = 1;

  std::string str() const {
    switch (form) {
      case Form::SigmaScale: return "sigma(" + unknown + ") = " + scale.str() + "*" + unknown;
      case Form::LinearZero: return unknown + " = 0";
      case Form::LinearTie:
        return unknown + " = " + (factor.is_one() ? "" : factor.str() + "*") + other;
      default: return "sigma(" + unknown + ") = " + unknown;
    }
  }
};

enum class UnknownStatus { Zero, QpLine, Tied, Undecided };

inline const char* to_string(UnknownStatus s) {
  switch (s) {
    case UnknownStatus::Zero: return "zero";
    case UnknownStatus::QpLine: return "qp_line";
    case UnknownStatus::Tied: return "tied";
    default: return "undecided";
  }
}

struct UnknownResolution {
  std::string name;
  std::size_t row = 0;  // coefficient of e_row in f(e_col)
  std::size_t col = 0;
  UnknownStatus status = UnknownStatus::Undecided;
  std::string tied_to;  // Tied: u = factor * tied_to, tied_to is a QpLine (or Undecided) unknown
  Rational factor = 1;
  std::string rule;     // why
};

struct SemilinearSolution {
  std::optional<std::size_t> qp_dimension;  // absent when an unknown is Undecided
  std::vector<UnknownResolution> per_unknown;      // column-major: f(e_1) coefficients first
  std::vector<SemilinearConstraint> constraints;   // in derivation order
  std::vector<std::string> trace;
  bool changed_basis = false;                      // phi was diagonalized first

  const UnknownResolution& at(const std::string& name) const {
    for (const auto& u : per_unknown)
      if (u.name == name) return u;
    throw std::out_of_range("no unknown named " + name);
  }
};

namespace detail {

/// Basis in which phi is diagonal, if phi is diagonalizable over Q.
inline std::optional<Matrix> rational_eigenbasis(const Matrix& phi) {
  const std::size_t n = phi.rows();
  std::vector<Vector> cols;
  for (const auto& r : rational_roots(characteristic_polynomial(phi)))
    for (auto& v : null_space_basis(phi - r * Matrix::identity(n))) cols.push_back(std::move(v));
  if (cols.size() != n) return std::nullopt;
  return Matrix::from_columns(cols, n);
}

inline std::string unknown_name(std::size_t i, std::size_t j, std::size_t n) {
  if (n == 2) {
    static const char* names[2][2] = {{"x", "z"}, {"y", "w"}};
    return names[i][j];
  }
  return "x" + std::to_string(i + 1) + std::to_string(j + 1);
}

}  // namespace detail

/// Endomorphisms of M (x) K for an unspecified finite unramified K, where
/// phi acts as phi (x) sigma. For diagonal phi = diag(d_1..d_n) the entry
/// x_ij (coefficient of e_i in f(e_j)) satisfies sigma(x_ij) = (d_j/d_i) x_ij;
/// commuting with N gives Q_p-linear relations. Resolution: a scale of
/// nonzero valuation forces 0 (sigma preserves valuations), scale 1 means the
/// entry lies in Q_p, any other unit scale is left Undecided.
inline SemilinearSolution semilinear_endomorphism_dimension(const FilteredPhiNModule& m) {
  const std::size_t n = m.dim;
  SemilinearSolution sol;
  Matrix phi = m.phi;
  Matrix mono = m.mono;
  if (!phi.is_diagonal()) {
    auto basis = detail::rational_eigenbasis(phi);
    if (!basis) throw NotTriangular("phi is not diagonalizable over Q_p-rational eigenvectors");
    Matrix inv = inverse(*basis);
    phi = inv * phi * *basis;
    mono = inv * mono * *basis;
    sol.changed_basis = true;
    sol.trace.push_back("phi diagonalized in a rational eigenbasis");
  }

  // Unknown k <-> (i, j), column-major.
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) pos.emplace_back(i, j);
  const std::size_t count = pos.size();
  auto index_of = [&](std::size_t i, std::size_t j) { return j * n + i; };
  std::vector<std::string> names;
  for (auto [i, j] : pos) names.push_back(detail::unknown_name(i, j, n));

  std::vector<Rational> scale(count);
  for (std::size_t k = 0; k < count; ++k) scale[k] = phi(pos[k].second, pos[k].second) / phi(pos[k].first, pos[k].first);

  // f N - N f = 0, as rows over the unknowns.
  std::vector<Vector> eqs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector eq(count);
      for (std::size_t k = 0; k < n; ++k) {
        eq[index_of(a, k)] += mono(k, b);
        eq[index_of(k, b)] -= mono(a, k);
      }
      eqs.push_back(std::move(eq));
    }

  std::vector<bool> zero(count, false);
  std::vector<std::string> zero_rule(count);
  std::map<std::size_t, std::pair<std::size_t, Rational>> tie;  // pivot -> (free, factor)

  // Each derived fact is filed under a phase so the trace reads in the
  // order: N-constraints, ties, sigma-fixed entries, valuation-forced zeros.
  enum Phase { kNZero, kTie, kFixed, kValuation, kMismatch, kUndecided };
  std::vector<std::pair<Phase, SemilinearConstraint>> facts;
  std::vector<std::pair<Phase, std::string>> notes;

  auto mark_zero = [&](std::size_t k, const std::string& rule) {
    if (zero[k]) return false;
    zero[k] = true;
    zero_rule[k] = rule;
    return true;
  };

  for (bool changed = true; changed;) {
    changed = false;
    tie.clear();
    std::vector<std::size_t> live;
    for (std::size_t k = 0; k < count; ++k)
      if (!zero[k]) live.push_back(k);
    Matrix sys(eqs.size(), live.size());
    for (std::size_t r = 0; r < eqs.size(); ++r)
      for (std::size_t c = 0; c < live.size(); ++c) sys(r, c) = eqs[r][live[c]];
    Matrix red = rref(sys);
    bool wide = false;
    for (std::size_t r = 0; r < red.rows(); ++r) {
      std::vector<std::size_t> nz;
      for (std::size_t c = 0; c < live.size(); ++c)
        if (!red(r, c).is_zero()) nz.push_back(c);
      if (nz.size() == 1) {
        std::size_t k = live[nz[0]];
        facts.push_back({kNZero, {names[k], SemilinearConstraint::Form::LinearZero, 0, "", 1}});
        notes.push_back({kNZero, "N-commutation: " + names[k] + " = 0"});
        changed |= mark_zero(k, "N-commutation");
      } else if (nz.size() == 2) {
        std::size_t u = live[nz[0]], v = live[nz[1]];
        tie[u] = {v, -red(r, nz[1])};
      } else {
        wide = true;
      }
    }
    if (changed) continue;

    // Tied unknowns with different sigma-scales must vanish: (c_u - c_v) u = 0.
    for (auto& [u, tv] : tie) {
      auto [v, a] = tv;
      if (scale[u] != scale[v]) {
        notes.push_back({kMismatch, "tie " + names[u] + " = " + a.str() + "*" + names[v] +
                                        " joins different sigma-scales => both 0"});
        changed |= mark_zero(u, "tie with a different sigma-scale");
        changed |= mark_zero(v, "tie with a different sigma-scale");
      }
    }
    if (changed) continue;

    // R1: sigma(u) = c u with v_p(c) != 0 forces u = 0.
    for (std::size_t k = 0; k < count; ++k) {
      if (zero[k] || scale[k].is_one() || finite_valuation(scale[k], m.ctx) == 0) continue;
      facts.push_back({kValuation, {names[k], SemilinearConstraint::Form::SigmaScale, scale[k], "", 1}});
      notes.push_back({kValuation, "phi-commutation: sigma(" + names[k] + ") = " + scale[k].str() + "*" + names[k] +
                                       ", v_p(" + scale[k].str() + ") = " +
                                       std::to_string(finite_valuation(scale[k], m.ctx)) + " != 0 => " + names[k] +
                                       " = 0"});
      changed |= mark_zero(k, "R1: sigma preserves valuations");
    }
    if (!changed && wide)
      throw NotTriangular("commutation system does not reduce to single-unknown constraints and ties");
  }

  for (auto& [u, tv] : tie) {
    SemilinearConstraint c{names[u], SemilinearConstraint::Form::LinearTie, 0, names[tv.first], tv.second};
    facts.push_back({kTie, c});
    notes.push_back({kTie, "N-commutation: " + c.str()});
  }

  std::vector<bool> is_pivot(count, false);
  for (auto& [u, tv] : tie) is_pivot[u] = true;

  bool undecided = false;
  std::size_t lines = 0;
  std::vector<UnknownResolution> res(count);
  for (std::size_t k = 0; k < count; ++k) {
    res[k].name = names[k];
    res[k].row = pos[k].first;
    res[k].col = pos[k].second;
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (zero[k] || is_pivot[k]) continue;
    if (scale[k].is_one()) {
      facts.push_back({kFixed, {names[k], SemilinearConstraint::Form::Fixed, 1, "", 1}});
      notes.push_back({kFixed, "phi-commutation: sigma(" + names[k] + ") = " + names[k] + " => " + names[k] +
                                   " in Q_p"});
      res[k].status = UnknownStatus::QpLine;
      res[k].rule = "R2: fixed by sigma";
      ++lines;
    } else {
      facts.push_back({kUndecided, {names[k], SemilinearConstraint::Form::SigmaScale, scale[k], "", 1}});
      notes.push_back({kUndecided, "phi-commutation: sigma(" + names[k] + ") = " + scale[k].str() + "*" + names[k] +
                                       " with a unit scale != 1: undecided"});
      res[k].status = UnknownStatus::Undecided;
      res[k].rule = "R3: unit scale other than 1";
      undecided = true;
    }
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (zero[k]) {
      res[k].status = UnknownStatus::Zero;
      res[k].rule = zero_rule[k];
    } else if (is_pivot[k]) {
      res[k].status = UnknownStatus::Tied;
      res[k].tied_to = names[tie[k].first];
      res[k].factor = tie[k].second;
      res[k].rule = "N-commutation";
    }
  }
  std::stable_sort(facts.begin(), facts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::stable_sort(notes.begin(), notes.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& f : facts) sol.constraints.push_back(std::move(f.second));
  for (auto& t : notes) sol.trace.push_back(std::move(t.second));
  sol.per_unknown = std::move(res);
  if (!undecided) sol.qp_dimension = lines;
  return sol;
}

/// Module-side hypotheses of the Wedderburn argument: no proper weakly
/// admissible submodule (exactly certified) and scalar endomorphisms after
/// generic unramified base change.
inline bool scalar_image_certificate(const FilteredPhiNModule& m, const SearchOptions& opt = {}) {
  auto subs = weakly_admissible_submodules(m, opt);
  if (!subs.module_weakly_admissible)
    throw PreconditionBreach("scalar_image_certificate needs a certified weakly admissible module");
  if (!subs.certifies_irreducible()) return false;
  auto sol = semilinear_endomorphism_dimension(m);
  return sol.qp_dimension && *sol.qp_dimension == 1;
}

}  // namespace phimod
