#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "phimod/factor.hpp"
#include "phimod/module.hpp"

namespace phimod {

enum class Completeness { Exact, Heuristic };

inline const char* to_string(Completeness c) { return c == Completeness::Exact ? "exact" : "heuristic"; }

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
};

/// (phi, N)-stable subspaces, sorted by dimension then canonical matrix.
/// When `all_lines` is set every line is stable (dimension 2, scalar phi,
/// N = 0) and `subspaces` lists only 0 and M.
struct StableSubspaceEnumeration {
  std::vector<Subspace> subspaces;
  Completeness completeness = Completeness::Exact;
  std::string method;  // trivial | eigen-subset | line-analysis | heuristic-search
  bool all_lines = false;
};

namespace detail {

inline std::vector<Subspace> sorted_unique(std::vector<Subspace> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Whether a nonzero rational is a square in Q_p.
inline bool is_padic_square(const Rational& d, const PrimeContext& ctx) {
  if (d.is_zero()) return true;
  const long v = finite_valuation(d, ctx);
  if (v % 2 != 0) return false;
  Rational unit = d / pow(Rational(ctx.p()), v);
  Integer ab = unit.num() * unit.den();
  if (ctx.p() == 2) return mod_pos(ab, 8) == 1;
  Integer p = ctx.prime();
  return mpz_legendre(mod_pos(ab, p).get_mpz_t(), p.get_mpz_t()) == 1;
}

/// Distinct rational eigenvalues, if phi has dim of them.
inline std::optional<std::vector<Rational>> distinct_rational_eigenvalues(const Matrix& phi) {
  auto roots = rational_roots(characteristic_polynomial(phi));
  if (roots.size() != phi.rows()) return std::nullopt;
  return roots;
}

inline Subspace eigenline(const Matrix& phi, const Rational& lambda) {
  return Subspace::kernel(phi - lambda * Matrix::identity(phi.rows()));
}

/// Smallest (phi, N)-stable subspace containing `start`.
inline Subspace stable_closure(const FilteredPhiNModule& m, Subspace start) {
  for (;;) {
    Subspace next = sum(start, sum(start.mapped(m.phi), start.mapped(m.mono)));
    if (next == start) return start;
    start = std::move(next);
  }
}

inline std::optional<StableSubspaceEnumeration> exact_line_analysis(const FilteredPhiNModule& m) {
  const auto& phi = m.phi;
  StableSubspaceEnumeration e{{Subspace::zero(2), Subspace::full(2)}, Completeness::Exact, "line-analysis", false};
  const bool scalar = phi.is_diagonal() && phi(0, 0) == phi(1, 1);
  std::vector<Subspace> lines;
  if (scalar) {
    if (m.mono.is_zero()) {
      e.all_lines = true;
      return e;
    }
    lines.push_back(Subspace::kernel(m.mono));
  } else {
    Polynomial chi = characteristic_polynomial(phi);
    auto roots = rational_roots(chi);
    if (!roots.empty()) {
      for (const auto& r : roots) lines.push_back(eigenline(phi, r));
    } else {
      Rational disc = chi.coeff(1) * chi.coeff(1) - Rational(4) * chi.coeff(0);
      // Eigenlines over Q_p that are not rational cannot be represented here.
      if (is_padic_square(disc, m.ctx)) return std::nullopt;
    }
  }
  for (const auto& l : lines)
    if (l.dim() == 1 && l.is_invariant(m.mono) && l.is_invariant(phi)) e.subspaces.push_back(l);
  e.subspaces = sorted_unique(std::move(e.subspaces));
  return e;
}

inline StableSubspaceEnumeration heuristic_search(const FilteredPhiNModule& m, const SearchOptions& opt) {
  const std::size_t n = m.dim;
  std::vector<Subspace> found{Subspace::zero(n), Subspace::full(n)};

  // Sums of primary components of phi.
  std::vector<Subspace> primary;
  for (const auto& fac : factor_rational(characteristic_polynomial(m.phi)))
    primary.push_back(Subspace::kernel(pow(fac.poly, fac.multiplicity)(m.phi)));
  if (primary.size() <= 16) {
    for (std::uint32_t mask = 1; mask < (1u << primary.size()); ++mask) {
      Subspace s = Subspace::zero(n);
      for (std::size_t i = 0; i < primary.size(); ++i)
        if (mask & (1u << i)) s = sum(s, primary[i]);
      if (s.is_invariant(m.mono)) found.push_back(s);
    }
  }

  // Stable closures of special and random vectors.
  std::vector<Vector> seeds;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(n);
    v[i] = 1;
    seeds.push_back(v);
  }
  for (const auto& v : null_space_basis(m.mono)) seeds.push_back(v);
  for (const auto& r : rational_roots(characteristic_polynomial(m.phi)))
    for (const auto& v : null_space_basis(m.phi - r * Matrix::identity(n))) seeds.push_back(v);
  for (const auto& v : seeds) found.push_back(stable_closure(m, Subspace::span({v}, n)));

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long> coeff(-2, 2);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Vector v(n);
    bool nonzero = false;
    for (auto& x : v) {
      x = coeff(rng);
      nonzero = nonzero || !x.is_zero();
    }
    if (!nonzero) continue;
    // Restrict to a found subspace half the time to reach smaller pieces.
    if (t % 2 == 1 && found.size() > 2) {
      const auto& host = found[static_cast<std::size_t>(rng() % found.size())];
      if (host.is_zero()) continue;
      Vector w(n);
      for (std::size_t i = 0; i < host.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) w[j] += v[i % n] * host.basis()(i, j);
      v = w;
    }
    found.push_back(stable_closure(m, Subspace::span({v}, n)));
    if (t % 256 == 255) found = sorted_unique(std::move(found));
  }

  // Close under sums and intersections.
  found = sorted_unique(std::move(found));
  for (bool grew = true; grew && found.size() < 512;) {
    grew = false;
    const std::size_t size = found.size();
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j)
        for (const auto& s : {sum(found[i], found[j]), intersect(found[i], found[j])})
          if (!std::binary_search(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(size), s)) {
            found.push_back(s);
            grew = true;
          }
    found = sorted_unique(std::move(found));
  }
  return {std::move(found), Completeness::Heuristic, "heuristic-search", false};
}

}  // namespace detail

/// Enumerates the (phi, N)-stable subspaces. The result is Exact when
/// dim <= 1, when phi has dim distinct rational eigenvalues, or in the
/// complete two-dimensional line analysis; otherwise it is a seeded
/// heuristic search and marked Heuristic.
inline StableSubspaceEnumeration stable_subspaces(const FilteredPhiNModule& m, const SearchOptions& opt = {}) {
  const std::size_t n = m.dim;
  if (n <= 1) {
    std::vector<Subspace> s{Subspace::zero(n)};
    if (n == 1) s.push_back(Subspace::full(1));
    return {s, Completeness::Exact, "trivial", false};
  }
  if (auto eig = detail::distinct_rational_eigenvalues(m.phi); eig && n <= 20) {
    std::vector<Subspace> lines;
    for (const auto& r : *eig) lines.push_back(detail::eigenline(m.phi, r));
    std::vector<Subspace> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Vector> vs;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t{1} << i)) vs.push_back(lines[i].basis().row(0));
      Subspace s = Subspace::span(vs, n);
      if (s.is_invariant(m.mono)) out.push_back(std::move(s));
    }
    return {detail::sorted_unique(std::move(out)), Completeness::Exact, "eigen-subset", false};
  }
  if (n == 2)
    if (auto e = detail::exact_line_analysis(m)) return *e;
  return detail::heuristic_search(m, opt);
}

enum class Verdict { WeaklyAdmissible, NotWeaklyAdmissible, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::WeaklyAdmissible: return "weakly_admissible";
    case Verdict::NotWeaklyAdmissible: return "not_weakly_admissible";
    default: return "undecided";
  }
}

struct SubobjectNumbers {
  Subspace subspace;
  long hodge;
  long newton;
};

struct AdmissibilityReport {
  Verdict verdict = Verdict::Undecided;
  std::optional<Subspace> witness;
  StableSubspaceEnumeration enumeration;
  std::vector<SubobjectNumbers> checked;  // every proper nonzero stable subspace examined
};

inline SubobjectNumbers numbers_on(const FilteredPhiNModule& m, const Subspace& w) {
  auto sub = submodule(m, w);
  return {w, hodge_number(sub), newton_number(sub)};
}

namespace detail {

/// Largest t_H over all lines: the top jump of the filtration.
inline long max_line_hodge(const FilteredPhiNModule& m) { return m.fil.steps().back().degree; }

inline Subspace line_in_top_step(const FilteredPhiNModule& m) {
  return Subspace::span({m.fil.steps().back().subspace.basis().row(0)}, m.dim);
}

}  // namespace detail

/// Decides t_H(M) = t_N(M) and t_H(W) <= t_N(W) for every stable W. Never
/// reports WeaklyAdmissible from a heuristic enumeration.
inline AdmissibilityReport is_weakly_admissible(const FilteredPhiNModule& m, const SearchOptions& opt = {}) {
  AdmissibilityReport r;
  r.enumeration = stable_subspaces(m, opt);
  if (m.dim == 0) {
    r.verdict = Verdict::WeaklyAdmissible;
    return r;
  }
  if (hodge_number(m) != newton_number(m)) {
    r.verdict = Verdict::NotWeaklyAdmissible;
    r.witness = Subspace::full(m.dim);
    return r;
  }
  for (const auto& w : r.enumeration.subspaces) {
    if (w.is_zero() || w.is_full()) continue;
    auto nums = numbers_on(m, w);
    r.checked.push_back(nums);
    if (nums.hodge > nums.newton && !r.witness) r.witness = w;
  }
  if (r.enumeration.all_lines) {
    auto line = detail::line_in_top_step(m);
    auto nums = numbers_on(m, line);
    r.checked.push_back(nums);
    // Every line has t_N = v_p(lambda); the largest t_H is the top jump.
    if (detail::max_line_hodge(m) > nums.newton) r.witness = line;
  }
  if (r.witness)
    r.verdict = Verdict::NotWeaklyAdmissible;
  else
    r.verdict = r.enumeration.completeness == Completeness::Exact ? Verdict::WeaklyAdmissible : Verdict::Undecided;
  return r;
}

struct WeaklyAdmissibleSubmodules {
  std::vector<Subspace> subspaces;  // proper, nonzero, t_H = t_N
  Completeness completeness = Completeness::Exact;
  bool all_lines = false;           // every line qualifies (scalar phi, N = 0)
  bool module_weakly_admissible = false;

  /// Certifies that no proper weakly admissible submodule exists.
  bool certifies_irreducible() const {
    return module_weakly_admissible && completeness == Completeness::Exact && subspaces.empty() && !all_lines;
  }
};

/// Proper nonzero stable W with t_H(W) = t_N(W). Inside a weakly admissible
/// module these are exactly the weakly admissible submodules.
inline WeaklyAdmissibleSubmodules weakly_admissible_submodules(const FilteredPhiNModule& m,
                                                               const SearchOptions& opt = {}) {
  auto report = is_weakly_admissible(m, opt);
  WeaklyAdmissibleSubmodules out;
  out.completeness = report.enumeration.completeness;
  out.module_weakly_admissible = report.verdict == Verdict::WeaklyAdmissible;
  for (const auto& c : report.checked)
    if (c.hodge == c.newton && !report.enumeration.all_lines) out.subspaces.push_back(c.subspace);
  if (report.enumeration.all_lines) {
    // A line L has t_N = v_p(lambda) and t_H = top jump containing L; some line
    // attains each jump degree, so one qualifies iff some jump equals t_N.
    long tn = newton_number(submodule(m, detail::line_in_top_step(m)));
    for (auto [d, g] : m.fil.graded_dims())
      if (d == tn) out.all_lines = true;
    if (!out.all_lines) out.subspaces.clear();
  }
  return out;
}

enum class Tristate { True, False, Undecided };

inline const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::True: return "true";
    case Tristate::False: return "false";
    default: return "undecided";
  }
}

struct StrongIrreducibility {
  Tristate verdict = Tristate::Undecided;
  std::string reason;
};

/// Irreducibility that survives any finite unramified coefficient extension,
/// certified when the stable-subspace enumeration cannot grow under base
/// change: (i) phi has distinct rational eigenvalues, or (ii) dim 2 with N != 0.
inline StrongIrreducibility is_strongly_irreducible_over_unramified(const FilteredPhiNModule& m,
                                                                     const SearchOptions& opt = {}) {
  if (m.dim <= 1) return {Tristate::True, "trivial: dimension <= 1 has no proper nonzero subobjects"};
  auto subs = weakly_admissible_submodules(m, opt);
  if (!subs.module_weakly_admissible) return {Tristate::Undecided, "module is not certified weakly admissible"};
  if (!subs.subspaces.empty() || subs.all_lines)
    return {Tristate::False, "a proper weakly admissible submodule already exists over Q_p"};
  if (subs.completeness != Completeness::Exact)
    return {Tristate::Undecided, "stable-subspace enumeration is heuristic"};
  if (m.dim == 2 && !m.mono.is_zero())
    return {Tristate::True, "criterion (ii): dim 2 and N != 0, every stable line lies in ker N, a line over Q_p"};
  if (detail::distinct_rational_eigenvalues(m.phi))
    return {Tristate::True,
            "criterion (i): phi has pairwise distinct rational eigenvalues, so no new eigenlines appear over any "
            "extension"};
  return {Tristate::Undecided, "no base-change certificate applies"};
}

struct CrystallineFiltration {
  Tristate verdict = Tristate::Undecided;
  std::vector<Subspace> chain;  // 0 = W_0 < ... < W_k = M when found
};

/// Chain of stable subspaces, each weakly admissible as a submodule, with N
/// vanishing on every graded piece. Depth-first in enumeration order.
inline CrystallineFiltration has_crystalline_filtration(const FilteredPhiNModule& m, const SearchOptions& opt = {}) {
  const std::size_t n = m.dim;
  if (n == 0) return {Tristate::True, {Subspace::zero(0)}};
  if (m.mono.is_zero()) return {Tristate::True, {Subspace::zero(n), Subspace::full(n)}};

  auto e = stable_subspaces(m, opt);
  if (e.completeness != Completeness::Exact) return {Tristate::Undecided, {}};
  const auto& all = e.subspaces;

  auto weakly_admissible_sub = [&](const Subspace& w) {
    auto nums = numbers_on(m, w);
    if (nums.hodge != nums.newton) return false;
    for (const auto& u : all) {
      if (u.is_zero() || u == w || !w.contains(u)) continue;
      auto un = numbers_on(m, u);
      if (un.hodge > un.newton) return false;
    }
    return true;
  };

  std::vector<Subspace> chain{Subspace::zero(n)};
  auto dfs = [&](auto&& self, const Subspace& cur) -> bool {
    if (cur.is_full()) return true;
    for (const auto& next : all) {
      if (next.dim() <= cur.dim() || !next.contains(cur)) continue;
      // N(next) must land in cur so N vanishes on next / cur.
      if (!cur.contains(next.mapped(m.mono))) continue;
      if (!weakly_admissible_sub(next)) continue;
      chain.push_back(next);
      if (self(self, next)) return true;
      chain.pop_back();
    }
    return false;
  };
  if (dfs(dfs, chain.front())) return {Tristate::True, chain};
  return {Tristate::False, {}};
}

}  // namespace phimod
