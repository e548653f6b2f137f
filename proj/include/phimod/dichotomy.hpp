#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "phimod/admissibility.hpp"
#include "phimod/module.hpp"
#include "phimod/slopes.hpp"

namespace phimod {

struct SlopePart {
  Rational slope;
  Subspace subspace;
};

struct SlopeDecomposition {
  std::vector<SlopePart> parts;  // slopes strictly increasing
  bool exact = true;             // false: some factor was rounded from a Hensel approximation
  long precision = kDefaultPrecision;

  const SlopePart* find(const Rational& slope) const {
    for (const auto& p : parts)
      if (p.slope == slope) return &p;
    return nullptr;
  }
};

/// Splits M by the slopes of phi: the slope-l part is ker g_l(phi) for the
/// slope-l factor g_l of the characteristic polynomial. Only exact factors
/// are used; an approximate factor that cannot be certified exact raises
/// PrecisionExhausted.
inline SlopeDecomposition slope_decomposition(const FilteredPhiNModule& m, long precision = kDefaultPrecision) {
  SlopeDecomposition d;
  d.precision = precision;
  if (m.dim == 0) return d;
  Polynomial chi = characteristic_polynomial(m.phi);
  auto sf = slope_factorization(chi, m.ctx, precision);
  for (const auto& f : sf.factors) {
    auto exact = certify_exact_factor(f, chi, m.ctx, precision);
    if (!exact)
      throw PrecisionExhausted("slope-" + f.slope.str() + " factor of the characteristic polynomial could not be " +
                                   "certified exact at precision " + std::to_string(precision) +
                                   "; needs precision > " + std::to_string(precision) +
                                   " (the factor is not defined over Q, so no finite precision certifies it)",
                               precision);
    if (f.approximate) d.exact = false;
    d.parts.push_back({f.slope, Subspace::kernel((*exact)(m.phi))});
  }
  std::sort(d.parts.begin(), d.parts.end(), [](const SlopePart& a, const SlopePart& b) { return a.slope < b.slope; });
  return d;
}

struct SlopeCheck {
  Rational slope;
  bool passed;
};

struct MonodromyReport {
  std::vector<SlopeCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const SlopeCheck& c) { return c.passed; });
  }
};

/// N(slope-l part) lies in the slope-(l-1) part (or is 0 when that part is absent).
inline MonodromyReport check_monodromy_lowers_slope(const FilteredPhiNModule& m, const SlopeDecomposition& d) {
  MonodromyReport r;
  for (const auto& part : d.parts) {
    const auto* target = d.find(part.slope - Rational(1));
    Subspace image = part.subspace.mapped(m.mono);
    bool ok = target ? target->subspace.contains(image) : image.is_zero();
    r.checks.push_back({part.slope, ok});
  }
  return r;
}

inline Subspace slope_zero_part(const FilteredPhiNModule& m, long precision = kDefaultPrecision) {
  auto d = slope_decomposition(m, precision);
  if (const auto* p = d.find(Rational(0))) return p->subspace;
  return Subspace::zero(m.dim);
}

struct UnitIntervalReport {
  bool passed = true;
  std::vector<Rational> slopes;  // with multiplicity, increasing
  std::string message;
};

/// Every slope of phi lies in [0, 1]. On a certified weakly admissible
/// module of Hodge-Tate type (0,1) a failure indicates a library bug.
inline UnitIntervalReport assert_slopes_in_unit_interval(const FilteredPhiNModule& m,
                                                         long precision = kDefaultPrecision,
                                                         const SearchOptions& opt = {}) {
  UnitIntervalReport r;
  for (const auto& part : slope_decomposition(m, precision).parts)
    for (std::size_t i = 0; i < part.subspace.dim(); ++i) r.slopes.push_back(part.slope);
  for (const auto& s : r.slopes)
    if (s < Rational(0) || s > Rational(1)) r.passed = false;
  if (r.passed) {
    r.message = "all slopes in [0,1]";
  } else if (is_type_01(m) && is_weakly_admissible(m, opt).verdict == Verdict::WeaklyAdmissible) {
    r.message = "BUG: weakly admissible module of type (0,1) has a slope outside [0,1]";
  } else {
    r.message = "slope outside [0,1]; consistent, since the module is not a weakly admissible type (0,1) module";
  }
  return r;
}

enum class DichotomyKind { Crystalline, ProperCrystallineSub };

inline const char* to_string(DichotomyKind k) {
  return k == DichotomyKind::Crystalline ? "crystalline" : "proper_crystalline_sub";
}

struct DichotomyWitness {
  DichotomyKind kind = DichotomyKind::Crystalline;
  Subspace m0;                               // slope-zero part (may be 0 or M)
  std::optional<FilteredPhiNModule> sub;     // module on m0
  std::optional<FilteredPhiNModule> quot;    // M / m0
  std::vector<Subspace> chain;               // crystalline filtration 0 <= m0 <= M, strict
};

/// Weakly admissible + type (0,1) forces either N = 0 or a slope-zero part
/// M0 killed by N with t_H(M0) = t_N(M0) = 0 and N = 0 on M/M0.
inline DichotomyWitness crystalline_dichotomy(const FilteredPhiNModule& m, long precision = kDefaultPrecision,
                                              const SearchOptions& opt = {}) {
  if (!is_type_01(m))
    throw PreconditionBreach("Hodge-Tate type " + hodge_tate_type(m).str() + " is not (0,1)");
  auto wa = is_weakly_admissible(m, opt);
  if (wa.verdict != Verdict::WeaklyAdmissible)
    throw PreconditionBreach(std::string("module is not certified weakly admissible (verdict: ") +
                             to_string(wa.verdict) + ")");

  const std::size_t n = m.dim;
  DichotomyWitness w;
  w.m0 = slope_zero_part(m, precision);
  if (w.m0.is_zero()) {
    // All slopes lie in (0,1], so N (which lowers slopes by 1) kills M.
    if (!m.mono.is_zero()) throw TheoremViolation("no slope-zero part but N != 0");
    w.kind = DichotomyKind::Crystalline;
    w.chain = {Subspace::zero(n), Subspace::full(n)};
    return w;
  }
  if (!w.m0.mapped(m.mono).is_zero()) throw TheoremViolation("N does not kill the slope-zero part " + w.m0.str());
  if (!is_stable(m, w.m0)) throw TheoremViolation("slope-zero part is not (phi, N)-stable");
  w.sub = submodule(m, w.m0);
  if (newton_number(*w.sub) != 0) throw TheoremViolation("t_N of the slope-zero part is nonzero");
  if (hodge_number(*w.sub) != 0)
    throw TheoremViolation("t_H of the slope-zero part is " + std::to_string(hodge_number(*w.sub)) + ", not 0");
  w.quot = quotient(m, w.m0);
  if (!w.quot->mono.is_zero()) throw TheoremViolation("N does not vanish on M / M0");

  w.kind = m.mono.is_zero() ? DichotomyKind::Crystalline : DichotomyKind::ProperCrystallineSub;
  w.chain = {Subspace::zero(n)};
  if (!w.m0.is_full()) w.chain.push_back(w.m0);
  w.chain.push_back(Subspace::full(n));
  return w;
}

/// The module-side form of "potentially semi-stable irreducible of type
/// (0,1) is potentially crystalline": weakly admissible, type (0,1) and no
/// proper weakly admissible submodule together force N = 0.
struct Theorem1Check {
  bool type01 = false;
  Verdict admissibility = Verdict::Undecided;
  std::optional<DichotomyWitness> witness;
  std::optional<bool> irreducible;  // nullopt when not certified either way
  bool conclusion_holds = true;     // irreducible => N = 0
  std::string breach;               // precondition failure, if any
};

inline Theorem1Check theorem1_check(const FilteredPhiNModule& m, long precision = kDefaultPrecision,
                                    const SearchOptions& opt = {}) {
  Theorem1Check t;
  t.type01 = is_type_01(m);
  if (!t.type01) {
    t.breach = "Hodge-Tate type " + hodge_tate_type(m).str() + " is not (0,1)";
    return t;
  }
  t.admissibility = is_weakly_admissible(m, opt).verdict;
  if (t.admissibility != Verdict::WeaklyAdmissible) {
    t.breach = std::string("module is not certified weakly admissible (verdict: ") + to_string(t.admissibility) + ")";
    return t;
  }
  t.witness = crystalline_dichotomy(m, precision, opt);
  auto subs = weakly_admissible_submodules(m, opt);
  if (subs.certifies_irreducible())
    t.irreducible = true;
  else if (!subs.subspaces.empty() || subs.all_lines)
    t.irreducible = false;
  if (t.irreducible.value_or(false) && !m.mono.is_zero()) t.conclusion_holds = false;
  return t;
}

}  // namespace phimod
