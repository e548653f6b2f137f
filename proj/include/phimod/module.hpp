#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "phimod/errors.hpp"
#include "phimod/matrix.hpp"
#include "phimod/polynomial.hpp"
#include "phimod/rational.hpp"
#include "phimod/subspace.hpp"

namespace phimod {

/// Decreasing exhaustive separated filtration, recorded at its jumps.
///
/// Fil^i is the subspace of the smallest listed degree >= i, and 0 beyond
/// the largest listed degree. Degrees strictly increase and subspaces
/// strictly decrease, so the encoding is unique. The zero space has no steps.
class Filtration {
 public:
  struct Step {
    long degree;
    Subspace subspace;
    friend bool operator==(const Step&, const Step&) = default;
  };

  Filtration() = default;

  /// Validates a strict encoding; throws BadParameters if it is not one.
  Filtration(std::size_t ambient_dim, std::vector<Step> steps) : n_(ambient_dim), steps_(std::move(steps)) {
    for (const auto& s : steps_)
      if (s.subspace.ambient_dim() != n_) throw DimensionMismatch("filtration step in the wrong ambient space");
    if (n_ == 0) {
      if (!steps_.empty()) throw BadParameters("the zero space carries the empty filtration");
      return;
    }
    if (steps_.empty() || !steps_.front().subspace.is_full())
      throw BadParameters("first filtration step must be the full space");
    for (std::size_t k = 1; k < steps_.size(); ++k) {
      if (steps_[k].degree <= steps_[k - 1].degree)
        throw BadParameters("filtration degrees must be strictly increasing");
      const auto& big = steps_[k - 1].subspace;
      const auto& small = steps_[k].subspace;
      if (!big.contains(small) || small.dim() == big.dim() || small.is_zero())
        throw BadParameters("filtration subspaces must be nonzero and strictly decreasing");
    }
  }

  /// Builds the strict encoding of a possibly redundant decreasing chain:
  /// repeated subspaces keep their largest degree, zero steps are dropped.
  /// The first listed subspace must be the full space (or the chain empty
  /// when the ambient space is zero).
  static Filtration normalized(std::size_t ambient_dim, std::vector<Step> steps) {
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.degree < b.degree; });
    std::vector<Step> out;
    for (auto& s : steps) {
      if (s.subspace.is_zero()) break;
      if (!out.empty() && out.back().subspace == s.subspace)
        out.back().degree = s.degree;
      else
        out.push_back(std::move(s));
    }
    return Filtration(ambient_dim, std::move(out));
  }

  /// One jump at degree 0.
  static Filtration trivial(std::size_t n) {
    if (n == 0) return Filtration(0, {});
    return Filtration(n, {{0, Subspace::full(n)}});
  }

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Step>& steps() const { return steps_; }

  Subspace at(long i) const {
    for (const auto& s : steps_)
      if (s.degree >= i) return s.subspace;
    return Subspace::zero(n_);
  }

  /// (degree, dim Fil^d / Fil^{d+1}) at every jump.
  std::vector<std::pair<long, std::size_t>> graded_dims() const {
    std::vector<std::pair<long, std::size_t>> out;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
      std::size_t next = k + 1 < steps_.size() ? steps_[k + 1].subspace.dim() : 0;
      out.emplace_back(steps_[k].degree, steps_[k].subspace.dim() - next);
    }
    return out;
  }

  friend bool operator==(const Filtration&, const Filtration&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Step> steps_;
};

/// A filtered (phi, N)-module over Q_p with rational structure matrices.
struct FilteredPhiNModule {
  PrimeContext ctx;
  std::size_t dim = 0;
  Matrix phi;   // Frobenius
  Matrix mono;  // monodromy N
  Filtration fil;

  FilteredPhiNModule(PrimeContext c, Matrix frobenius, Matrix monodromy, Filtration filtration)
      : ctx(c), dim(frobenius.rows()), phi(std::move(frobenius)), mono(std::move(monodromy)), fil(std::move(filtration)) {
    if (!phi.is_square() || !mono.is_square() || mono.rows() != dim)
      throw DimensionMismatch("phi and N must be square matrices of the same size");
  }

  friend bool operator==(const FilteredPhiNModule&, const FilteredPhiNModule&) = default;
};

/// The one-dimensional module with phi = 1, N = 0, jump at 0.
inline FilteredPhiNModule unit_module(long p) {
  return {PrimeContext(p), Matrix::identity(1), Matrix(1, 1), Filtration::trivial(1)};
}

struct AxiomCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
  }
  const AxiomCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline ValidationReport validate(const FilteredPhiNModule& m) {
  ValidationReport r;
  Rational det = determinant(m.phi);
  r.checks.push_back({"phi_invertible", !det.is_zero(), det.is_zero() ? "det(phi) = 0" : "det(phi) = " + det.str()});

  Matrix npow = matrix_power(m.mono, static_cast<unsigned>(m.dim));
  std::ostringstream nil;
  if (!npow.is_zero()) nil << "N^" << m.dim << " = " << npow;
  r.checks.push_back({"monodromy_nilpotent", npow.is_zero(), nil.str()});

  Matrix defect = Rational(m.ctx.p()) * m.phi * m.mono - m.mono * m.phi;
  std::ostringstream comm;
  if (!defect.is_zero()) comm << "p*phi*N - N*phi = " << defect;
  r.checks.push_back({"commutation", defect.is_zero(), comm.str()});

  bool fil_ok = m.fil.ambient_dim() == m.dim;
  r.checks.push_back({"filtration_dimension", fil_ok,
                      fil_ok ? "" : "filtration lives in dimension " + std::to_string(m.fil.ambient_dim())});
  return r;
}

/// sum over jumps of degree * graded dimension
inline long hodge_number(const FilteredPhiNModule& m) {
  long t = 0;
  for (auto [d, g] : m.fil.graded_dims()) t += d * static_cast<long>(g);
  return t;
}

/// v_p(det phi)
inline long newton_number(const FilteredPhiNModule& m) { return finite_valuation(determinant(m.phi), m.ctx); }

struct HodgeTateType {
  std::vector<std::pair<long, std::size_t>> jumps;  // (degree, multiplicity)

  /// "(0,3)"-style listing of the jump degrees, repeated by multiplicity.
  std::string str() const {
    std::string s = "(";
    bool first = true;
    for (auto [d, mult] : jumps)
      for (std::size_t i = 0; i < mult; ++i) {
        s += (first ? "" : ",") + std::to_string(d);
        first = false;
      }
    return s + ")";
  }
  friend bool operator==(const HodgeTateType&, const HodgeTateType&) = default;
};

inline HodgeTateType hodge_tate_type(const FilteredPhiNModule& m) { return {m.fil.graded_dims()}; }

inline bool is_type_01(const FilteredPhiNModule& m) {
  for (auto [d, g] : m.fil.graded_dims())
    if (d != 0 && d != 1) return false;
  return true;
}

inline bool is_stable(const FilteredPhiNModule& m, const Subspace& w) {
  if (w.ambient_dim() != m.dim) throw DimensionMismatch("subspace does not live in the module");
  return w.is_invariant(m.phi) && w.is_invariant(m.mono);
}

inline bool is_crystalline(const FilteredPhiNModule& m) { return m.mono.is_zero(); }

/// Express the vectors of `sub` (a subspace of w) in w's coordinates.
inline Subspace in_coordinates(const Subspace& w, const Subspace& sub) {
  std::vector<Vector> coords;
  for (const auto& v : sub.basis_vectors()) {
    auto c = w.coordinates(v);
    if (!c) throw DimensionMismatch("subspace is not contained in the coordinate space");
    coords.push_back(std::move(*c));
  }
  return Subspace::span(coords, w.dim());
}

/// Inverse of in_coordinates: embed a subspace of Q^{dim w} into the ambient space.
inline Subspace from_coordinates(const Subspace& w, const Subspace& sub) {
  return Subspace::row_space(sub.basis() * w.basis());
}

/// Submodule on a (phi, N)-stable subspace with the induced filtration Fil^d ∩ W.
inline FilteredPhiNModule submodule(const FilteredPhiNModule& m, const Subspace& w) {
  if (!is_stable(m, w)) throw NotInvariant("subspace " + w.str() + " is not (phi, N)-stable");
  std::vector<Filtration::Step> steps;
  for (const auto& s : m.fil.steps()) steps.push_back({s.degree, in_coordinates(w, intersect(s.subspace, w))});
  return {m.ctx, restrict_operator(m.phi, w), restrict_operator(m.mono, w),
          Filtration::normalized(w.dim(), std::move(steps))};
}

/// Quotient module M/W with the image filtration.
inline FilteredPhiNModule quotient(const FilteredPhiNModule& m, const Subspace& w) {
  if (!is_stable(m, w)) throw NotInvariant("subspace " + w.str() + " is not (phi, N)-stable");
  auto q = quotient_map(w);
  std::vector<Filtration::Step> steps;
  for (const auto& s : m.fil.steps()) {
    Subspace img = q.dim ? s.subspace.mapped(q.projection) : Subspace::zero(0);
    steps.push_back({s.degree, img});
  }
  return {m.ctx, q.projection * m.phi * q.lift, q.projection * m.mono * q.lift,
          Filtration::normalized(q.dim, std::move(steps))};
}

namespace detail {

using Exponent = std::vector<unsigned>;
using SymPoly = std::map<Exponent, Rational>;

/// Exponent vectors of total degree n in d variables, lexicographically
/// decreasing: e1^n first.
inline std::vector<Exponent> monomials(std::size_t d, unsigned n) {
  std::vector<Exponent> out;
  if (d == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  Exponent cur(d, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == d) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned a = left + 1; a-- > 0;) {
      cur[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, n);
  return out;
}

inline SymPoly sym_mul(const SymPoly& a, const SymPoly& b) {
  SymPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

inline SymPoly linear_form(const Vector& v) {
  SymPoly out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) {
      Exponent e(v.size(), 0);
      e[i] = 1;
      out[e] = v[i];
    }
  return out;
}

/// Product of the linear forms vs[i]^exp[i], written as a coordinate vector
/// in the monomial basis.
inline Vector monomial_product(const std::vector<Vector>& vs, const Exponent& exp, const std::vector<Exponent>& basis,
                               const std::map<Exponent, std::size_t>& index) {
  SymPoly acc;
  acc[Exponent(vs.empty() ? 0 : vs.front().size(), 0)] = 1;
  for (std::size_t i = 0; i < exp.size(); ++i) {
    SymPoly lf = linear_form(vs[i]);
    for (unsigned k = 0; k < exp[i]; ++k) acc = sym_mul(acc, lf);
  }
  Vector out(basis.size());
  for (const auto& [e, c] : acc) out[index.at(e)] = c;
  return out;
}

}  // namespace detail

/// n-th symmetric power. Basis: degree-n monomials in the standard basis,
/// lexicographically decreasing exponent vectors. phi acts multiplicatively,
/// N as a derivation, and the filtration is the convolution
/// Fil^i = sum over i1 + ... + in >= i of Fil^{i1} ... Fil^{in}.
inline FilteredPhiNModule sym_power(const FilteredPhiNModule& m, unsigned n) {
  if (n < 1) throw BadParameters("symmetric power exponent must be >= 1");
  const std::size_t d = m.dim;
  auto basis = detail::monomials(d, n);
  std::map<detail::Exponent, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  const std::size_t big = basis.size();

  std::vector<Vector> phi_cols, mono_cols;
  for (std::size_t j = 0; j < d; ++j) {
    phi_cols.push_back(m.phi.col(j));
    mono_cols.push_back(m.mono.col(j));
  }

  Matrix phi(big, big), mono(big, big);
  for (std::size_t c = 0; c < big; ++c) {
    const auto& e = basis[c];
    Vector img = detail::monomial_product(phi_cols, e, basis, index);
    for (std::size_t r = 0; r < big; ++r) phi(r, c) = img[r];

    // Leibniz: N(x^e) = sum_i e_i * N(x_i) * x^(e - 1_i)
    for (std::size_t i = 0; i < d; ++i) {
      if (e[i] == 0) continue;
      detail::Exponent rest = e;
      --rest[i];
      detail::SymPoly term = detail::linear_form(mono_cols[i]);
      detail::SymPoly mon;
      mon[rest] = Rational(static_cast<long>(e[i]));
      term = detail::sym_mul(term, mon);
      for (const auto& [ex, coef] : term) mono(index.at(ex), c) += coef;
    }
  }

  // Basis of M adapted to the filtration, each vector tagged with its weight
  // (the largest degree d with the vector in Fil^d).
  std::vector<Vector> adapted;
  std::vector<long> weight;
  Subspace covered = Subspace::zero(d);
  const auto& steps = m.fil.steps();
  for (std::size_t k = steps.size(); k-- > 0;) {
    for (const auto& v : steps[k].subspace.basis_vectors()) {
      if (covered.contains(v)) continue;
      adapted.push_back(v);
      weight.push_back(steps[k].degree);
      covered = sum(covered, Subspace::span({v}, d));
    }
  }

  std::vector<Filtration::Step> fsteps;
  if (d > 0) {
    auto adapted_monos = detail::monomials(d, n);
    std::vector<std::pair<long, Vector>> weighted;
    for (const auto& e : adapted_monos) {
      long w = 0;
      for (std::size_t i = 0; i < d; ++i) w += static_cast<long>(e[i]) * weight[i];
      weighted.emplace_back(w, detail::monomial_product(adapted, e, basis, index));
    }
    std::vector<long> degrees;
    for (const auto& [w, v] : weighted) degrees.push_back(w);
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    for (long deg : degrees) {
      std::vector<Vector> span;
      for (const auto& [w, v] : weighted)
        if (w >= deg) span.push_back(v);
      fsteps.push_back({deg, Subspace::span(span, big)});
    }
  }
  return {m.ctx, std::move(phi), std::move(mono), Filtration::normalized(big, std::move(fsteps))};
}

/// The two-dimensional module with phi(e1) = p b e1, phi(e2) = b e2,
/// N(e1) = e2, N(e2) = 0, Fil^i = M for i <= 0, <e1> for 1 <= i <= s, 0 above.
inline FilteredPhiNModule fm_example(long p, long s, const Rational& b) {
  PrimeContext ctx(p);
  if (s < 3 || s % 2 == 0)
    throw BadParameters("s must be an odd integer >= 3 (got s = " + std::to_string(s) + ")");
  if (b.is_zero()) throw BadParameters("b must be nonzero with v_p(b) = (s-1)/2");
  const long want = (s - 1) / 2;
  const long got = finite_valuation(b, ctx);
  if (got != want)
    throw BadParameters("b must satisfy v_p(b) = (s-1)/2 = " + std::to_string(want) + " (got v_p(b) = " +
                        std::to_string(got) + ")");
  Matrix phi{{Rational(p) * b, 0}, {0, b}};
  Matrix mono{{0, 0}, {1, 0}};
  Filtration fil(2, {{0, Subspace::full(2)}, {s, Subspace::span({{1, 0}}, 2)}});
  return {ctx, std::move(phi), std::move(mono), std::move(fil)};
}

}  // namespace phimod
