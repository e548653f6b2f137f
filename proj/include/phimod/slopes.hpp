#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phimod/factor.hpp"
#include "phimod/polynomial.hpp"

namespace phimod {

inline constexpr long kDefaultPrecision = 50;

struct SlopeFactor {
  Rational slope;
  Polynomial factor;  // monic; exact, or a p-adic approximation when `approximate`
  bool approximate = false;
};

struct SlopeFactorization {
  std::vector<SlopeFactor> factors;  // slopes strictly decreasing
  long precision = kDefaultPrecision;

  bool exact() const {
    return std::none_of(factors.begin(), factors.end(), [](const SlopeFactor& f) { return f.approximate; });
  }
};

namespace detail {

/// The element of Z[1/p] congruent to x modulo p^n (x in Q, viewed in Q_p).
inline Rational truncate_padic(const Rational& x, long n, const PrimeContext& ctx) {
  if (x.is_zero()) return x;
  const long v = finite_valuation(x, ctx);
  if (v >= n) return Rational(0);
  const Integer p = ctx.prime();
  Integer pv;
  mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v >= 0 ? v : -v));
  Rational unit = v >= 0 ? x / Rational(pv) : x * Rational(pv);
  Integer mod;
  mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(n - v));
  Integer u = mod_sym(unit.num() * inverse_mod(unit.den(), mod), mod);
  return v >= 0 ? Rational(u * pv) : Rational(u, pv);
}

inline Polynomial truncate_padic(const Polynomial& f, long n, const PrimeContext& ctx) {
  std::vector<Rational> c;
  for (const auto& a : f.coeffs()) c.push_back(truncate_padic(a, n, ctx));
  return Polynomial(std::move(c));
}

/// min over coefficients of v_p; +infinity encoded as nullopt.
inline std::optional<long> poly_valuation(const Polynomial& f, const PrimeContext& ctx) {
  std::optional<long> v;
  for (const auto& a : f.coeffs())
    if (!a.is_zero()) {
      long va = finite_valuation(a, ctx);
      if (!v || va < *v) v = va;
    }
  return v;
}

/// Solves g*a + h*b = e with deg a < deg h, deg b < deg g (Sylvester system).
inline std::optional<std::pair<Polynomial, Polynomial>> solve_bezout(const Polynomial& g, const Polynomial& h,
                                                                     const Polynomial& e) {
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  const std::size_t dh = static_cast<std::size_t>(h.degree());
  const std::size_t n = dg + dh;
  Matrix sys(n, n);
  // unknowns: a_0..a_{dh-1}, then b_0..b_{dg-1}
  for (std::size_t j = 0; j < dh; ++j)
    for (std::size_t i = 0; i <= dg; ++i) sys(i + j, j) = g.coeff(i);
  for (std::size_t j = 0; j < dg; ++j)
    for (std::size_t i = 0; i <= dh; ++i) sys(i + j, dh + j) = h.coeff(i);
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = e.coeff(i);
  if (determinant(sys).is_zero()) return std::nullopt;
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  std::vector<Rational> a(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(dh));
  std::vector<Rational> b(x->begin() + static_cast<std::ptrdiff_t>(dh), x->end());
  return std::make_pair(Polynomial(std::move(a)), Polynomial(std::move(b)));
}

/// Splits monic f at the Newton-polygon vertex of degree k into monic g
/// (degree k, the larger root valuations) and h, with f = g h mod p^precision.
inline std::pair<Polynomial, Polynomial> hensel_split(const Polynomial& f, long k, const PrimeContext& ctx,
                                                      long precision) {
  const auto& c = f.coeffs();
  const Rational ak = c[static_cast<std::size_t>(k)];
  std::vector<Rational> gc(c.begin(), c.begin() + k + 1);
  for (auto& x : gc) x /= ak;
  std::vector<Rational> hc(c.begin() + k, c.end());
  Polynomial g(std::move(gc));
  Polynomial h(std::move(hc));

  const int max_iter = 8 + 2 * static_cast<int>(std::bit_width(static_cast<unsigned long>(precision)));
  for (int it = 0; it < max_iter; ++it) {
    Polynomial err = truncate_padic(f - g * h, precision, ctx);
    if (err.is_zero()) return {g, h};
    auto step = solve_bezout(g, h, err);
    if (!step)
      throw PrecisionExhausted("Hensel lifting lost separation of the slope factors (resultant vanished) at precision " +
                                   std::to_string(precision),
                               precision);
    g = truncate_padic(g + step->second, precision, ctx);
    h = truncate_padic(h + step->first, precision, ctx);
    // keep them monic: truncation never touches the leading 1
  }
  throw PrecisionExhausted("Hensel lifting did not converge to precision " + std::to_string(precision) +
                               "; a higher --precision is needed",
                           precision);
}

/// Pure-slope p-adic factors of a monic polynomial, one per polygon segment.
inline std::vector<SlopeFactor> split_by_polygon(Polynomial f, const PrimeContext& ctx, long precision) {
  std::vector<SlopeFactor> out;
  for (;;) {
    auto np = newton_polygon(f, ctx);
    if (np.segments.size() <= 1) {
      out.push_back({np.segments.front().slope, f, true});
      return out;
    }
    long k = np.vertices[1].degree;
    auto [g, h] = hensel_split(f, k, ctx, precision);
    auto gnp = newton_polygon(g, ctx);
    if (gnp.segments.size() != 1 || gnp.segments.front().slope != np.segments.front().slope)
      throw PrecisionExhausted("slope separation not achieved at precision " + std::to_string(precision), precision);
    out.push_back({np.segments.front().slope, g, true});
    f = h;
  }
}

/// Rational reconstruction of u mod m: a/b with |a|, |b| <= sqrt(m/2).
inline std::optional<Rational> rational_reconstruct(const Integer& u, const Integer& m) {
  Integer bound = sqrt(m / 2);
  Integer r0 = m, r1 = mod_pos(u, m), t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  return Rational(r1, t1);
}

}  // namespace detail

/// Splits a monic polynomial with nonzero constant term into factors of a
/// single Newton slope. Irreducible rational factors are grouped by slope
/// exactly; a rational factor that is not slope-pure is split p-adically by
/// Hensel lifting and the resulting factors are flagged approximate.
inline SlopeFactorization slope_factorization(const Polynomial& f, const PrimeContext& ctx,
                                              long precision = kDefaultPrecision) {
  if (f.is_zero()) throw ZeroPolynomial();
  if (!f.is_monic()) throw PreconditionBreach("slope_factorization needs a monic polynomial");
  if (f.coeff(0).is_zero()) throw PreconditionBreach("slope_factorization needs a nonzero constant term");
  if (precision < 1) throw BadParameters("precision must be positive");

  struct Group {
    Polynomial product = Polynomial::constant(1);
    bool approximate = false;
  };
  std::map<Rational, Group, std::greater<>> groups;
  for (const auto& fac : factor_rational(f)) {
    auto np = newton_polygon(fac.poly, ctx);
    if (np.segments.size() == 1) {
      auto& grp = groups[np.segments.front().slope];
      grp.product *= pow(fac.poly, fac.multiplicity);
      continue;
    }
    for (const auto& piece : detail::split_by_polygon(fac.poly, ctx, precision)) {
      auto& grp = groups[piece.slope];
      for (unsigned i = 0; i < fac.multiplicity; ++i)
        grp.product = detail::truncate_padic(grp.product * piece.factor, precision, ctx);
      grp.approximate = true;
    }
  }
  SlopeFactorization out;
  out.precision = precision;
  for (auto& [slope, grp] : groups) out.factors.push_back({slope, grp.product, grp.approximate});
  return out;
}

/// Attempts to round an approximate factor to an exact rational factor of f:
/// rational reconstruction of every coefficient modulo p^precision, accepted
/// only if the result divides f exactly.
inline std::optional<Polynomial> certify_exact_factor(const SlopeFactor& factor, const Polynomial& f,
                                                      const PrimeContext& ctx, long precision) {
  if (!factor.approximate) return factor.factor;
  const Integer p = ctx.prime();
  std::vector<Rational> coeffs;
  for (const auto& a : factor.factor.coeffs()) {
    if (a.is_zero()) {
      coeffs.emplace_back(0);
      continue;
    }
    // a = u / p^k with u integral; reconstruct u modulo p^(precision + k).
    long k = std::max(0L, -finite_valuation(a, ctx));
    Integer pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    Rational u = a * Rational(pk);
    if (!u.is_integer()) return std::nullopt;
    Integer m;
    mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(precision + k));
    auto r = detail::rational_reconstruct(u.num(), m);
    if (!r) return std::nullopt;
    coeffs.push_back(*r / Rational(pk));
  }
  Polynomial cand(std::move(coeffs));
  if (cand.degree() < 1 || !divides(cand, f)) return std::nullopt;
  return cand;
}

}  // namespace phimod
