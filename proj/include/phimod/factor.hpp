#pragma once

// Factorization of polynomials over Q: square-free decomposition, then
// Zassenhaus (factor mod a small prime, Hensel lift, recombine).

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "phimod/polynomial.hpp"

namespace phimod {

namespace detail {

using ZPoly = std::vector<Integer>;  // lowest degree first, trimmed

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline long deg(const ZPoly& p) { return static_cast<long>(p.size()) - 1; }

inline Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Integer mod_sym(const Integer& a, const Integer& m) {
  Integer r = mod_pos(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline ZPoly reduce(ZPoly p, const Integer& m) {
  for (auto& c : p) c = mod_pos(c, m);
  trim(p);
  return p;
}

inline ZPoly add(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (i < a.size() ? a[i] : Integer(0)) + (i < b.size() ? b[i] : Integer(0));
  return reduce(std::move(out), m);
}

inline ZPoly sub(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (i < a.size() ? a[i] : Integer(0)) - (i < b.size() ? b[i] : Integer(0));
  return reduce(std::move(out), m);
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return reduce(std::move(out), m);
}

inline ZPoly scale(const ZPoly& a, const Integer& s, const Integer& m) {
  ZPoly out = a;
  for (auto& c : out) c *= s;
  return reduce(std::move(out), m);
}

inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("element not invertible modulo m");
  return inv;
}

/// Division by a polynomial whose leading coefficient is a unit mod m.
inline std::pair<ZPoly, ZPoly> divmod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r = reduce(a, m);
  if (deg(r) < deg(b)) return {{}, r};
  Integer inv = inverse_mod(b.back(), m);
  ZPoly q(static_cast<std::size_t>(deg(r) - deg(b) + 1));
  for (long i = deg(r); i >= deg(b); --i) {
    Integer f = mod_pos(r[static_cast<std::size_t>(i)] * inv, m);
    if (f == 0) continue;
    q[static_cast<std::size_t>(i - deg(b))] = f;
    for (long j = 0; j <= deg(b); ++j) {
      auto& t = r[static_cast<std::size_t>(i - deg(b) + j)];
      t = mod_pos(t - f * b[static_cast<std::size_t>(j)], m);
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

inline ZPoly make_monic(const ZPoly& a, const Integer& m) { return scale(a, inverse_mod(a.back(), m), m); }

/// Monic gcd over the field Z/q.
inline ZPoly gcd_field(ZPoly a, ZPoly b, const Integer& q) {
  a = reduce(a, q);
  b = reduce(b, q);
  while (!b.empty()) {
    ZPoly r = divmod(a, b, q).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : make_monic(a, q);
}

/// s, t with s a + t b = 1 over Z/q (a, b coprime).
inline std::pair<ZPoly, ZPoly> bezout_field(const ZPoly& a, const ZPoly& b, const Integer& q) {
  ZPoly r0 = reduce(a, q), r1 = reduce(b, q);
  ZPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [quo, rem] = divmod(r0, r1, q);
    r0 = std::move(r1);
    r1 = std::move(rem);
    ZPoly s2 = sub(s0, mul(quo, s1, q), q);
    ZPoly t2 = sub(t0, mul(quo, t1, q), q);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (deg(r0) != 0) throw std::domain_error("bezout_field: inputs not coprime");
  Integer inv = inverse_mod(r0[0], q);
  return {scale(s0, inv, q), scale(t0, inv, q)};
}

inline ZPoly derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<unsigned long>(i);
  trim(d);
  return d;
}

inline ZPoly powmod(ZPoly base, Integer e, const ZPoly& modulus, const Integer& q) {
  ZPoly result{1};
  base = divmod(base, modulus, q).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = divmod(mul(result, base, q), modulus, q).second;
    e >>= 1;
    if (e > 0) base = divmod(mul(base, base, q), modulus, q).second;
  }
  return result;
}

/// Distinct-degree then equal-degree (Cantor-Zassenhaus) factorization of a
/// monic square-free polynomial over Z/q, q an odd prime.
inline std::vector<ZPoly> factor_mod_prime(const ZPoly& f, const Integer& q, std::mt19937_64& rng) {
  std::vector<std::pair<ZPoly, long>> ddf;
  ZPoly rest = f;
  ZPoly xq{0, 1};
  for (long d = 1; 2 * d <= deg(rest); ++d) {
    xq = powmod(xq, q, rest, q);
    ZPoly g = gcd_field(rest, sub(xq, ZPoly{0, 1}, q), q);
    if (deg(g) > 0) {
      ddf.emplace_back(g, d);
      rest = divmod(rest, g, q).first;
      xq = divmod(xq, rest, q).second;
    }
  }
  if (deg(rest) > 0) ddf.emplace_back(rest, deg(rest));

  std::vector<ZPoly> out;
  for (auto& [g, d] : ddf) {
    std::vector<ZPoly> pending{g};
    while (!pending.empty()) {
      ZPoly h = pending.back();
      pending.pop_back();
      if (deg(h) == d) {
        out.push_back(h);
        continue;
      }
      for (;;) {
        ZPoly a(static_cast<std::size_t>(deg(h)));
        for (auto& c : a) c = Integer(static_cast<unsigned long>(rng() % q.get_ui()));
        trim(a);
        if (deg(a) < 1) continue;
        Integer e = 1;
        for (long i = 0; i < d; ++i) e *= q;
        e = (e - 1) / 2;
        ZPoly b = sub(powmod(a, e, h, q), ZPoly{1}, q);
        ZPoly g1 = gcd_field(h, b, q);
        if (deg(g1) > 0 && deg(g1) < deg(h)) {
          pending.push_back(g1);
          pending.push_back(divmod(h, g1, q).first);
          break;
        }
      }
    }
  }
  return out;
}

/// One quadratic Hensel step: f = g h (mod m), s g + t h = 1 (mod m), h monic.
/// Returns the same relations modulo m^2.
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, Integer& m) {
  Integer m2 = m * m;
  ZPoly e = sub(f, mul(g, h, m2), m2);
  auto [q, r] = divmod(mul(s, e, m2), h, m2);
  ZPoly g2 = add(g, add(mul(t, e, m2), mul(q, g, m2), m2), m2);
  ZPoly h2 = add(h, r, m2);
  ZPoly b = sub(add(mul(s, g2, m2), mul(t, h2, m2), m2), ZPoly{1}, m2);
  auto [c, d] = divmod(mul(s, b, m2), h2, m2);
  s = sub(s, d, m2);
  t = sub(t, add(mul(t, b, m2), mul(c, g2, m2), m2), m2);
  g = std::move(g2);
  h = std::move(h2);
  m = m2;
}

inline Integer content(const ZPoly& f) {
  Integer c = 0;
  for (const auto& a : f) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
  return c;
}

/// Exact division over Z; nullopt if b does not divide a.
inline std::optional<ZPoly> exact_div(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  if (deg(r) < deg(b)) return r.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
  ZPoly q(static_cast<std::size_t>(deg(r) - deg(b) + 1));
  for (long i = deg(r); i >= deg(b); --i) {
    Integer& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    Integer f = top / b.back();
    q[static_cast<std::size_t>(i - deg(b))] = f;
    for (long j = 0; j <= deg(b); ++j) r[static_cast<std::size_t>(i - deg(b) + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  trim(r);
  if (!r.empty()) return std::nullopt;
  trim(q);
  return q;
}

/// Irreducible factors over Z of a primitive square-free polynomial with
/// positive leading coefficient.
inline std::vector<ZPoly> zassenhaus(ZPoly f) {
  if (deg(f) <= 1) return {f};
  const Integer lc = f.back();

  // A prime keeping f square-free with the same degree.
  Integer q = 3;
  for (;; mpz_nextprime(q.get_mpz_t(), q.get_mpz_t())) {
    if (mpz_divisible_p(lc.get_mpz_t(), q.get_mpz_t())) continue;
    ZPoly fq = reduce(f, q);
    if (deg(gcd_field(fq, derivative(fq), q)) == 0) break;
  }

  std::mt19937_64 rng(0x5eed);
  auto modular = factor_mod_prime(make_monic(reduce(f, q), q), q, rng);
  if (modular.size() == 1) return {f};

  // Coefficient bound for any factor times lc: 2^n * ||f||_2 * |lc|.
  Integer norm2 = 0;
  for (const auto& a : f) norm2 += a * a;
  Integer norm = sqrt(norm2) + 1;
  Integer bound = (Integer(1) << static_cast<unsigned long>(deg(f))) * norm * abs(lc);
  Integer target = 2 * bound + 1;

  // Lift lc * f1 * ... * fr one factor at a time, peeling off the front.
  std::vector<ZPoly> lifted;
  Integer modulus = q;
  while (modulus < target) modulus *= q;
  ZPoly remaining = f;  // congruent to lc * prod(modular[k..]) mod q
  for (std::size_t k = 0; k + 1 < modular.size(); ++k) {
    ZPoly g = scale(modular[k], remaining.back(), q);  // carries the leading coefficient
    ZPoly h{1};
    for (std::size_t j = k + 1; j < modular.size(); ++j) h = mul(h, modular[j], q);
    auto [s, t] = bezout_field(g, h, q);
    Integer m = q;
    while (m < modulus) hensel_step(remaining, g, h, s, t, m);
    g = reduce(g, modulus);
    h = reduce(h, modulus);
    lifted.push_back(make_monic(g, modulus));
    // Continue with the monic cofactor, exact modulo `modulus`.
    remaining = h;
  }
  lifted.push_back(make_monic(remaining, modulus));

  std::vector<ZPoly> result;
  ZPoly current = f;
  std::vector<ZPoly> pool = lifted;
  std::size_t size = 1;
  while (2 * size <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      ZPoly cand{current.back()};
      for (auto i : idx) cand = mul(cand, pool[i], modulus);
      for (auto& c : cand) c = mod_sym(c, modulus);
      trim(cand);
      Integer cont = content(cand);
      for (auto& c : cand) c /= cont;
      if (auto quo = exact_div(current, cand)) {
        result.push_back(cand);
        current = *quo;
        std::vector<ZPoly> next;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
        pool = std::move(next);
        found = true;
        break;
      }
      // next combination
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (deg(current) > 0) result.push_back(current);
  return result;
}

inline ZPoly primitive_part(const Polynomial& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
  ZPoly z;
  for (const auto& c : p.coeffs()) z.push_back(c.num() * (den / c.den()));
  Integer cont = content(z);
  if (z.back() < 0) cont = -cont;
  for (auto& c : z) c /= cont;
  return z;
}

inline Polynomial to_monic_rational(const ZPoly& z) {
  std::vector<Rational> c;
  for (const auto& a : z) c.emplace_back(a);
  return Polynomial(std::move(c)).monic();
}

}  // namespace detail

struct Factor {
  Polynomial poly;  // monic irreducible over Q
  unsigned multiplicity;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Square-free decomposition (Yun): f = lc * prod a_i^i, a_i monic square-free.
inline std::vector<std::pair<Polynomial, unsigned>> squarefree_decomposition(const Polynomial& f) {
  if (f.is_zero()) throw ZeroPolynomial();
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (f.degree() == 0) return out;
  Polynomial fm = f.monic();
  Polynomial a = gcd(fm, fm.derivative());
  Polynomial b = fm / a;
  Polynomial c = fm.derivative() / a;
  Polynomial d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    Polynomial g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Monic irreducible factors over Q with multiplicity, sorted by degree then
/// coefficients. The leading coefficient of f is dropped.
inline std::vector<Factor> factor_rational(const Polynomial& f) {
  std::vector<Factor> out;
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (const auto& z : detail::zassenhaus(detail::primitive_part(part)))
      out.push_back({detail::to_monic_rational(z), mult});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    return std::lexicographical_compare(a.poly.coeffs().begin(), a.poly.coeffs().end(),
                                        b.poly.coeffs().begin(), b.poly.coeffs().end());
  });
  return out;
}

/// Distinct rational roots of f.
inline std::vector<Rational> rational_roots(const Polynomial& f) {
  std::vector<Rational> roots;
  for (const auto& fac : factor_rational(f))
    if (fac.poly.degree() == 1) roots.push_back(-fac.poly.coeff(0));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace phimod
