#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "phimod/errors.hpp"

namespace phimod {

using Integer = mpz_class;

/// Exact rational number in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  template <class T, class U>
  Rational(const __gmp_expr<T, U>& e) : q_(e) { q_.canonicalize(); }  // NOLINT(google-explicit-constructor)

  /// Parses "a" or "a/b" (optional sign on a). Rejects b = 0 and junk.
  static Rational parse(std::string_view text) {
    auto is_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto to_int = [](std::string_view s) {
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      return Integer(std::string(s), 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      if (!is_int(text)) throw ParseError("malformed rational \"" + std::string(text) + "\"");
      return Rational(to_int(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_int(num) || den.empty() || den.front() == '-' || den.front() == '+' || !is_int(den))
      throw ParseError("malformed rational \"" + std::string(text) + "\"");
    Integer d = to_int(den);
    if (d == 0) throw ParseError("division by zero in rational \"" + std::string(text) + "\"");
    return Rational(to_int(num), d);
  }

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string str() const { return q_.get_str(10); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(Rational base, long exp) {
  if (exp < 0) {
    base = Rational(1) / base;
    exp = -exp;
  }
  Rational result(1);
  while (exp > 0) {
    if (exp & 1) result *= base;
    base *= base;
    exp >>= 1;
  }
  return result;
}

/// Deterministic primality (GMP's BPSW + Miller-Rabin is exact below 2^64).
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 50) > 0;
}

/// The fixed residue characteristic.
class PrimeContext {
 public:
  explicit PrimeContext(long p) : p_(p) {
    if (!is_prime(Integer(p))) throw BadParameters("p = " + std::to_string(p) + " is not prime");
  }
  long p() const { return p_; }
  Integer prime() const { return Integer(p_); }
  friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

 private:
  long p_;
};

/// A finite integer or +infinity (the valuation of zero).
class ExtendedInt {
 public:
  ExtendedInt(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static ExtendedInt infinity() { return ExtendedInt(); }

  bool is_infinite() const { return !value_.has_value(); }
  long value() const {
    if (!value_) throw std::logic_error("value() of +infinity");
    return *value_;
  }

  friend bool operator==(const ExtendedInt&, const ExtendedInt&) = default;
  friend std::strong_ordering operator<=>(const ExtendedInt& a, const ExtendedInt& b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *a.value_ <=> *b.value_;
  }
  friend ExtendedInt operator+(const ExtendedInt& a, const ExtendedInt& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return *a.value_ + *b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtendedInt& v) {
    return v.is_infinite() ? os << "+inf" : os << *v.value_;
  }

 private:
  ExtendedInt() = default;
  std::optional<long> value_;
};

/// Multiplicity of p in a nonzero integer.
inline long integer_valuation(Integer n, const Integer& p) {
  if (n == 0) throw std::domain_error("integer_valuation of zero");
  long v = 0;
  Integer q, r;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    if (r != 0) return v;
    n = q;
    ++v;
  }
}

/// p-adic valuation; v(0) = +infinity.
inline ExtendedInt valuation(const Rational& x, const PrimeContext& ctx) {
  if (x.is_zero()) return ExtendedInt::infinity();
  Integer p = ctx.prime();
  return integer_valuation(x.num(), p) - integer_valuation(x.den(), p);
}

/// Finite valuation of a nonzero rational.
inline long finite_valuation(const Rational& x, const PrimeContext& ctx) {
  return valuation(x, ctx).value();
}

}  // namespace phimod

template <>
struct std::hash<phimod::Rational> {
  size_t operator()(const phimod::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
