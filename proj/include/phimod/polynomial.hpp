#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "phimod/errors.hpp"
#include "phimod/matrix.hpp"
#include "phimod/rational.hpp"

namespace phimod {

/// Univariate polynomial over Q, coefficients lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }
  /// x - root
  static Polynomial linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }
  static Polynomial monomial(const Rational& c, std::size_t deg) {
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Polynomial monic() const {
    if (is_zero()) throw ZeroPolynomial();
    Rational inv = Rational(1) / leading();
    Polynomial out = *this;
    for (auto& x : out.c_) x *= inv;
    return out;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Horner evaluation at a square matrix.
  Matrix operator()(const Matrix& m) const {
    if (!m.is_square()) throw DimensionMismatch("polynomial evaluated at non-square matrix");
    Matrix acc(m.rows(), m.cols());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * m;
      for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += *it;
    }
    return acc;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }
  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
      const Rational& a = c_[static_cast<std::size_t>(i)];
      if (a.is_zero()) continue;
      Rational mag = abs(a);
      if (s.empty()) {
        if (a.sign() < 0) s += "-";
      } else {
        s += a.sign() < 0 ? " - " : " + ";
      }
      bool unit = mag.is_one();
      if (!unit || i == 0) s += mag.str();
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

inline DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw ZeroPolynomial();
  std::vector<Rational> r = a.coeffs();
  const long db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  Rational inv = Rational(1) / b.leading();
  for (long i = a.degree(); i >= db; --i) {
    Rational f = r[static_cast<std::size_t>(i)] * inv;
    if (f.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = f;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

inline Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).quotient; }
inline Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

inline bool divides(const Polynomial& d, const Polynomial& f) { return (f % d).is_zero(); }

/// Monic gcd (zero if both are zero).
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

inline Polynomial pow(const Polynomial& base, unsigned exp) {
  Polynomial result = Polynomial::constant(1);
  for (unsigned i = 0; i < exp; ++i) result *= base;
  return result;
}

/// det(x I - m), computed by Faddeev-LeVerrier (exact over Q).
inline Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    Rational tr;
    Matrix amk = m * mk;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

/// Lower convex hull of the points (i, v_p(a_i)) and the slopes read off it.
///
/// A segment from (i, v_i) to (j, v_j) contributes the slope (v_i - v_j)/(j - i)
/// with multiplicity j - i; these are the valuations of the roots, so the
/// leftmost segment carries the largest root valuation.
struct NewtonPolygon {
  struct Vertex {
    long degree;
    long valuation;
    friend bool operator==(const Vertex&, const Vertex&) = default;
  };
  struct Segment {
    Rational slope;
    long multiplicity;
    friend bool operator==(const Segment&, const Segment&) = default;
  };

  std::vector<Vertex> vertices;
  std::vector<Segment> segments;  // in polygon order: root valuations decreasing
  long zero_roots = 0;            // multiplicity of the root 0 (valuation +infinity)

  long degree() const {
    long d = zero_roots;
    for (const auto& s : segments) d += s.multiplicity;
    return d;
  }
  /// Slopes with multiplicity, increasing.
  std::vector<Rational> slope_multiset() const {
    std::vector<Rational> out;
    for (const auto& s : segments)
      for (long i = 0; i < s.multiplicity; ++i) out.push_back(s.slope);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline NewtonPolygon newton_polygon(const Polynomial& f, const PrimeContext& ctx) {
  if (f.is_zero()) throw ZeroPolynomial();
  std::vector<NewtonPolygon::Vertex> pts;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    if (!f.coeffs()[i].is_zero())
      pts.push_back({static_cast<long>(i), finite_valuation(f.coeffs()[i], ctx)});

  // Monotone chain, keeping only strict turns so every vertex is a genuine corner.
  std::vector<NewtonPolygon::Vertex> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // cross((b - a), (pt - a)) <= 0 means b is not strictly below segment a-pt
      Integer cross = Integer(b.degree - a.degree) * (pt.valuation - a.valuation) -
                      Integer(b.valuation - a.valuation) * (pt.degree - a.degree);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }

  NewtonPolygon poly;
  poly.vertices = hull;
  poly.zero_roots = hull.front().degree;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    long run = hull[k + 1].degree - hull[k].degree;
    poly.segments.push_back(
        {Rational(Integer(hull[k].valuation - hull[k + 1].valuation), Integer(run)), run});
  }
  return poly;
}

}  // namespace phimod
