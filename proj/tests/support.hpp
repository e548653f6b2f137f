#pragma once

// Test-side oracles and generators. Deliberately naive: they recompute
// things the library computes, by the most direct route available.

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "phimod/phimod.hpp"

namespace testing_support {

using namespace phimod;

inline std::string fixture_path(const std::string& name) { return std::string(PHIMOD_FIXTURES) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FilteredPhiNModule load_fixture(const std::string& name) { return parse_document(read_text(fixture_path(name))); }

/// v_p by repeated division of numerator and denominator.
inline long oracle_valuation(const Rational& x, long p) {
  Integer a = abs(x.num()), b = x.den();
  long v = 0;
  while (a % p == 0) { a /= p; ++v; }
  while (b % p == 0) { b /= p; --v; }
  return v;
}

/// sum_i i * (dim Fil^i - dim Fil^{i+1}) over the degree range of the jumps.
inline long oracle_hodge(const FilteredPhiNModule& m) {
  if (m.dim == 0) return 0;
  long t = 0;
  for (long i = m.fil.steps().front().degree; i <= m.fil.steps().back().degree; ++i)
    t += i * (static_cast<long>(m.fil.at(i).dim()) - static_cast<long>(m.fil.at(i + 1).dim()));
  return t;
}

inline long oracle_newton(const FilteredPhiNModule& m) { return oracle_valuation(determinant(m.phi), m.ctx.p()); }

inline bool rank_contains(const Subspace& w, const Vector& v) {
  auto rows = w.basis_vectors();
  rows.push_back(v);
  return rank(Matrix::from_rows(rows, w.ambient_dim())) == w.dim();
}

/// All spans of eigenline subsets that are N-stable. `eigenvalues` must be
/// the (distinct) eigenvalues of phi.
inline std::vector<Subspace> oracle_stable_subspaces(const Matrix& phi, const Matrix& mono,
                                                     const std::vector<Rational>& eigenvalues) {
  const std::size_t n = phi.rows();
  std::vector<Vector> lines;
  for (const auto& l : eigenvalues) {
    auto ns = null_space_basis(phi - l * Matrix::identity(n));
    lines.push_back(ns.at(0));
  }
  std::vector<Subspace> out;
  for (unsigned mask = 0; mask < (1u << lines.size()); ++mask) {
    std::vector<Vector> pick;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (mask & (1u << i)) pick.push_back(lines[i]);
    Subspace w = Subspace::span(pick, n);
    bool stable = true;
    for (const auto& v : pick)
      if (!rank_contains(w, mono * v)) stable = false;
    if (stable) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Rational> diagonal_of(const Matrix& m) {
  std::vector<Rational> d;
  for (std::size_t i = 0; i < m.rows(); ++i) d.push_back(m(i, i));
  return d;
}

inline Rational random_unit(std::mt19937_64& rng, long p) {
  std::uniform_int_distribution<long> dist(1, 7);
  long a, b;
  do a = dist(rng); while (a % p == 0);
  do b = dist(rng); while (b % p == 0);
  if (rng() % 3 != 0) b = 1;
  return Rational(rng() % 2 ? a : -a) / Rational(b);
}

inline Matrix random_integer_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix m = random_integer_matrix(rng, n, n, -2, 2);
    if (!determinant(m).is_zero()) return m;
  }
}

/// A random N with p phi N = N phi: a random integer combination of a basis
/// of the solution space of that linear system in the n^2 entries of N.
inline Matrix random_monodromy(std::mt19937_64& rng, const Matrix& phi, long p) {
  const std::size_t n = phi.rows();
  Matrix sys(n * n, n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    Matrix e(n, n);
    e(k / n, k % n) = 1;
    Matrix img = Rational(p) * phi * e - e * phi;
    for (std::size_t r = 0; r < n * n; ++r) sys(r, k) = img(r / n, r % n);
  }
  Matrix out(n, n);
  std::uniform_int_distribution<long> dist(-3, 3);
  for (const auto& v : null_space_basis(sys)) {
    Rational c = dist(rng);
    for (std::size_t k = 0; k < n * n; ++k) out(k / n, k % n) += c * v[k];
  }
  return out;
}

struct Generated {
  FilteredPhiNModule module;
  std::vector<Rational> eigenvalues;
};

/// Random type-(0,1) module of dimension <= 4: phi = P D P^-1 with D a
/// diagonal of units and p-times-units, N solved from p phi N = N phi, and
/// Fil^1 a random subspace of dimension t_N. Returns the module only when
/// it is certified weakly admissible.
inline std::optional<Generated> random_weakly_admissible_type01(std::mt19937_64& rng, long p) {
  std::size_t d = 1 + rng() % 4;
  std::vector<Rational> eig;
  std::size_t k = 0;
  while (eig.size() < d) {
    Rational u = random_unit(rng, p);
    auto absent = [&](const Rational& x) { return std::find(eig.begin(), eig.end(), x) == eig.end(); };
    if (eig.size() + 2 <= d && rng() % 2) {
      if (!absent(u) || !absent(u * Rational(p))) continue;
      eig.push_back(u);
      eig.push_back(u * Rational(p));
      ++k;
    } else {
      bool high = rng() % 2;
      Rational x = high ? u * Rational(p) : u;
      if (!absent(x)) continue;
      eig.push_back(x);
      if (high) ++k;
    }
  }
  std::shuffle(eig.begin(), eig.end(), rng);
  Matrix pm = random_invertible(rng, d);
  Matrix phi = pm * Matrix::diagonal(eig) * inverse(pm);
  Matrix mono = random_monodromy(rng, phi, p);
  PrimeContext ctx(p);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<Filtration::Step> steps;
    if (k == 0) {
      steps = {{0, Subspace::full(d)}};
    } else if (k == d) {
      steps = {{1, Subspace::full(d)}};
    } else {
      Subspace w = Subspace::row_space(random_integer_matrix(rng, k, d, -3, 3));
      if (w.dim() != k) continue;
      steps = {{0, Subspace::full(d)}, {1, w}};
    }
    FilteredPhiNModule m(ctx, phi, mono, Filtration(d, steps));
    if (is_weakly_admissible(m).verdict == Verdict::WeaklyAdmissible) return Generated{m, eig};
  }
  return std::nullopt;
}

inline std::vector<Generated> weakly_admissible_corpus(std::size_t count, std::uint64_t seed = 20240501) {
  std::mt19937_64 rng(seed);
  const long primes[] = {2, 3, 5, 7};
  std::vector<Generated> out;
  while (out.size() < count)
    if (auto g = random_weakly_admissible_type01(rng, primes[rng() % 4])) out.push_back(std::move(*g));
  return out;
}

}  // namespace testing_support
