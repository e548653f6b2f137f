#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "phimod/matrix.hpp"

namespace phimod {

/// Linear subspace of Q^n, stored as the reduced row-echelon matrix whose
/// rows span it. The RREF is unique, so equality is matrix equality.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t n) { return Subspace(n, Matrix(0, n)); }
  static Subspace full(std::size_t n) { return Subspace(n, Matrix::identity(n)); }

  static Subspace span(const std::vector<Vector>& vectors, std::size_t n) {
    if (vectors.empty()) return zero(n);
    return Subspace(n, rref(Matrix::from_rows(vectors, n)));
  }
  /// Row space of `rows` (any shape with `cols() == n`).
  static Subspace row_space(const Matrix& rows) { return Subspace(rows.cols(), rref(rows)); }

  /// Column space of an operator.
  static Subspace image(const Matrix& m) { return row_space(m.transpose()); }
  static Subspace kernel(const Matrix& m) { return span(null_space_basis(m), m.cols()); }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == n_; }

  const Matrix& basis() const { return basis_; }
  std::vector<Vector> basis_vectors() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  /// Pivot column of each basis row.
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i) {
      std::size_t c = 0;
      while (basis_(i, c).is_zero()) ++c;
      out.push_back(c);
    }
    return out;
  }

  /// Coordinates of v in the stored basis, or nullopt if v is not in the space.
  std::optional<Vector> coordinates(const Vector& v) const {
    check_vec(v);
    auto piv = pivots();
    Vector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[piv[i]];
    Vector rebuilt(n_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (!c[i].is_zero())
        for (std::size_t j = 0; j < n_; ++j) rebuilt[j] += c[i] * basis_(i, j);
    if (rebuilt != v) return std::nullopt;
    return c;
  }

  bool contains(const Vector& v) const { return coordinates(v).has_value(); }
  bool contains(const Subspace& other) const {
    check_same(other);
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Rows spanning the annihilator {w : <w, v> = 0 for all v in this}.
  Matrix annihilator() const {
    return Matrix::from_rows(null_space_basis(basis_), n_);
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_same(b);
    Matrix wa = a.annihilator();
    Matrix wb = b.annihilator();
    Matrix stacked(wa.rows() + wb.rows(), a.n_);
    for (std::size_t i = 0; i < wa.rows(); ++i)
      for (std::size_t j = 0; j < a.n_; ++j) stacked(i, j) = wa(i, j);
    for (std::size_t i = 0; i < wb.rows(); ++i)
      for (std::size_t j = 0; j < a.n_; ++j) stacked(wa.rows() + i, j) = wb(i, j);
    return kernel(stacked);
  }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_same(b);
    auto vs = a.basis_vectors();
    auto vb = b.basis_vectors();
    vs.insert(vs.end(), vb.begin(), vb.end());
    return span(vs, a.n_);
  }

  /// Image of this subspace under an operator on the ambient space.
  Subspace mapped(const Matrix& op) const {
    if (op.cols() != n_) throw DimensionMismatch("operator does not act on the ambient space");
    std::vector<Vector> imgs;
    for (std::size_t i = 0; i < dim(); ++i) imgs.push_back(op * basis_.row(i));
    return span(imgs, op.rows());
  }

  bool is_invariant(const Matrix& op) const { return contains(mapped(op)); }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  /// Dimension first, then lexicographic on the canonical matrix.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.n_; ++j)
        if (auto c = a.basis_(i, j) <=> b.basis_(i, j); c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < dim(); ++i) {
      s += i ? ", (" : "(";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + basis_(i, j).str();
      s += ")";
    }
    return s + ">";
  }

 private:
  Subspace(std::size_t n, Matrix basis) : n_(n), basis_(std::move(basis)) {}

  void check_vec(const Vector& v) const {
    if (v.size() != n_) throw DimensionMismatch("vector length differs from ambient dimension");
  }
  void check_same(const Subspace& o) const {
    if (o.n_ != n_) throw DimensionMismatch("subspaces live in different ambient spaces");
  }

  std::size_t n_ = 0;
  Matrix basis_;
};

/// Matrix of `op` restricted to the invariant subspace `w`, in w's basis.
inline Matrix restrict_operator(const Matrix& op, const Subspace& w) {
  if (op.rows() != w.ambient_dim() || op.cols() != w.ambient_dim())
    throw DimensionMismatch("operator and subspace dimensions differ");
  const std::size_t k = w.dim();
  Matrix out(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    auto c = w.coordinates(op * w.basis().row(i));
    if (!c) throw NotInvariant("subspace " + w.str() + " is not invariant under the operator");
    for (std::size_t j = 0; j < k; ++j) out(j, i) = (*c)[j];
  }
  return out;
}

/// Projection onto Q^n / w. The quotient basis is the images of the standard
/// basis vectors at the non-pivot columns of w.
struct QuotientMap {
  Matrix projection;  // (n - k) x n
  Matrix lift;        // n x (n - k), a section of the projection
  std::size_t dim = 0;
};

inline QuotientMap quotient_map(const Subspace& w) {
  const std::size_t n = w.ambient_dim();
  auto piv = w.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  QuotientMap q{Matrix(free.size(), n), Matrix(n, free.size()), free.size()};
  for (std::size_t r = 0; r < free.size(); ++r) {
    const std::size_t c = free[r];
    q.projection(r, c) = 1;
    for (std::size_t j = 0; j < piv.size(); ++j) q.projection(r, piv[j]) -= w.basis()(j, c);
    q.lift(c, r) = 1;
  }
  return q;
}

/// Operator induced on Q^n / w by an operator that stabilizes w.
inline Matrix quotient_operator(const Matrix& op, const Subspace& w) {
  if (!w.is_invariant(op))
    throw NotInvariant("subspace " + w.str() + " is not invariant under the operator");
  auto q = quotient_map(w);
  return q.projection * op * q.lift;
}

}  // namespace phimod
