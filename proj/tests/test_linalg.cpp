#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace phimod;
using namespace testing_support;

TEST(Matrix, BasicsAndInverse) {
  Matrix a{{2, 1}, {7, 4}};
  EXPECT_EQ(determinant(a), Rational(1));
  EXPECT_EQ(a * inverse(a), Matrix::identity(2));
  EXPECT_EQ(rank(Matrix{{1, 2}, {2, 4}}), 1u);
  EXPECT_THROW(inverse(Matrix{{1, 2}, {2, 4}}), std::exception);
  Matrix n{{0, 0}, {1, 0}};
  EXPECT_TRUE(matrix_power(n, 2).is_zero());
  EXPECT_EQ(Matrix({{1, 2, 3}}).transpose().rows(), 3u);
}

TEST(Subspace, SpecExamples) {
  Matrix n{{0, 0}, {1, 0}};
  EXPECT_EQ(Subspace::kernel(n), Subspace::span({{0, 1}}, 2));
  EXPECT_TRUE(intersect(Subspace::span({{1, 0}}, 2), Subspace::span({{0, 1}}, 2)).is_zero());
  EXPECT_EQ(restrict_operator(Matrix{{25, 0}, {0, 5}}, Subspace::span({{0, 1}}, 2)), (Matrix{{5}}));
  EXPECT_THROW(restrict_operator(n, Subspace::span({{1, 0}}, 2)), NotInvariant);
  EXPECT_THROW(intersect(Subspace::span({{1, 0}}, 2), Subspace::full(3)), DimensionMismatch);
}

TEST(Subspace, ImageSumContains) {
  Matrix m{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}};
  Subspace img = Subspace::image(m);
  EXPECT_EQ(img.dim(), 2u);
  EXPECT_TRUE(img.contains(Vector{1, 2, 0}));
  EXPECT_FALSE(img.contains(Vector{0, 1, 0}));
  Subspace a = Subspace::span({{1, 0, 0}}, 3), b = Subspace::span({{0, 1, 0}}, 3);
  EXPECT_EQ(sum(a, b), Subspace::span({{1, 1, 0}, {1, -1, 0}}, 3));
  EXPECT_TRUE(sum(a, b).contains(a));
  EXPECT_EQ(Subspace::span({{1, 0}}, 2).str(), "<(1,0)>");
}

TEST(Subspace, QuotientMap) {
  Subspace w = Subspace::span({{0, 1}}, 2);
  auto q = quotient_map(w);
  EXPECT_EQ(q.dim, 1u);
  EXPECT_TRUE((q.projection * Vector{0, 1})[0].is_zero());
  EXPECT_EQ(quotient_operator(Matrix{{5, 0}, {1, 1}}, w), (Matrix{{5}}));
}

TEST(Subspace, CanonicalFormIsUniqueAcrossSpanningSets) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-4, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + rng() % 6, k = rng() % (n + 1);
    Matrix gen = random_integer_matrix(rng, k, n, -5, 5);
    // a second spanning set: random combinations plus redundant extra rows
    std::size_t extra = rng() % 3;
    Matrix mix = random_invertible(rng, k);
    Matrix other = k ? mix * gen : Matrix(0, n);
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < other.rows(); ++i) rows.push_back(other.row(i));
    for (std::size_t e = 0; e < extra && k; ++e) {
      Vector v(n);
      for (std::size_t i = 0; i < k; ++i) {
        Rational c = coef(rng);
        for (std::size_t j = 0; j < n; ++j) v[j] += c * gen(i, j);
      }
      rows.insert(rows.begin() + static_cast<long>(rng() % (rows.size() + 1)), v);
    }
    Subspace a = Subspace::row_space(gen);
    Subspace b = Subspace::span(rows, n);
    ASSERT_EQ(a, b);
    EXPECT_EQ(a.basis(), b.basis());
  }
}

TEST(Subspace, GrassmannFormula) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 6;
    // low-entropy entries so intersections are often nontrivial
    Subspace a = Subspace::row_space(random_integer_matrix(rng, rng() % (n + 1), n, -1, 1));
    Subspace b = Subspace::row_space(random_integer_matrix(rng, rng() % (n + 1), n, -1, 1));
    Subspace i = intersect(a, b), s = sum(a, b);
    EXPECT_EQ(a.dim() + b.dim(), i.dim() + s.dim());
    EXPECT_TRUE(a.contains(i) && b.contains(i) && s.contains(a) && s.contains(b));
  }
}
