#include <gtest/gtest.h>

#include "support.hpp"

using namespace phimod;
using namespace testing_support;

namespace {

FilteredPhiNModule tate_wa() {
  return {PrimeContext(5), Matrix{{5, 0}, {0, 1}}, Matrix{{0, 0}, {1, 0}},
          Filtration(2, {{0, Subspace::full(2)}, {1, Subspace::span({{1, 0}}, 2)}})};
}

Subspace line(long a, long b) { return Subspace::span({{a, b}}, 2); }

}  // namespace

TEST(SlopeDecomposition, SpecExamples) {
  auto fm = fm_example(5, 3, Rational(5));
  auto d = slope_decomposition(fm);
  EXPECT_TRUE(d.exact);
  ASSERT_EQ(d.parts.size(), 2u);
  EXPECT_EQ(d.parts[0].slope, Rational(1));
  EXPECT_EQ(d.parts[0].subspace, line(0, 1));
  EXPECT_EQ(d.parts[1].slope, Rational(2));
  EXPECT_EQ(d.parts[1].subspace, line(1, 0));

  FilteredPhiNModule id(PrimeContext(3), Matrix::identity(3), Matrix(3, 3), Filtration::trivial(3));
  auto di = slope_decomposition(id);
  ASSERT_EQ(di.parts.size(), 1u);
  EXPECT_EQ(di.parts[0].slope, Rational(0));
  EXPECT_TRUE(di.parts[0].subspace.is_full());

  auto dt = slope_decomposition(tate_wa());
  ASSERT_EQ(dt.parts.size(), 2u);
  EXPECT_EQ(dt.parts[0].slope, Rational(0));
  EXPECT_EQ(dt.parts[0].subspace, line(0, 1));
  EXPECT_EQ(dt.parts[1].slope, Rational(1));
  EXPECT_EQ(dt.parts[1].subspace, line(1, 0));
}

TEST(SlopeDecomposition, MixedSlopeIrreducibleExhaustsPrecision) {
  FilteredPhiNModule m(PrimeContext(5), Matrix{{0, -5}, {1, -1}}, Matrix(2, 2), Filtration::trivial(2));
  try {
    slope_decomposition(m, 40);
    FAIL();
  } catch (const PrecisionExhausted& e) {
    EXPECT_EQ(e.precision(), 40);
    EXPECT_NE(std::string(e.what()).find("needs precision > 40"), std::string::npos);
  }
}

TEST(SlopeDecomposition, SoundnessOnCorpus) {
  for (const auto& g : weakly_admissible_corpus(80, 8)) {
    const auto& m = g.module;
    auto d = slope_decomposition(m);
    std::size_t total = 0;
    Rational weighted;
    Subspace span = Subspace::zero(m.dim);
    for (std::size_t k = 0; k < d.parts.size(); ++k) {
      const auto& part = d.parts[k];
      if (k) EXPECT_LT(d.parts[k - 1].slope, part.slope);
      EXPECT_TRUE(part.subspace.is_invariant(m.phi));
      total += part.subspace.dim();
      weighted += part.slope * Rational(static_cast<long>(part.subspace.dim()));
      span = sum(span, part.subspace);
    }
    EXPECT_EQ(total, m.dim);
    EXPECT_TRUE(span.is_full());
    EXPECT_EQ(weighted, Rational(newton_number(m)));
    EXPECT_TRUE(check_monodromy_lowers_slope(m, d).ok());
  }
}

TEST(Monodromy, LowersSlopes) {
  auto fm = fm_example(5, 3, Rational(5));
  auto r = check_monodromy_lowers_slope(fm, slope_decomposition(fm));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checks.size(), 2u);
  EXPECT_TRUE(check_monodromy_lowers_slope(unit_module(5), slope_decomposition(unit_module(5))).ok());
  EXPECT_TRUE(check_monodromy_lowers_slope(tate_wa(), slope_decomposition(tate_wa())).ok());
}

TEST(SlopeZeroPart, Examples) {
  EXPECT_EQ(slope_zero_part(tate_wa()), line(0, 1));
  EXPECT_TRUE(slope_zero_part(fm_example(5, 3, Rational(5))).is_zero());
  EXPECT_TRUE(slope_zero_part(unit_module(5)).is_full());
}

TEST(UnitInterval, Examples) {
  EXPECT_TRUE(assert_slopes_in_unit_interval(tate_wa()).passed);
  auto fm = assert_slopes_in_unit_interval(fm_example(5, 3, Rational(5)));
  EXPECT_FALSE(fm.passed);
  EXPECT_EQ(fm.message.find("BUG"), std::string::npos);
  EXPECT_TRUE(assert_slopes_in_unit_interval(unit_module(5)).passed);
}

TEST(Dichotomy, TateModule) {
  auto w = crystalline_dichotomy(tate_wa());
  EXPECT_EQ(w.kind, DichotomyKind::ProperCrystallineSub);
  EXPECT_EQ(w.m0, line(0, 1));
  ASSERT_TRUE(w.sub && w.quot);
  EXPECT_EQ(hodge_number(*w.sub), 0);
  EXPECT_EQ(newton_number(*w.sub), 0);
  EXPECT_EQ(w.quot->phi, (Matrix{{5}}));
  EXPECT_TRUE(w.quot->mono.is_zero());
  EXPECT_EQ(w.quot->fil.steps().front().degree, 1);
  EXPECT_EQ(w.chain, (std::vector<Subspace>{Subspace::zero(2), line(0, 1), Subspace::full(2)}));
}

TEST(Dichotomy, CrystallineAndBreaches) {
  FilteredPhiNModule one(PrimeContext(5), Matrix{{5}}, Matrix(1, 1), Filtration(1, {{1, Subspace::full(1)}}));
  auto w = crystalline_dichotomy(one);
  EXPECT_EQ(w.kind, DichotomyKind::Crystalline);
  EXPECT_TRUE(w.m0.is_zero());

  FilteredPhiNModule not_wa(PrimeContext(5), Matrix::identity(2), Matrix(2, 2),
                            Filtration(2, {{0, Subspace::full(2)}, {1, line(1, 0)}}));
  EXPECT_THROW(crystalline_dichotomy(not_wa), PreconditionBreach);
  try {
    crystalline_dichotomy(fm_example(5, 3, Rational(5)));
    FAIL();
  } catch (const PreconditionBreach& e) {
    EXPECT_NE(std::string(e.what()).find("type (0,3) is not (0,1)"), std::string::npos);
  }
}

TEST(Dichotomy, KindMatchesCrystallineOnCorpus) {
  for (const auto& g : weakly_admissible_corpus(60, 9)) {
    auto w = crystalline_dichotomy(g.module);
    EXPECT_EQ(w.kind == DichotomyKind::Crystalline, is_crystalline(g.module));
    for (std::size_t k = 1; k < w.chain.size(); ++k) {
      // N vanishes on each graded piece
      EXPECT_TRUE(w.chain[k - 1].contains(w.chain[k].mapped(g.module.mono)));
    }
  }
}

TEST(Theorem1, Checks) {
  auto t = theorem1_check(tate_wa());
  EXPECT_TRUE(t.breach.empty());
  ASSERT_TRUE(t.witness);
  EXPECT_EQ(t.irreducible, std::optional<bool>(false));
  EXPECT_TRUE(t.conclusion_holds);

  auto f = theorem1_check(fm_example(5, 3, Rational(5)));
  EXPECT_FALSE(f.type01);
  EXPECT_NE(f.breach.find("(0,3) is not (0,1)"), std::string::npos);

  FilteredPhiNModule irr(PrimeContext(5), Matrix{{5, 0}, {0, 1}}, Matrix(2, 2),
                         Filtration(2, {{0, Subspace::full(2)}, {1, line(1, 1)}}));
  // <e2> has t_H = t_N = 0, so it is a weakly admissible submodule
  auto r = theorem1_check(irr);
  EXPECT_EQ(r.irreducible, std::optional<bool>(false));
  EXPECT_TRUE(r.conclusion_holds);

  // x^2 + 5 has no root in Q_5: no stable lines at all
  FilteredPhiNModule simple(PrimeContext(5), Matrix{{0, -5}, {1, 0}}, Matrix(2, 2),
                            Filtration(2, {{0, Subspace::full(2)}, {1, line(1, 0)}}));
  auto i = theorem1_check(simple);
  EXPECT_TRUE(i.breach.empty()) << i.breach;
  EXPECT_EQ(i.irreducible, std::optional<bool>(true));
  EXPECT_TRUE(i.conclusion_holds);
}
