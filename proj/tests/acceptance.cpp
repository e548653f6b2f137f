// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace phimod;
using namespace testing_support;

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

template <class A, class B>
void require_eq(const A& a, const B& b, const std::string& what) {
  if (!(a == b)) {
    std::ostringstream os;
    os << what << " (got " << a << ", want " << b << ")";
    throw Failure{os.str()};
  }
}

Subspace line(long a, long b) { return Subspace::span({{a, b}}, 2); }

// 1. worked example numbers over the (p, s) grid
std::string criterion1() {
  int cases = 0;
  for (long p : {2L, 3L, 5L, 7L})
    for (long s : {3L, 5L, 7L}) {
      std::string tag = "p=" + std::to_string(p) + " s=" + std::to_string(s) + ": ";
      auto m = fm_example(p, s, pow(Rational(p), (s - 1) / 2));
      require_eq(hodge_number(m), s, tag + "t_H");
      require_eq(newton_number(m), s, tag + "t_N");
      auto en = stable_subspaces(m);
      require(en.completeness == Completeness::Exact, tag + "enumeration not exact");
      require(en.subspaces == std::vector<Subspace>{Subspace::zero(2), line(0, 1), Subspace::full(2)},
              tag + "stable subspaces");
      auto sub = submodule(m, line(0, 1));
      require_eq(hodge_number(sub), 0, tag + "t_H(<e2>)");
      require_eq(newton_number(sub), (s - 1) / 2, tag + "t_N(<e2>)");
      require(is_weakly_admissible(m).verdict == Verdict::WeaklyAdmissible, tag + "verdict");
      auto subs = weakly_admissible_submodules(m);
      require(subs.subspaces.empty() && subs.completeness == Completeness::Exact, tag + "wa submodules");
      require(has_crystalline_filtration(m).verdict == Tristate::False, tag + "crystalline filtration");
      require(is_strongly_irreducible_over_unramified(m).verdict == Tristate::True, tag + "strong irreducibility");
      ++cases;
    }
  return std::to_string(cases) + " grid points";
}

// 2. endomorphisms of the worked example
std::string criterion2() {
  auto m = fm_example(5, 3, Rational(5));
  require_eq(endomorphism_ring(m, true).dimension, 1u, "End with filtration");
  require_eq(endomorphism_ring(m, false).dimension, 1u, "End without filtration");
  auto sol = semilinear_endomorphism_dimension(m);
  require(sol.qp_dimension && *sol.qp_dimension == 1, "qp_dimension");
  require(sol.at("z").status == UnknownStatus::Zero, "z zero");
  require(sol.at("x").status == UnknownStatus::Tied && sol.at("x").tied_to == "w", "x = w");
  require(sol.at("w").status == UnknownStatus::QpLine, "w in Q_p");
  require(sol.at("y").status == UnknownStatus::Zero, "y zero");
  std::vector<std::string> order;
  for (const auto& c : sol.constraints) order.push_back(c.str());
  require(order == std::vector<std::string>{"z = 0", "x = w", "sigma(w) = w", "sigma(y) = 5*y"}, "derivation order");
  return "trace z=0, x=w, w in Q_p, y=0";
}

// 3. symmetric powers against a brute-force eigen-subset oracle
std::string criterion3() {
  const long p = 5;
  int spaces = 0;
  for (long s : {3L, 5L}) {
    const long k = (s - 1) / 2;
    auto m = fm_example(p, s, pow(Rational(p), k));
    for (unsigned n : {2u, 3u, 4u}) {
      std::string tag = "n=" + std::to_string(n) + " s=" + std::to_string(s) + ": ";
      auto sym = sym_power(m, n);
      const std::size_t d = n + 1;
      // oracle: basis e1^(n-j) e2^j at index j is an eigenvector with
      // valuation (n-j)(k+1) + j k and Hodge weight (n-j) s
      std::vector<long> val(d), wt(d);
      std::vector<Rational> eig;
      for (std::size_t j = 0; j < d; ++j) {
        val[j] = static_cast<long>(n - j) * (k + 1) + static_cast<long>(j) * k;
        wt[j] = static_cast<long>(n - j) * s;
        eig.push_back(sym.phi(j, j));
        require_eq(oracle_valuation(sym.phi(j, j), p), val[j], tag + "eigenvalue valuation");
      }
      long th = 0, tn = 0;
      for (std::size_t j = 0; j < d; ++j) th += wt[j], tn += val[j];
      require_eq(th, s * static_cast<long>(n * (n + 1) / 2), tag + "oracle t_H");
      require_eq(hodge_number(sym), th, tag + "t_H");
      require_eq(newton_number(sym), tn, tag + "t_N");
      require_eq(tn, th, tag + "t_N = t_H");

      auto oracle = oracle_stable_subspaces(sym.phi, sym.mono, eig);
      auto en = stable_subspaces(sym);
      require(en.completeness == Completeness::Exact, tag + "exact enumeration");
      require(en.subspaces == oracle, tag + "enumeration matches oracle");
      require_eq(oracle.size(), d + 1, tag + "number of stable subspaces");
      for (long mm = 0; mm < static_cast<long>(n); ++mm) {
        // V_m = span of the m+1 monomials with the most e2 factors
        std::vector<Vector> vs;
        long oh = 0, on = 0;
        for (long j = static_cast<long>(n) - mm; j <= static_cast<long>(n); ++j) {
          Vector v(d);
          v[static_cast<std::size_t>(j)] = 1;
          vs.push_back(v);
          oh += wt[static_cast<std::size_t>(j)];
          on += val[static_cast<std::size_t>(j)];
        }
        Subspace vm = Subspace::span(vs, d);
        require(std::find(oracle.begin(), oracle.end(), vm) != oracle.end(), tag + "V_m stable");
        require_eq(oh, s * mm * (mm + 1) / 2, tag + "oracle t_H(V_m)");
        require_eq(on, mm * (mm + 1) / 2 + (mm + 1) * static_cast<long>(n) * k, tag + "oracle t_N(V_m)");
        auto nums = numbers_on(sym, vm);
        require_eq(nums.hodge, oh, tag + "t_H(V_m)");
        require_eq(nums.newton, on, tag + "t_N(V_m)");
        require(nums.hodge < nums.newton, tag + "t_H(V_m) < t_N(V_m)");
        ++spaces;
      }
      require(weakly_admissible_submodules(sym).subspaces.empty(), tag + "no wa submodules");
      auto sol = semilinear_endomorphism_dimension(sym);
      require(sol.qp_dimension && *sol.qp_dimension == 1, tag + "qp_dimension");
    }
  }
  return std::to_string(spaces) + " subspaces V_m checked";
}

// 4. theorem as a property over generated weakly admissible type (0,1) modules
std::string criterion4() {
  auto corpus = weakly_admissible_corpus(240);
  int proper = 0;
  std::size_t max_dim = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& m = corpus[i].module;
    std::string tag = "module #" + std::to_string(i) + ": ";
    require(is_type_01(m), tag + "type (0,1)");
    max_dim = std::max(max_dim, m.dim);
    auto w = crystalline_dichotomy(m);
    if (w.kind == DichotomyKind::Crystalline && w.m0.is_zero()) {
      require(m.mono.is_zero(), tag + "N = 0 without slope-zero part");
    } else {
      require(w.m0.mapped(m.mono).is_zero(), tag + "N M0 = 0");
      require_eq(hodge_number(*w.sub), 0, tag + "t_H(M0)");
      require_eq(newton_number(*w.sub), 0, tag + "t_N(M0)");
      require(w.quot->mono.is_zero(), tag + "N = 0 on M/M0");
      if (w.kind == DichotomyKind::ProperCrystallineSub) ++proper;
    }
    for (std::size_t c = 1; c < w.chain.size(); ++c)
      require(w.chain[c - 1].contains(w.chain[c].mapped(m.mono)), tag + "N kills graded piece");
    require(assert_slopes_in_unit_interval(m).passed, tag + "slopes in [0,1]");
  }
  require(corpus.size() >= 200, "corpus size");
  require(max_dim <= 4, "dimension bound");
  return std::to_string(corpus.size()) + " modules, " + std::to_string(proper) + " with N != 0";
}

std::vector<FilteredPhiNModule> axiom_corpus() {
  std::vector<FilteredPhiNModule> out;
  for (const char* f : {"fm_5_3_5.json", "tate_wa.json", "tate_not_wa.json", "unit.json", "scalar_split.json"})
    out.push_back(load_fixture(f));
  for (long p : {2L, 3L, 5L, 7L})
    for (long s : {3L, 5L, 7L}) out.push_back(fm_example(p, s, pow(Rational(p), (s - 1) / 2)));
  auto fm = fm_example(5, 3, Rational(5));
  for (unsigned n = 2; n <= 4; ++n) out.push_back(sym_power(fm, n));
  for (auto& g : weakly_admissible_corpus(200, 4242)) out.push_back(std::move(g.module));
  return out;
}

// 5. consequences of the axioms
std::string criterion5() {
  int exact = 0, pairs = 0;
  for (const auto& m : axiom_corpus()) {
    require(validate(m).ok(), "corpus module valid");
    auto d = slope_decomposition(m);
    if (d.exact) {
      ++exact;
      require(check_monodromy_lowers_slope(m, d).ok(), "N lowers slopes by 1");
      Rational total;
      for (const auto& part : d.parts) total += part.slope * Rational(static_cast<long>(part.subspace.dim()));
      require_eq(total, Rational(newton_number(m)), "t_N = slope sum");
    }
    for (const auto& w : stable_subspaces(m).subspaces) {
      auto sub = submodule(m, w);
      auto quo = quotient(m, w);
      require_eq(hodge_number(sub) + hodge_number(quo), hodge_number(m), "t_H additive");
      require_eq(newton_number(sub) + newton_number(quo), newton_number(m), "t_N additive");
      ++pairs;
    }
  }
  return std::to_string(exact) + " exact decompositions, " + std::to_string(pairs) + " sub/quotient pairs";
}

// 6. negative controls
std::string criterion6() {
  auto r = is_weakly_admissible(load_fixture("tate_not_wa.json"));
  require(r.verdict == Verdict::NotWeaklyAdmissible, "Fil^1 = <e2> rejected");
  require(r.witness && *r.witness == line(0, 1), "witness <e2>");
  auto expect_bad = [](long p, long s, long b, const std::string& needle) {
    try {
      fm_example(p, s, Rational(b));
    } catch (const BadParameters& e) {
      require(std::string(e.what()).find(needle) != std::string::npos, "message names: " + needle);
      return;
    }
    throw Failure{"fm_example accepted bad parameters"};
  };
  expect_bad(5, 4, 5, "s must be an odd integer >= 3");
  expect_bad(5, 1, 1, "s must be an odd integer >= 3");
  expect_bad(5, 5, 5, "v_p(b) = (s-1)/2");
  auto t = theorem1_check(fm_example(5, 3, Rational(5)));
  require(t.breach.find("(0,3) is not (0,1)") != std::string::npos, "theorem1 type mismatch (0,3)");
  auto t5 = theorem1_check(fm_example(3, 5, Rational(9)));
  require(t5.breach.find("(0,5) is not (0,1)") != std::string::npos, "theorem1 type mismatch (0,5)");
  return "all rejected as expected";
}

// 7. infrastructure
std::string criterion7() {
  int docs = 0;
  for (const char* f : {"fm_5_3_5.json", "tate_wa.json", "tate_not_wa.json", "unit.json", "mixed_slope.json",
                        "scalar_split.json", "bad_commutation.json"}) {
    std::string text = read_text(fixture_path(f));
    auto m = parse_document(text);
    require(to_document(m) == text, std::string("text round trip ") + f);
    require(parse_document(to_document(m)) == m, std::string("module round trip ") + f);
    ++docs;
  }
  for (const char* f : {"fm_5_3_5.json", "tate_wa.json", "unit.json", "scalar_split.json"}) {
    ReportOptions opt;
    auto m = load_fixture(f);
    require(analysis_report(m, opt).dump(2) == analysis_report(m, opt).dump(2), std::string("report bytes ") + f);
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    std::size_t n = 1 + rng() % 6, k = rng() % (n + 1);
    Matrix gen = random_integer_matrix(rng, k, n, -5, 5);
    Matrix other = k ? random_invertible(rng, k) * gen : Matrix(0, n);
    require(Subspace::row_space(gen).basis() == Subspace::row_space(other).basis(), "canonical form unique");
  }
  return std::to_string(docs) + " fixtures round-tripped, 1000 spanning-set pairs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"1 worked-example numbers on the (p,s) grid", criterion1},
      {"2 endomorphisms and semilinear trace", criterion2},
      {"3 symmetric powers vs brute-force oracle", criterion3},
      {"4 dichotomy on >= 200 weakly admissible type (0,1) modules", criterion4},
      {"5 axiom consequences on the corpus", criterion5},
      {"6 negative controls", criterion6},
      {"7 round trip, determinism, canonical forms", criterion7},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    try {
      std::cout << "PASS  criterion " << name << "  [" << fn() << "]\n";
    } catch (const Failure& f) {
      ++failed;
      std::cout << "FAIL  criterion " << name << "  [" << f.what << "]\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "FAIL  criterion " << name << "  [exception: " << e.what() << "]\n";
    }
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " failed" : std::string("acceptance: all passed"))
            << "\n";
  return failed ? 1 : 0;
}
