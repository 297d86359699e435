// popcert: tests for rewriting strategies and derivation-height measurement.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include <popcert/rewrite.hpp>
#include <popcert/trs.hpp>

#include "oracles.hpp"

using namespace popcert;
using namespace popcert::testing;

namespace {

long long height_of(const Trs& trs, const std::string& term, Strategy strat) {
  HeightResult h = derivation_height(parse_term(term, trs.sig), trs, strat);
  REQUIRE_FALSE(h.capped);
  return h.height;
}

TermPtr nth(const FamilyTemplate& fam, int n, const Trs& trs) {
  return fam.instantiate(n, trs.sig);
}

}  // namespace

TEST_CASE("strategy names round trip") {
  CHECK(strategy_from_name("innermost") == Strategy::Innermost);
  CHECK(strategy_from_name("outermost") == Strategy::Outermost);
  CHECK(strategy_from_name("any") == Strategy::Unrestricted);
  CHECK(strategy_from_name("unrestricted") == Strategy::Unrestricted);
  CHECK(strategy_from_name("full") == Strategy::Unrestricted);
  CHECK_FALSE(strategy_from_name("sideways").has_value());
  CHECK(std::string(strategy_name(Strategy::Innermost)) == "innermost");
  CHECK(std::string(strategy_name(Strategy::Unrestricted)) == "any");
}

TEST_CASE("match and substitute agree on rule application") {
  Trs trs = load_trs("mul.trs");
  TermPtr pat = trs.rules[1].lhs;  // plus(s(x), y)
  TermPtr sub = parse_term("plus(s(s(0)), s(0))", trs.sig);
  Binding b;
  REQUIRE(match(pat, sub, b));
  CHECK(format_term(b.at("x"), trs.sig) == "s(0)");
  CHECK(format_term(b.at("y"), trs.sig) == "s(0)");
  TermPtr r = substitute(trs.rules[1].rhs, b);
  CHECK(format_term(r, trs.sig) == "s(plus(s(0), s(0)))");

  Binding fail;
  CHECK_FALSE(match(pat, parse_term("plus(0, 0)", trs.sig), fail));

  // A nonlinear pattern matches only when the duplicated variable agrees.
  Trs dup = parse_trs("(VAR t)\n(RULES eq(t, t) -> t)");
  Binding same, differ;
  CHECK(match(dup.rules[0].lhs, parse_term("eq(a, a)", dup.sig), same));
  CHECK_FALSE(match(dup.rules[0].lhs, parse_term("eq(a, b)", dup.sig), differ));
}

TEST_CASE("innermost steps contract only argument-normal redexes") {
  Trs trs = load_trs("mul.trs");
  TermPtr t = parse_term("times(plus(0, 0), plus(0, 0))", trs.sig);
  StepResult inner = successors(t, trs, Strategy::Innermost);
  StepResult any = successors(t, trs, Strategy::Unrestricted);
  // Innermost may not fire the times rule while its arguments have redexes.
  for (const TermPtr& u : inner.successors)
    CHECK(format_term(u, trs.sig).rfind("times", 0) == 0);
  CHECK(inner.successors.size() == 2);  // one contraction per argument
  CHECK(any.successors.size() == inner.successors.size());  // the root is not a redex here
  CHECK_FALSE(inner.normal_form);

  TermPtr nf = parse_term("s(s(0))", trs.sig);
  CHECK(is_normal_form(nf, trs));
  CHECK(successors(nf, trs, Strategy::Innermost).normal_form);
}

TEST_CASE("outermost and unrestricted differ from innermost on erased arguments") {
  Trs trs = load_trs("mul.trs");
  // times(0, plus(0,0)): innermost must first normalize plus(0,0); outermost
  // erases it immediately.
  TermPtr t = parse_term("times(0, plus(0, 0))", trs.sig);
  CHECK(derivation_height(t, trs, Strategy::Innermost).height == 2);
  CHECK(derivation_height(t, trs, Strategy::Outermost).height == 1);
  CHECK(derivation_height(t, trs, Strategy::Unrestricted).height == 2);
}

TEST_CASE("addition family has linear innermost heights") {
  Trs trs = load_trs("mul.trs");
  FamilyTemplate fam{"plus(s^@n(0), s^@n(0))"};
  for (int n = 0; n <= 8; ++n) {
    HeightResult h = derivation_height(nth(fam, n, trs), trs, Strategy::Innermost);
    REQUIRE_FALSE(h.capped);
    CHECK(h.height == n + 1);
  }
}

TEST_CASE("multiplication family has quadratic innermost heights") {
  Trs trs = load_trs("mul.trs");
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m) {
      FamilyTemplate left{"s^@n(0)"};
      TermPtr t = Term::make_app(*trs.sig.find("times"),
                                 {nth(left, n, trs), nth(left, m, trs)});
      HeightResult h = derivation_height(t, trs, Strategy::Innermost);
      REQUIRE_FALSE(h.capped);
      CHECK(h.height == 1 + static_cast<long long>(n) * (m + 2));
    }
}

TEST_CASE("tree duplication is linear innermost and exponential unrestricted") {
  Trs trs = load_trs("dup.trs");
  FamilyTemplate fam{"btree(s^@n(0))"};
  for (int n = 0; n <= 10; ++n) {
    HeightResult h = derivation_height(nth(fam, n, trs), trs, Strategy::Innermost);
    REQUIRE_FALSE(h.capped);
    CHECK(h.height == 2 * n + 1);
  }
  for (int n = 0; n <= 6; ++n) {
    HeightResult h = derivation_height(nth(fam, n, trs), trs, Strategy::Unrestricted);
    REQUIRE_FALSE(h.capped);
    CHECK(h.height == 3 * (1LL << n) - 2);
  }
}

TEST_CASE("the binary counter is exponential already innermost") {
  Trs trs = load_trs("bin.trs");
  FamilyTemplate fam{"bin(s^@n(0), s^@n(0))"};
  for (int n = 1; n <= 8; ++n) {
    HeightResult h = derivation_height(nth(fam, n, trs), trs, Strategy::Innermost);
    REQUIRE_FALSE(h.capped);
    CHECK(h.height == (1LL << (n + 1)) - 1);
  }
}

TEST_CASE("list reversal is quadratic innermost") {
  Trs trs = load_trs("rev.trs");
  FamilyTemplate fam{"rev(cons^@n(nil))"};
  // Each revt call walks the remaining list once; arities make cons^@n
  // ill-formed, so build lists manually.
  SymId cons = *trs.sig.find("cons"), nil = *trs.sig.find("nil"), rev = *trs.sig.find("rev");
  (void)fam;
  for (int n = 0; n <= 6; ++n) {
    TermPtr xs = Term::make_app(nil, {});
    for (int i = 0; i < n; ++i)
      xs = Term::make_app(cons, {Term::make_app(nil, {}), xs});
    HeightResult h = derivation_height(Term::make_app(rev, {xs}), trs, Strategy::Innermost);
    REQUIRE_FALSE(h.capped);
    CHECK(h.height == n + 2);  // one rev step, n revt steps, one unload step
  }
}

TEST_CASE("divergent systems report the cap instead of spinning") {
  Trs trs = parse_trs("(VAR x)\n(RULES f(x) -> f(f(x)))");
  HeightResult h = derivation_height(parse_term("f(a)", trs.sig), trs,
                                     Strategy::Innermost, 200, 100);
  CHECK(h.capped);
  CHECK(h.height == 0);  // a capped height carries no information

  // A rewrite cycle is unbounded even though the state space is finite.
  Trs loop = parse_trs("(VAR x)\n(RULES f(x) -> f(x))");
  HeightResult hl = derivation_height(parse_term("f(a)", loop.sig), loop,
                                      Strategy::Innermost, 1000, 1000);
  CHECK(hl.capped);
}

TEST_CASE("memoized heights equal the naive maximum over all strategies") {
  int compared = 0;
  for (uint32_t seed = 1; seed <= 60 && compared < 120; ++seed) {
    Trs trs = random_constructor_trs(seed);
    std::mt19937 rng(seed * 7919);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<SymId> defined = trs.sig.defined();
      SymId root = defined[std::uniform_int_distribution<size_t>(0, defined.size() - 1)(rng)];
      std::vector<TermPtr> args;
      for (int i = 0; i < trs.sig[root].arity; ++i)
        args.push_back(random_value(rng, trs.sig, 2, {}));
      TermPtr t = Term::make_app(root, std::move(args));
      for (Strategy strat : {Strategy::Innermost, Strategy::Outermost, Strategy::Unrestricted}) {
        // Small caps: divergent generated systems cost time superlinear in
        // the cap, and capped runs are skipped anyway.
        HeightResult h = derivation_height(t, trs, strat, 100, 100);
        if (h.capped || h.height > 10) continue;
        CHECK(h.height == naive_dheight(t, trs, strat));
        ++compared;
      }
    }
  }
  // The generator must produce a healthy number of terminating comparisons.
  CHECK(compared >= 60);
}

TEST_CASE("growth tables record sizes, heights, and caps") {
  Trs trs = load_trs("mul.trs");
  FamilyTemplate fam{"plus(s^@n(0), s^@n(0))"};
  DerivationReport rep = growth_table(trs, fam, 1, 4, Strategy::Innermost);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].n == 1);
  CHECK(rep.rows[3].n == 4);
  for (const GrowthRow& row : rep.rows) {
    CHECK(row.size == 2 * row.n + 3);
    CHECK(row.height == row.n + 1);
    CHECK_FALSE(row.capped);
  }
  std::string csv = growth_csv(rep);
  CHECK(csv.rfind("n,size,height,capped\n1,5,2,0\n", 0) == 0);

  DerivationReport capped = growth_table(trs, FamilyTemplate{"times(s^@n(0), s^@n(0))"},
                                         8, 9, Strategy::Innermost, 20, 20);
  CHECK(capped.rows[0].capped);
}

TEST_CASE("growth classification separates polynomial from exponential families") {
  Trs mul = load_trs("mul.trs");
  DerivationReport lin =
      growth_table(mul, FamilyTemplate{"plus(s^@n(0), s^@n(0))"}, 1, 12, Strategy::Innermost);
  GrowthClass lc = growth_classify(lin);
  REQUIRE(lc.kind == GrowthKind::PolynomialDegreeEstimate);
  CHECK(lc.degree == doctest::Approx(1.0).epsilon(0.25));

  DerivationReport quad =
      growth_table(mul, FamilyTemplate{"times(s^@n(0), s^@n(0))"}, 1, 12, Strategy::Innermost);
  GrowthClass qc = growth_classify(quad);
  REQUIRE(qc.kind == GrowthKind::PolynomialDegreeEstimate);
  CHECK(qc.degree == doctest::Approx(2.0).epsilon(0.15));

  Trs bin = load_trs("bin.trs");
  DerivationReport expo =
      growth_table(bin, FamilyTemplate{"bin(s^@n(0), s^@n(0))"}, 1, 8, Strategy::Innermost);
  CHECK(growth_classify(expo).kind == GrowthKind::ExponentialSuspect);

  DerivationReport flat =
      growth_table(mul, FamilyTemplate{"plus(s(0), s^@n(0))"}, 1, 8, Strategy::Innermost);
  GrowthClass fc = growth_classify(flat);
  REQUIRE(fc.kind == GrowthKind::PolynomialDegreeEstimate);
  CHECK(fc.degree == doctest::Approx(0.0).epsilon(0.01));
}

TEST_CASE("nondeterministic rules keep the maximal branch") {
  // choice-style rules: one branch is short, the other loops through a
  // counter; the height takes the longer one.
  Trs trs = parse_trs(
      "(VAR x)\n"
      "(RULES\n"
      "  pick(x) -> a\n"
      "  pick(x) -> count(x)\n"
      "  count(s(x)) -> count(x)\n"
      "  count(0) -> a\n"
      ")\n");
  CHECK(height_of(trs, "pick(s(s(s(0))))", Strategy::Innermost) == 5);
}
