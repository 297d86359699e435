// popcert: tests for the path orders, certificate checking, and the
// brute-force certificate search.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include <popcert/error.hpp>
#include <popcert/multiset.hpp>
#include <popcert/orders.hpp>

#include "oracles.hpp"

using namespace popcert;
using namespace popcert::testing;

namespace {

// Collects all subterms, the term itself included.
void all_subterms(const TermPtr& t, std::vector<TermPtr>& out) {
  out.push_back(t);
  if (!t->is_var())
    for (const TermPtr& a : t->args()) all_subterms(a, out);
}

Certificate cert_of(const Trs& trs, const std::string& text) {
  return parse_cert(text, trs.sig);
}

}  // namespace

TEST_CASE("the multiplication system is oriented by its unique certificate") {
  Trs trs = load_trs("mul.trs");
  Certificate cert = load_cert(trs, "mul.cert");
  CompatReport rep = check_compat(trs, cert);
  REQUIRE(rep.compatible);
  REQUIRE(rep.rules.size() == 4);
  CHECK(rep.rules[0].trace.find("<st>") != std::string::npos);
  CHECK(rep.rules[1].trace.find("<ia>") != std::string::npos);
  CHECK(rep.rules[1].trace.find("plus > s") != std::string::npos);
  CHECK(rep.rules[3].trace.find("times > plus") != std::string::npos);
}

TEST_CASE("marking the recursion argument of plus safe breaks one rule") {
  Trs trs = load_trs("mul.trs");
  Certificate cert = load_cert(trs, "mul_bad.cert");
  CompatReport rep = check_compat(trs, cert);
  CHECK_FALSE(rep.compatible);
  CHECK_FALSE(rep.rules[1].oriented);  // plus(s(x), y) -> s(plus(x, y))
  CHECK(rep.rules[1].trace.find("<ia> argument conditions fail") != std::string::npos);
  CHECK(rep.rules[0].oriented);
  CHECK(rep.rules[2].oriented);
  CHECK(rep.rules[3].oriented);
}

TEST_CASE("marking the safe argument of times safe breaks the last rule") {
  Trs trs = load_trs("mul.trs");
  Certificate cert = cert_of(trs,
                             "order: pop*\n"
                             "precedence:\n"
                             "  times > plus\n"
                             "safe:\n"
                             "  plus: 2\n"
                             "  times: 2\n");
  CompatReport rep = check_compat(trs, cert);
  CHECK_FALSE(rep.compatible);
  CHECK_FALSE(rep.rules[3].oriented);  // y must pass the auxiliary order, but
                                       // sits under a safe-skipped position
}

TEST_CASE("failure traces name the first unmet condition") {
  Trs trs = load_trs("mul.trs");
  // Equal ranks: the recursive times rule fails at the root-equivalence clause.
  Certificate flat = cert_of(trs, "order: pop*\nsafe:\n  plus: 2\n");
  CompatReport rf = check_compat(trs, flat);
  CHECK_FALSE(rf.compatible);
  CHECK(rf.rules[3].trace.find("<ep> multiset conditions fail") != std::string::npos);
  // Inverted ranks: the same rule reports the missing precedence step.
  Certificate inv = cert_of(
      trs, "order: pop*\nprecedence:\n  plus > times\nsafe:\n  plus: 2\n");
  CompatReport ri = check_compat(trs, inv);
  CHECK_FALSE(ri.compatible);
  CHECK(ri.rules[3].trace.find("times is not above plus") != std::string::npos);
}

TEST_CASE("the SAT-solver example passes under the layered certificate") {
  Trs trs = load_trs("sat.trs");
  Certificate cert = load_cert(trs, "sat.cert");
  CHECK(cert.rank[*trs.sig.find("issat")] == 5);
  CHECK(cert.rank[*trs.sig.find("issat'")] == 4);
  CHECK(cert.rank[*trs.sig.find("verify")] == 3);
  CHECK(cert.rank[*trs.sig.find("member")] == 2);
  CHECK(cert.rank[*trs.sig.find("guess")] == 2);
  CHECK(cert.rank[*trs.sig.find("if")] == 1);
  CHECK(cert.rank[*trs.sig.find("choice")] == 1);
  CompatReport rep = check_compat(trs, cert);
  REQUIRE(rep.compatible);
  // The nested right-hand side of verify exercises the full <ia> clause.
  CHECK(rep.rules[10].trace.find("<ia>") != std::string::npos);
  // The last choice rule descends into an equivalent root.
  CHECK(rep.rules[19].trace.find("<ep>") != std::string::npos);
}

TEST_CASE("list reversal needs parameter substitution") {
  Trs trs = load_trs("rev.trs");
  Certificate ps = load_cert(trs, "rev.cert");
  REQUIRE(ps.order == OrderVariant::PopStarPs);
  CHECK(check_compat(trs, ps).compatible);

  Certificate plain = ps;
  plain.order = OrderVariant::PopStar;
  CompatReport rep = check_compat(trs, plain);
  CHECK_FALSE(rep.compatible);
  CHECK_FALSE(rep.rules[2].oriented);  // the accumulator grows, which plain
                                       // pop* cannot absorb
}

TEST_CASE("tree duplication is oriented by ranks btree above dup") {
  Trs trs = load_trs("dup.trs");
  CHECK(check_compat(trs, load_cert(trs, "dup.cert")).compatible);
}

TEST_CASE("the binary counter admits no pop* certificate at all") {
  Trs trs = load_trs("bin.trs");
  CHECK_FALSE(brute_force_search(trs, OrderVariant::PopStar).has_value());
  CHECK_FALSE(brute_force_search(trs, OrderVariant::PopStarPs).has_value());
}

TEST_CASE("swapping the times recursion into rule 4a defeats pop* but not mpo") {
  Trs trs = load_trs("mul_4a.trs");
  CHECK_FALSE(brute_force_search(trs, OrderVariant::PopStar).has_value());
  CHECK_FALSE(brute_force_search(trs, OrderVariant::PopStarPs).has_value());
  std::optional<Certificate> mpo = brute_force_search(trs, OrderVariant::Mpo);
  REQUIRE(mpo.has_value());
  CHECK(check_compat(trs, *mpo).compatible);
}

TEST_CASE("exponentiation is mpo-terminating yet not pop*-bounded") {
  Trs trs = load_trs("mul_exp.trs");
  CHECK_FALSE(brute_force_search(trs, OrderVariant::PopStar).has_value());
  CHECK_FALSE(brute_force_search(trs, OrderVariant::PopStarPs).has_value());
  std::optional<Certificate> mpo = brute_force_search(trs, OrderVariant::Mpo);
  REQUIRE(mpo.has_value());
  CHECK(check_compat(trs, *mpo).compatible);
}

TEST_CASE("brute force recovers the forced multiplication certificate") {
  Trs trs = load_trs("mul.trs");
  std::optional<Certificate> found = brute_force_search(trs, OrderVariant::PopStar);
  REQUIRE(found.has_value());
  SymId plus = *trs.sig.find("plus"), times = *trs.sig.find("times");
  CHECK(found->rank[times] == 2);
  CHECK(found->rank[plus] == 1);
  CHECK(found->safe[plus] == std::vector<int>{2});
  CHECK(found->safe[times].empty());
}

TEST_CASE("brute force guards reject oversized inputs") {
  Trs big = parse_trs(
      "(VAR x)\n(RULES\n  f1(x) -> x\n  f2(x) -> x\n  f3(x) -> x\n"
      "  f4(x) -> x\n  f5(x) -> x\n)");
  CHECK_THROWS_AS(brute_force_search(big, OrderVariant::PopStar), Error);
  Trs wide = parse_trs("(VAR x y z w)\n(RULES\n  f(x, y, z, w) -> x\n)");
  CHECK_THROWS_AS(brute_force_search(wide, OrderVariant::Mpo), Error);
}

TEST_CASE("equivalence respects the safe mapping only when asked") {
  Trs trs = load_trs("mul.trs");
  Certificate cert = load_cert(trs, "mul.cert");
  OrderContext ctx(trs.sig, cert);
  TermPtr ab = parse_term("plus(0, s(0))", trs.sig);
  TermPtr ba = parse_term("plus(s(0), 0)", trs.sig);
  CHECK(ctx.perm_equiv(ab, ba));        // argument permutation
  CHECK_FALSE(ctx.safe_equiv(ab, ba));  // the permutation crosses the safe divide
  CHECK(ctx.safe_equiv(ab, ab));

  // All constructors share the bottom rank, so nullary values are equivalent.
  // Terms are bound to locals: the context memoizes by term address, so every
  // compared term has to stay alive alongside it.
  Trs sat = load_trs("sat.trs");
  Certificate sc = load_cert(sat, "sat.cert");
  OrderContext sctx(sat.sig, sc);
  TermPtr nil = parse_term("nil", sat.sig);
  TermPtr tru = parse_term("true", sat.sig);
  TermPtr pair = parse_term("cons(nil, nil)", sat.sig);
  CHECK(sctx.safe_equiv(nil, tru));
  CHECK_FALSE(sctx.safe_equiv(nil, pair));
}

TEST_CASE("terms_below compares strata of function symbols") {
  Trs trs = load_trs("mul.trs");
  Certificate cert = load_cert(trs, "mul.cert");
  OrderContext ctx(trs.sig, cert);
  TermPtr s = parse_term("times(s(x), y)", trs.sig);
  TermPtr lower = parse_term("plus(y, y)", trs.sig);
  TermPtr same = parse_term("times(x, x)", trs.sig);
  TermPtr var = parse_term("y", trs.sig);
  TermPtr val = parse_term("s(s(0))", trs.sig);
  TermPtr small = parse_term("s(0)", trs.sig);
  TermPtr zero = parse_term("0", trs.sig);
  CHECK(ctx.terms_below(s, lower));
  CHECK_FALSE(ctx.terms_below(s, same));
  CHECK(ctx.terms_below(s, var));
  CHECK(ctx.terms_below(s, val));
  // Constructors share the bottom stratum, so a value stands above no value.
  CHECK_FALSE(ctx.terms_below(small, zero));
}

TEST_CASE("top_clause names the clause or reports failure") {
  Trs trs = load_trs("mul.trs");
  Certificate cert = load_cert(trs, "mul.cert");
  OrderContext ctx(trs.sig, cert);
  CHECK(std::string(ctx.top_clause(OrderVariant::PopStar, trs.rules[0].lhs,
                                   trs.rules[0].rhs)) == "st");
  CHECK(std::string(ctx.top_clause(OrderVariant::PopStar, trs.rules[1].lhs,
                                   trs.rules[1].rhs)) == "ia");
  CHECK(ctx.top_clause(OrderVariant::PopStar, trs.rules[0].rhs,
                       trs.rules[0].lhs) == nullptr);
}

TEST_CASE("multiset comparison agrees with the decomposition oracle") {
  std::mt19937 rng(20260825);
  auto gt_i = [](int a, int b) { return a / 2 > b / 2; };  // strict part of a preorder
  auto eq_i = [](int a, int b) { return a / 2 == b / 2; };
  int checks = 0, stricts = 0, weaks = 0;
  for (int iter = 0; iter < 400; ++iter) {
    std::uniform_int_distribution<int> len(0, 4), digit(0, 5);
    std::vector<int> ls(len(rng)), rs(len(rng));
    for (int& v : ls) v = digit(rng);
    for (int& v : rs) v = digit(rng);
    MulCmp got = multiset_compare(ls, rs, gt_i, eq_i);
    MulOracle want = mul_oracle(ls, rs, gt_i, eq_i);
    CHECK(mul_strict(got) == want.strict);
    CHECK(mul_weak(got) == want.weak);
    if (want.strict) ++stricts;
    if (want.weak && !want.strict) ++weaks;
    ++checks;
  }
  CHECK(checks >= 200);
  CHECK(stricts > 50);  // the generator must exercise both outcomes
  CHECK(weaks > 10);
}

TEST_CASE("multiset comparison on plain naturals matches the oracle too") {
  std::mt19937 rng(7);
  auto gt_i = [](int a, int b) { return a > b; };
  auto eq_i = [](int a, int b) { return a == b; };
  for (int iter = 0; iter < 300; ++iter) {
    std::uniform_int_distribution<int> len(0, 4), digit(0, 3);
    std::vector<int> ls(len(rng)), rs(len(rng));
    for (int& v : ls) v = digit(rng);
    for (int& v : rs) v = digit(rng);
    MulCmp got = multiset_compare(ls, rs, gt_i, eq_i);
    MulOracle want = mul_oracle(ls, rs, gt_i, eq_i);
    CHECK(mul_strict(got) == want.strict);
    CHECK(mul_weak(got) == want.weak);
  }
}

TEST_CASE("plain pop* is contained in pop* with parameter substitution") {
  int positives = 0, pairs = 0;
  for (uint32_t seed = 1; seed <= 25; ++seed) {
    Trs trs = random_constructor_trs(seed);
    std::optional<Certificate> cert = brute_force_search(trs, OrderVariant::PopStar);
    Certificate use = cert ? *cert : cert_of(trs, "order: pop*\nsafe:\n  f: 2\n");
    OrderContext ctx(trs.sig, use);
    std::mt19937 rng(seed ^ 0x5eed);
    std::vector<std::string> vars{"x", "y"};
    // Drawn up front: the context memoizes by term address, so compared terms
    // must outlive every later query.
    std::vector<TermPtr> terms;
    for (int i = 0; i < 24; ++i) terms.push_back(random_term(rng, trs.sig, 3, vars));
    for (size_t i = 0; i + 1 < terms.size(); i += 2) {
      const TermPtr& s = terms[i];
      const TermPtr& t = terms[i + 1];
      ++pairs;
      if (ctx.gpop(s, t)) {
        ++positives;
        CHECK(ctx.gpopps(s, t));
        CHECK(ctx.mpo(s, t));  // every clause only loosens when safeness is dropped
      }
      CHECK_FALSE(ctx.gpop(s, s));  // strict orders are irreflexive
      CHECK_FALSE(ctx.mpo(t, t));
    }
    // Rule sides are related by construction when the certificate fits.
    if (cert)
      for (const Rule& rule : trs.rules) {
        ++pairs;
        if (ctx.gpop(rule.lhs, rule.rhs)) {
          ++positives;
          CHECK(ctx.gpopps(rule.lhs, rule.rhs));
        }
      }
  }
  CHECK(pairs >= 200);
  CHECK(positives >= 40);
}

TEST_CASE("the order is blind on values") {
  Trs trs = load_trs("mul.trs");
  Certificate cert = load_cert(trs, "mul.cert");
  OrderContext ctx(trs.sig, cert);
  std::mt19937 rng(99);
  int positives = 0, cases = 0;
  std::vector<TermPtr> keep;  // compared terms must outlive the memoizing context
  for (int iter = 0; iter < 250; ++iter) {
    TermPtr s = random_value(rng, trs.sig, 4, {"x"});
    std::vector<TermPtr> subs;
    all_subterms(s, subs);
    TermPtr t = iter % 2 == 0
                    ? subs[std::uniform_int_distribution<size_t>(0, subs.size() - 1)(rng)]
                    : random_value(rng, trs.sig, 3, {"x"});
    keep.push_back(s);
    keep.push_back(t);
    ++cases;
    for (OrderVariant v : {OrderVariant::PopStar, OrderVariant::PopStarPs}) {
      if (!ctx.greater(v, s, t)) continue;
      ++positives;
      // Descending from a value stays inside values, along subterms modulo
      // equivalence.
      CHECK(term_is_value(t, trs.sig));
      bool strict_super = false;
      for (size_t i = 1; i < subs.size() && !strict_super; ++i)
        strict_super = ctx.safe_equiv(subs[i], t);
      CHECK(strict_super);
    }
  }
  CHECK(cases >= 200);
  CHECK(positives >= 60);
}

TEST_CASE("defined symbols never sink below constructors") {
  // An admissible precedence keeps every defined symbol above every
  // constructor, so basic terms always dominate their value arguments.
  Trs trs = load_trs("mul.trs");
  Certificate cert = load_cert(trs, "mul.cert");
  OrderContext ctx(trs.sig, cert);
  TermPtr basic = parse_term("plus(s(0), s(s(0)))", trs.sig);
  TermPtr one = parse_term("s(0)", trs.sig);
  TermPtr three = parse_term("s(s(s(0)))", trs.sig);
  CHECK(ctx.gpop(basic, one));
  CHECK(ctx.gpop(basic, three));
  CHECK_FALSE(ctx.gpop(one, basic));
}
