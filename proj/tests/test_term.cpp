// popcert: tests for signatures, terms, and the rewrite-system text format.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unordered_set>

#include <popcert/error.hpp>
#include <popcert/term.hpp>
#include <popcert/trs.hpp>

#include "oracles.hpp"

using namespace popcert;
using namespace popcert::testing;

TEST_CASE("parsing the multiplication system yields the expected signature") {
  Trs trs = load_trs("mul.trs");
  CHECK(trs.rules.size() == 4);
  CHECK(trs.warnings.empty());
  CHECK(trs.is_constructor_trs());

  REQUIRE(trs.sig.find("plus").has_value());
  REQUIRE(trs.sig.find("times").has_value());
  REQUIRE(trs.sig.find("s").has_value());
  REQUIRE(trs.sig.find("0").has_value());
  CHECK(trs.sig.is_defined(*trs.sig.find("plus")));
  CHECK(trs.sig.is_defined(*trs.sig.find("times")));
  CHECK_FALSE(trs.sig.is_defined(*trs.sig.find("s")));
  CHECK_FALSE(trs.sig.is_defined(*trs.sig.find("0")));
  CHECK(trs.sig[*trs.sig.find("plus")].arity == 2);
  CHECK(trs.sig[*trs.sig.find("s")].arity == 1);

  CHECK(trs.sig.defined().size() == 2);
  CHECK(trs.sig.constructors().size() == 2);
}

TEST_CASE("nullary symbols parse with and without parentheses") {
  Trs a = parse_trs("(VAR x)\n(RULES f(x) -> 0)");
  Trs b = parse_trs("(VAR x)\n(RULES f(x) -> 0())");
  CHECK(term_eq(a.rules[0].rhs, b.rules[0].rhs));
  CHECK(a.rules[0].rhs->args().empty());
}

TEST_CASE("identifiers admit primes and underscores") {
  Trs trs = parse_trs("(VAR x)\n(RULES issat'(x) -> go_on(x))");
  CHECK(trs.sig.find("issat'").has_value());
  CHECK(trs.sig.find("go_on").has_value());
}

TEST_CASE("format_term is inverse to parsing") {
  Trs trs = load_trs("mul.trs");
  TermPtr t = parse_term("times(s(s(0)), plus(x, s(0)))", trs.sig);
  CHECK(format_term(t, trs.sig) == "times(s(s(0)), plus(x, s(0)))");
  TermPtr again = parse_term(format_term(t, trs.sig), trs.sig);
  CHECK(term_eq(t, again));
}

TEST_CASE("power notation expands unary applications") {
  Trs trs = load_trs("mul.trs");
  FamilyTemplate fam3{"plus(s^@n(0), 0)"};
  CHECK(format_term(fam3.instantiate(3, trs.sig), trs.sig) == "plus(s(s(s(0))), 0)");
  CHECK_THROWS_AS(parse_term("plus(s^@n(0), 0)", trs.sig), Error);

  FamilyTemplate fam{"times(s^@n(0), s^@n(0))"};
  TermPtr t2 = fam.instantiate(2, trs.sig);
  CHECK(format_term(t2, trs.sig) == "times(s(s(0)), s(s(0)))");
  TermPtr t0 = fam.instantiate(0, trs.sig);
  CHECK(format_term(t0, trs.sig) == "times(0, 0)");
}

TEST_CASE("size and depth count occurrences and nesting") {
  Trs trs = load_trs("mul.trs");
  TermPtr t = parse_term("times(s(x), plus(y, 0))", trs.sig);
  CHECK(t->size() == 6);
  CHECK(t->depth() == 3);
  TermPtr v = parse_term("x", trs.sig);
  CHECK(v->size() == 1);
  CHECK(v->depth() == 1);
}

TEST_CASE("term_vars lists first occurrences once, term_funs deduplicates") {
  Trs trs = load_trs("mul.trs");
  TermPtr t = parse_term("plus(times(y, x), times(y, s(0)))", trs.sig);
  CHECK(term_vars(t) == std::vector<std::string>{"y", "x"});
  std::vector<SymId> funs = term_funs(t);
  CHECK(funs.size() == 4);
  CHECK(std::is_sorted(funs.begin(), funs.end()));
}

TEST_CASE("has_subterm finds shared and nested occurrences") {
  Trs trs = load_trs("mul.trs");
  TermPtr t = parse_term("plus(s(s(0)), x)", trs.sig);
  CHECK(has_subterm(t, parse_term("s(0)", trs.sig)));
  CHECK(has_subterm(t, parse_term("x", trs.sig)));
  CHECK(has_subterm(t, t));
  CHECK_FALSE(has_subterm(t, parse_term("s(x)", trs.sig)));
}

TEST_CASE("structural equality ignores sharing, hash containers respect it") {
  Trs trs = load_trs("mul.trs");
  TermPtr a = parse_term("plus(s(0), x)", trs.sig);
  TermPtr b = parse_term("plus(s(0), x)", trs.sig);
  CHECK(a.get() != b.get());
  CHECK(term_eq(a, b));
  std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> set{a, b};
  CHECK(set.size() == 1);
}

TEST_CASE("values and basic terms are classified against the signature") {
  Trs trs = load_trs("mul.trs");
  CHECK(term_is_value(parse_term("s(s(0))", trs.sig), trs.sig));
  CHECK(term_is_value(parse_term("x", trs.sig), trs.sig));
  CHECK_FALSE(term_is_value(parse_term("plus(0, 0)", trs.sig), trs.sig));
  CHECK(term_is_basic(parse_term("times(s(0), x)", trs.sig), trs.sig));
  CHECK_FALSE(term_is_basic(parse_term("times(plus(0, 0), 0)", trs.sig), trs.sig));
  CHECK_FALSE(term_is_basic(parse_term("s(0)", trs.sig), trs.sig));
}

TEST_CASE("write_trs round trips through the parser") {
  for (const char* name : {"mul.trs", "dup.trs", "rev.trs", "sat.trs"}) {
    Trs trs = load_trs(name);
    Trs back = parse_trs(write_trs(trs));
    REQUIRE(back.rules.size() == trs.rules.size());
    for (size_t i = 0; i < trs.rules.size(); ++i) {
      CHECK(format_term(back.rules[i].lhs, back.sig) ==
            format_term(trs.rules[i].lhs, trs.sig));
      CHECK(format_term(back.rules[i].rhs, back.sig) ==
            format_term(trs.rules[i].rhs, trs.sig));
    }
  }
}

TEST_CASE("malformed systems are rejected with positions") {
  CHECK_THROWS_AS(parse_trs("(VAR x)\n(RULES f(x) -> f(x, x))"), Error);   // arity clash
  CHECK_THROWS_AS(parse_trs("(VAR x)\n(RULES x -> f(x))"), Error);         // variable lhs
  CHECK_THROWS_AS(parse_trs("(VAR x y)\n(RULES f(x) -> g(y))"), Error);    // unbound rhs var
  CHECK_THROWS_AS(parse_trs("(VAR x)\n(RULES f(x(0)) -> 0)"), Error);      // applied variable
  CHECK_THROWS_AS(parse_trs("(STRATEGY INNERMOST)\n(RULES a -> b)"), Error);
  CHECK_THROWS_AS(parse_trs("(VAR x)\n(RULES f(x) -> )"), Error);
}

TEST_CASE("duplicate rules warn instead of failing") {
  Trs trs = parse_trs("(VAR x)\n(RULES f(x) -> x f(x) -> x)");
  CHECK(trs.rules.size() == 2);
  CHECK(trs.warnings.size() == 1);
}

TEST_CASE("comment sections are skipped") {
  Trs trs = parse_trs("(COMMENT anything (nested) here)\n(VAR x)\n(RULES f(x) -> x)");
  CHECK(trs.rules.size() == 1);
}

TEST_CASE("parse_term rejects unknown symbols but admits fresh variables") {
  Trs trs = load_trs("mul.trs");
  CHECK_THROWS_AS(parse_term("wedge(0, 0)", trs.sig), Error);
  TermPtr t = parse_term("plus(zz, 0)", trs.sig);
  CHECK(t->args()[0]->is_var());
}

TEST_CASE("signature rejects conflicting arities and remembers kinds") {
  Signature sig;
  SymId f = sig.intern("f", 2, SymbolKind::Defined);
  CHECK(sig.intern("f", 2) == f);
  CHECK_THROWS_AS(sig.intern("f", 3), Error);
  CHECK(sig.is_defined(f));
  sig.set_kind(f, SymbolKind::Constructor);
  CHECK_FALSE(sig.is_defined(f));
}

TEST_CASE("non-constructor left-hand sides are detected") {
  Trs trs = parse_trs("(VAR x)\n(RULES f(f(x, x), x) -> x)");
  CHECK_FALSE(trs.is_constructor_trs());
}
