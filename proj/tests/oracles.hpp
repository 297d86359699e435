// popcert: shared test utilities — independent oracles, generators, process harness.
#pragma once

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <popcert/cert.hpp>
#include <popcert/formula.hpp>
#include <popcert/rewrite.hpp>
#include <popcert/term.hpp>
#include <popcert/trs.hpp>

namespace popcert::testing {

inline std::string data_path(const std::string& name) {
  return std::string(POPCERT_TEST_DATA) + "/" + name;
}

inline Trs load_trs(const std::string& name) { return parse_trs_file(data_path(name)); }

inline Certificate load_cert(const Trs& trs, const std::string& name) {
  return parse_cert_file(data_path(name), trs.sig);
}

struct MulOracle {
  bool weak = false;    // some decomposition covers the whole right side
  bool strict = false;  // a covering decomposition leaves a left element outside
                        // the equality part
};

// Decomposition-style multiset comparison: split the left side into an
// equality part (bijectively matched by eq) and a remainder whose elements
// dominate, via gt, everything on the right that the equality part missed.
// Deliberately structured unlike the production cover search.
template <typename T, typename Gt, typename Eq>
MulOracle mul_oracle(const std::vector<T>& ls, const std::vector<T>& rs, Gt gt, Eq eq) {
  const size_t nl = ls.size(), nr = rs.size();
  MulOracle out;
  for (uint32_t lmask = 0; lmask < (1u << nl); ++lmask) {
    std::vector<size_t> eq_left, rest_left;
    for (size_t i = 0; i < nl; ++i)
      (lmask & (1u << i) ? eq_left : rest_left).push_back(i);
    if (eq_left.size() > nr) continue;
    for (uint32_t rmask = 0; rmask < (1u << nr); ++rmask) {
      std::vector<size_t> eq_right, rest_right;
      for (size_t j = 0; j < nr; ++j)
        (rmask & (1u << j) ? eq_right : rest_right).push_back(j);
      if (eq_right.size() != eq_left.size()) continue;
      std::vector<size_t> perm = eq_right;
      std::sort(perm.begin(), perm.end());
      bool matched = false;
      do {
        bool ok = true;
        for (size_t i = 0; i < eq_left.size() && ok; ++i)
          ok = eq(ls[eq_left[i]], rs[perm[i]]);
        if (ok) matched = true;
      } while (!matched && std::next_permutation(perm.begin(), perm.end()));
      if (!matched) continue;
      bool covered = true;
      for (size_t j : rest_right) {
        bool dominated = false;
        for (size_t i : rest_left)
          if (gt(ls[i], rs[j])) {
            dominated = true;
            break;
          }
        if (!dominated) {
          covered = false;
          break;
        }
      }
      if (!covered) continue;
      out.weak = true;
      if (!rest_left.empty()) out.strict = true;
    }
  }
  return out;
}

// Plain maximal-derivation search without memoization or decomposition; only
// usable on small terms.
inline long long naive_dheight(const TermPtr& t, const Trs& trs, Strategy strat) {
  StepResult sr = successors(t, trs, strat);
  long long best = 0;
  for (const TermPtr& u : sr.successors)
    best = std::max(best, 1 + naive_dheight(u, trs, strat));
  return best;
}

// Backtracking satisfiability on a CNF, splitting on the lowest unassigned
// variable; no learning, no watching — independent of the production solver.
inline bool naive_cnf_sat(const Cnf& cnf) {
  std::vector<int> assign(cnf.num_vars + 1, 0);  // 0 unset, 1 true, -1 false
  std::function<bool(int)> go = [&](int var) -> bool {
    bool all_true = true;
    for (const Clause& cl : cnf.clauses) {
      bool sat = false, open = false;
      for (Lit lit : cl) {
        int v = std::abs(lit);
        if (v > cnf.num_vars) return false;
        if (assign[v] == 0)
          open = true;
        else if ((lit > 0) == (assign[v] > 0)) {
          sat = true;
          break;
        }
      }
      if (!sat && !open) return false;
      if (!sat) all_true = false;
    }
    if (all_true) return true;
    if (var > cnf.num_vars) return false;
    for (int value : {1, -1}) {
      assign[var] = value;
      if (go(var + 1)) return true;
    }
    assign[var] = 0;
    return false;
  };
  return go(1);
}

// Deterministic value over {0/0, s/1, c/2} shaped signatures: any nullary
// constructor leafs, unary/binary constructors branch.
inline TermPtr random_value(std::mt19937& rng, const Signature& sig, int depth,
                            const std::vector<std::string>& vars) {
  std::vector<SymId> ctors = sig.constructors();
  std::vector<SymId> leafs, inner;
  for (SymId c : ctors) (sig[c].arity == 0 ? leafs : inner).push_back(c);
  if (!vars.empty() && std::uniform_int_distribution<int>(0, 3)(rng) == 0)
    return Term::make_var(vars[std::uniform_int_distribution<size_t>(0, vars.size() - 1)(rng)]);
  if (depth <= 1 || inner.empty() || std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
    if (!leafs.empty())
      return Term::make_app(leafs[std::uniform_int_distribution<size_t>(0, leafs.size() - 1)(rng)], {});
  }
  SymId c = inner[std::uniform_int_distribution<size_t>(0, inner.size() - 1)(rng)];
  std::vector<TermPtr> args;
  for (int i = 0; i < sig[c].arity; ++i) args.push_back(random_value(rng, sig, depth - 1, vars));
  return Term::make_app(c, std::move(args));
}

// Any term over the whole signature, bounded depth.
inline TermPtr random_term(std::mt19937& rng, const Signature& sig, int depth,
                           const std::vector<std::string>& vars) {
  if (!vars.empty() && std::uniform_int_distribution<int>(0, 4)(rng) == 0)
    return Term::make_var(vars[std::uniform_int_distribution<size_t>(0, vars.size() - 1)(rng)]);
  std::vector<SymId> pool;
  for (SymId f = 0; f < static_cast<SymId>(sig.size()); ++f)
    if (depth > 1 || sig[f].arity == 0) pool.push_back(f);
  if (pool.empty()) return Term::make_var(vars.empty() ? "x" : vars[0]);
  SymId f = pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
  std::vector<TermPtr> args;
  for (int i = 0; i < sig[f].arity; ++i) args.push_back(random_term(rng, sig, depth - 1, vars));
  return Term::make_app(f, std::move(args));
}

// Small constructor TRS over defined {f/2, g/1, h/1} (h optional) and
// constructors {a/0, s/1, c/2}: left-hand sides apply a defined symbol to
// random values, right-hand sides are arbitrary shallow terms over the bound
// variables.
inline Trs random_constructor_trs(uint32_t seed) {
  std::mt19937 rng(seed);
  Trs trs;
  SymId f = trs.sig.intern("f", 2, SymbolKind::Defined);
  SymId g = trs.sig.intern("g", 1, SymbolKind::Defined);
  bool with_h = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  SymId h = with_h ? trs.sig.intern("h", 1, SymbolKind::Defined) : -1;
  trs.sig.intern("a", 0);
  trs.sig.intern("s", 1);
  trs.sig.intern("c", 2);

  std::vector<std::string> vars{"x", "y"};
  std::vector<SymId> defined{f, g};
  if (with_h) defined.push_back(h);
  for (SymId d : defined) {
    int nrules = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int r = 0; r < nrules; ++r) {
      std::vector<TermPtr> largs;
      for (int i = 0; i < trs.sig[d].arity; ++i)
        largs.push_back(random_value(rng, trs.sig, 2, {vars[static_cast<size_t>(i) % vars.size()]}));
      TermPtr lhs = Term::make_app(d, std::move(largs));
      std::vector<std::string> bound = term_vars(lhs);
      TermPtr rhs = random_term(rng, trs.sig, 3, bound);
      trs.rules.push_back({lhs, rhs});
    }
  }
  return trs;
}

// Two-recursion system with helper symbols that have no rules of their own;
// not expressible in the text format, which infers defined symbols from rule
// heads.
inline Trs make_double_call_trs() {
  Trs trs = parse_trs(
      "(VAR x y)\n"
      "(RULES\n"
      "  f(0, y) -> y\n"
      "  f(s(x), y) -> g(h(x), f(x, y))\n"
      ")\n");
  trs.sig.set_kind(*trs.sig.find("g"), SymbolKind::Defined);
  trs.sig.set_kind(*trs.sig.find("h"), SymbolKind::Defined);
  return trs;
}

inline Certificate double_call_cert(const Trs& trs) {
  Certificate cert;
  cert.order = OrderVariant::PopStar;
  cert.rank.assign(trs.sig.size(), 0);
  cert.safe.assign(trs.sig.size(), {});
  SymId f = *trs.sig.find("f"), g = *trs.sig.find("g"), h = *trs.sig.find("h");
  cert.rank[f] = 2;
  cert.rank[g] = 1;
  cert.rank[h] = 1;
  cert.safe[f] = {2};
  cert.safe[g] = {2};
  cert.normalize(trs.sig);
  return cert;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

inline CommandResult run_command(const std::string& command) {
  CommandResult res;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
  int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

inline CommandResult run_cli(const std::string& args) {
  return run_command(std::string(POPCERT_BIN) + " " + args);
}

}  // namespace popcert::testing
