// popcert: propositional encoding of the certificate search, model decoding,
// and the synthesis driver.
#include "popcert/encode.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "popcert/error.hpp"
#include "popcert/orders.hpp"
#include "popcert/solver.hpp"

namespace popcert {

namespace {

// Relations whose instances may become shared definition atoms.  EqSafe is
// permutative equivalence respecting the safe mapping, EqPerm ignores it,
// Sq is the auxiliary order used on normal argument positions.
enum class Rel : uint8_t { EqSafe, EqPerm, Sq, Pop, PopPs, Mpo };

constexpr uint8_t kPermSafe = 0;   // matching selectors, safe-respecting
constexpr uint8_t kPermPlain = 1;  // matching selectors, safe-blind
constexpr uint8_t kCover = 2;      // multiset cover selectors
constexpr uint8_t kCoverEq = 0;    // "left element is an eq-partner" flags
constexpr uint8_t kIaMark = 1;     // "argument spends the stratum exception"

struct Encoder {
  using Ref = FormulaArena::Ref;
  using DefKey = std::tuple<uint8_t, int, int>;

  const Trs& trs;
  const Signature& sig;
  OrderVariant variant;
  bool share;

  FormulaArena ar;
  int next_var = 1;
  int nbits = 1;
  std::vector<std::vector<int>> safe_vars;
  std::vector<std::vector<int>> rank_bit_vars;
  std::map<std::pair<SymId, SymId>, Ref> prec_gt_refs;
  std::map<std::pair<SymId, SymId>, Ref> prec_eq_refs;

  std::vector<TermPtr> terms;
  std::unordered_map<TermPtr, int, TermPtrHash, TermPtrEq> term_ids;

  std::map<DefKey, int> def_vars;   // shared mode: relation instance -> atom
  std::map<DefKey, Ref> body_refs;  // unshared mode: memoized bodies
  std::deque<DefKey> pending;

  std::map<std::tuple<uint8_t, int, int, int, int>, Ref> grid_atoms;
  std::map<std::tuple<uint8_t, int, int, int>, Ref> line_atoms;

  std::vector<Ref> constraints;

  Encoder(const Trs& t, OrderVariant v, bool share_defs)
      : trs(t), sig(t.sig), variant(v), share(share_defs) {
    int ndef = static_cast<int>(sig.defined().size());
    while ((1 << nbits) < ndef) ++nbits;
    safe_vars.assign(sig.size(), {});
    rank_bit_vars.assign(sig.size(), {});
    for (SymId f : sig.defined()) {
      rank_bit_vars[f].resize(nbits);
      for (int b = 0; b < nbits; ++b) rank_bit_vars[f][b] = next_var++;
      if (variant != OrderVariant::Mpo) {
        safe_vars[f].resize(sig[f].arity);
        for (int i = 0; i < sig[f].arity; ++i) safe_vars[f][i] = next_var++;
      }
    }
  }

  int tid(const TermPtr& t) {
    auto [it, fresh] = term_ids.try_emplace(t, static_cast<int>(terms.size()));
    if (fresh) terms.push_back(t);
    return it->second;
  }

  Ref bit(SymId f, int b) { return ar.atom(rank_bit_vars[f][b]); }

  Ref rank_gt_circuit(SymId f, SymId g) {
    Ref acc = ar.fls();
    for (int b = 0; b < nbits; ++b) {
      Ref fb = bit(f, b), gb = bit(g, b);
      acc = ar.disj({ar.conj({fb, ar.negate(gb)}), ar.conj({ar.iff(fb, gb), acc})});
    }
    return acc;
  }

  Ref rank_eq_circuit(SymId f, SymId g) {
    std::vector<Ref> cs;
    for (int b = 0; b < nbits; ++b) cs.push_back(ar.iff(bit(f, b), bit(g, b)));
    return ar.conj(std::move(cs));
  }

  // Precedence literals fold against the fixed symbol kinds: constructors sit
  // below every defined symbol and are all equivalent.  The rank-bit circuit
  // is attached one-directionally; precedence atoms only occur positively, so
  // this keeps satisfiability intact.
  Ref prec_gt(SymId f, SymId g) {
    if (!sig.is_defined(f) || f == g) return ar.fls();
    if (!sig.is_defined(g)) return ar.tru();
    auto it = prec_gt_refs.find({f, g});
    if (it != prec_gt_refs.end()) return it->second;
    Ref a = ar.atom(next_var++);
    prec_gt_refs.emplace(std::make_pair(f, g), a);
    constraints.push_back(ar.implies(a, rank_gt_circuit(f, g)));
    return a;
  }

  Ref prec_eq(SymId f, SymId g) {
    if (f == g) return ar.tru();
    bool df = sig.is_defined(f), dg = sig.is_defined(g);
    if (!df && !dg) return ar.tru();
    if (df != dg) return ar.fls();
    std::pair<SymId, SymId> key{std::min(f, g), std::max(f, g)};
    auto it = prec_eq_refs.find(key);
    if (it != prec_eq_refs.end()) return it->second;
    Ref a = ar.atom(next_var++);
    prec_eq_refs.emplace(key, a);
    constraints.push_back(ar.implies(a, rank_eq_circuit(key.first, key.second)));
    return a;
  }

  Ref safe_ref(SymId f, int pos) {
    if (!sig.is_defined(f)) return ar.tru();
    return ar.atom(safe_vars[f][pos - 1]);
  }

  Ref grid_atom(uint8_t tag, int si, int ti, int i, int j) {
    auto key = std::make_tuple(tag, si, ti, i, j);
    auto it = grid_atoms.find(key);
    if (it != grid_atoms.end()) return it->second;
    Ref a = ar.atom(next_var++);
    grid_atoms.emplace(key, a);
    return a;
  }

  Ref line_atom(uint8_t tag, int si, int ti, int i) {
    auto key = std::make_tuple(tag, si, ti, i);
    auto it = line_atoms.find(key);
    if (it != line_atoms.end()) return it->second;
    Ref a = ar.atom(next_var++);
    line_atoms.emplace(key, a);
    return a;
  }

  // Instances decidable without looking at the certificate.
  std::optional<Ref> quick(Rel rel, const TermPtr& s, const TermPtr& t) {
    if (rel == Rel::EqSafe || rel == Rel::EqPerm) {
      if (term_eq(s, t)) return ar.tru();
      if (s->is_var() || t->is_var()) return ar.fls();
      if (s->args().size() != t->args().size()) return ar.fls();
      return std::nullopt;
    }
    if (s->is_var()) return ar.fls();
    return std::nullopt;
  }

  Ref ref_for(Rel rel, const TermPtr& s, const TermPtr& t) {
    if (auto q = quick(rel, s, t)) return *q;
    DefKey key{static_cast<uint8_t>(rel), tid(s), tid(t)};
    if (share) {
      auto it = def_vars.find(key);
      if (it != def_vars.end()) return ar.atom(it->second);
      int v = next_var++;
      def_vars.emplace(key, v);
      pending.push_back(key);
      return ar.atom(v);
    }
    auto it = body_refs.find(key);
    if (it != body_refs.end()) return it->second;
    Ref b = body(rel, s, t);
    body_refs.emplace(key, b);
    return b;
  }

  Ref ge(Rel strict, Rel eq, const TermPtr& s, const TermPtr& t) {
    return ar.disj({ref_for(eq, s, t), ref_for(strict, s, t)});
  }

  // Every function symbol of u must sit strictly below some symbol of s.
  Ref below_ref(const TermPtr& s, const TermPtr& u) {
    std::vector<SymId> sdef;
    for (SymId h : term_funs(s))
      if (sig.is_defined(h)) sdef.push_back(h);
    std::vector<Ref> cs;
    for (SymId h : term_funs(u)) {
      if (!sig.is_defined(h)) {
        cs.push_back(sdef.empty() ? ar.fls() : ar.tru());
        continue;
      }
      std::vector<Ref> alts;
      for (SymId fp : sdef) alts.push_back(prec_gt(fp, h));
      cs.push_back(ar.disj(std::move(alts)));
    }
    return ar.conj(std::move(cs));
  }

  Ref body(Rel rel, const TermPtr& s, const TermPtr& t) {
    switch (rel) {
      case Rel::EqSafe: return body_equiv(s, t, true);
      case Rel::EqPerm: return body_equiv(s, t, false);
      case Rel::Sq: return body_sq(s, t);
      case Rel::Pop: return body_pop(s, t, false);
      case Rel::PopPs: return body_pop(s, t, true);
      case Rel::Mpo: return body_mpo(s, t);
    }
    throw Error("encode: unknown relation");
  }

  // Equal roots in the precedence and a permutation matching the arguments
  // pointwise; the safe-respecting variant also keeps safeness aligned.
  Ref body_equiv(const TermPtr& s, const TermPtr& t, bool respect_safe) {
    SymId f = s->sym(), g = t->sym();
    Ref root = prec_eq(f, g);
    if (root == ar.fls()) return ar.fls();
    int n = static_cast<int>(s->args().size());
    if (n == 0) return root;
    uint8_t tag = respect_safe ? kPermSafe : kPermPlain;
    Rel sub = respect_safe ? Rel::EqSafe : Rel::EqPerm;
    int si = tid(s), ti = tid(t);
    std::vector<Ref> cs{root};
    for (int i = 0; i < n; ++i) {
      std::vector<Ref> row;
      for (int j = 0; j < n; ++j) row.push_back(grid_atom(tag, si, ti, i, j));
      cs.push_back(ar.exactly_one(row));
    }
    for (int j = 0; j < n; ++j) {
      std::vector<Ref> col;
      for (int i = 0; i < n; ++i) col.push_back(grid_atom(tag, si, ti, i, j));
      cs.push_back(ar.exactly_one(col));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Ref> link{ref_for(sub, s->args()[i], t->args()[j])};
        if (respect_safe)
          link.push_back(ar.iff(safe_ref(f, i + 1), safe_ref(g, j + 1)));
        cs.push_back(ar.implies(grid_atom(tag, si, ti, i, j), ar.conj(std::move(link))));
      }
    return ar.conj(std::move(cs));
  }

  // Auxiliary order: descend through a normal argument, or go below a smaller
  // root covering every argument.
  Ref body_sq(const TermPtr& s, const TermPtr& t) {
    SymId f = s->sym();
    bool fdef = sig.is_defined(f);
    std::vector<Ref> parts;
    for (int i = 0; i < static_cast<int>(s->args().size()); ++i) {
      Ref geref = ge(Rel::Sq, Rel::EqSafe, s->args()[i], t);
      parts.push_back(fdef ? ar.conj({ar.negate(safe_ref(f, i + 1)), geref}) : geref);
    }
    if (fdef && !t->is_var()) {
      Ref pg = prec_gt(f, t->sym());
      if (pg != ar.fls()) {
        std::vector<Ref> sub{pg};
        for (const auto& tj : t->args()) sub.push_back(ref_for(Rel::Sq, s, tj));
        parts.push_back(ar.conj(std::move(sub)));
      }
    }
    return ar.disj(std::move(parts));
  }

  // Multiset cover of the right elements: each column picks exactly one left
  // coverer; eq-partner lefts pair off exactly one element.  `strict_normal`
  // asks for a witness left that is normal (or any left, safe-blind) and not
  // an eq-partner.
  struct CoverGrid {
    std::vector<std::vector<Ref>> sel;  // [i][j]
    std::vector<Ref> eqflag;            // [i]
  };

  CoverGrid make_cover(const TermPtr& s, const TermPtr& t) {
    int n = static_cast<int>(s->args().size());
    int m = static_cast<int>(t->args().size());
    int si = tid(s), ti = tid(t);
    CoverGrid grid;
    grid.sel.assign(n, std::vector<Ref>(m, ar.fls()));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) grid.sel[i][j] = grid_atom(kCover, si, ti, i, j);
    for (int i = 0; i < n; ++i) grid.eqflag.push_back(line_atom(kCoverEq, si, ti, i));
    return grid;
  }

  // pop* / pop*ps, clauses st, ia, and ep in one disjunction.
  Ref body_pop(const TermPtr& s, const TermPtr& t, bool ps) {
    Rel main = ps ? Rel::PopPs : Rel::Pop;
    SymId f = s->sym();
    std::vector<Ref> parts;
    for (const auto& si : s->args()) parts.push_back(ge(main, Rel::EqSafe, si, t));
    if (!t->is_var() && sig.is_defined(f)) {
      SymId g = t->sym();
      Ref pg = prec_gt(f, g);
      if (pg != ar.fls()) parts.push_back(ia_pop(main, s, t, pg));
      Ref pe = prec_eq(f, g);
      if (pe != ar.fls())
        parts.push_back(ps ? ep_ps(s, t, pe) : ep_pop(s, t, pe));
    }
    return ar.disj(std::move(parts));
  }

  // Root descent: normal arguments of the right side fall under the auxiliary
  // order, safe ones under the main order, and at most one safe argument may
  // leave the stratum below the symbols of s.
  Ref ia_pop(Rel main, const TermPtr& s, const TermPtr& t, Ref pg) {
    SymId g = t->sym();
    int m = static_cast<int>(t->args().size());
    int si = tid(s), ti = tid(t);
    std::vector<Ref> cs{pg};
    std::vector<Ref> marks;
    for (int j = 0; j < m; ++j) {
      const TermPtr& tj = t->args()[j];
      Ref sj = safe_ref(g, j + 1);
      if (sj == ar.tru()) {
        cs.push_back(ref_for(main, s, tj));
      } else {
        cs.push_back(ar.implies(sj, ref_for(main, s, tj)));
        cs.push_back(ar.implies(ar.negate(sj), ref_for(Rel::Sq, s, tj)));
      }
      Ref mark = line_atom(kIaMark, si, ti, j);
      marks.push_back(mark);
      cs.push_back(ar.implies(ar.conj({sj, ar.negate(mark)}), below_ref(s, tj)));
    }
    cs.push_back(ar.at_most_one(marks));
    return ar.conj(std::move(cs));
  }

  // Equivalent roots; the normal arguments decrease strictly as multisets and
  // the safe ones weakly, with covers aligned to the safe mapping.
  Ref ep_pop(const TermPtr& s, const TermPtr& t, Ref pe) {
    SymId f = s->sym(), g = t->sym();
    int n = static_cast<int>(s->args().size());
    int m = static_cast<int>(t->args().size());
    CoverGrid grid = make_cover(s, t);
    std::vector<Ref> cs{pe};
    for (int j = 0; j < m; ++j) {
      std::vector<Ref> col;
      for (int i = 0; i < n; ++i) col.push_back(grid.sel[i][j]);
      cs.push_back(ar.exactly_one(col));
    }
    for (int i = 0; i < n; ++i) {
      std::vector<Ref> row;
      for (int j = 0; j < m; ++j) row.push_back(grid.sel[i][j]);
      cs.push_back(ar.implies(grid.eqflag[i], ar.exactly_one(row)));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        Ref link = ar.conj(
            {ar.iff(safe_ref(f, i + 1), safe_ref(g, j + 1)),
             ar.implies(grid.eqflag[i], ref_for(Rel::EqSafe, s->args()[i], t->args()[j])),
             ar.implies(ar.negate(grid.eqflag[i]), ref_for(Rel::Pop, s->args()[i], t->args()[j]))});
        cs.push_back(ar.implies(grid.sel[i][j], link));
      }
    std::vector<Ref> witness;
    for (int i = 0; i < n; ++i)
      witness.push_back(ar.conj({ar.negate(safe_ref(f, i + 1)), ar.negate(grid.eqflag[i])}));
    cs.push_back(ar.disj(std::move(witness)));
    return ar.conj(std::move(cs));
  }

  // Equivalent roots; the normal arguments decrease strictly as multisets
  // while every safe right argument falls under the main order and stays in
  // the stratum below the symbols of s.
  Ref ep_ps(const TermPtr& s, const TermPtr& t, Ref pe) {
    SymId f = s->sym(), g = t->sym();
    int n = static_cast<int>(s->args().size());
    int m = static_cast<int>(t->args().size());
    CoverGrid grid = make_cover(s, t);
    std::vector<Ref> cs{pe};
    for (int j = 0; j < m; ++j) {
      const TermPtr& tj = t->args()[j];
      Ref sj = safe_ref(g, j + 1);
      cs.push_back(ar.implies(sj, ar.conj({ref_for(Rel::PopPs, s, tj), below_ref(s, tj)})));
      std::vector<Ref> col;
      for (int i = 0; i < n; ++i) col.push_back(grid.sel[i][j]);
      cs.push_back(ar.implies(ar.negate(sj), ar.exactly_one(col)));
    }
    for (int i = 0; i < n; ++i) {
      std::vector<Ref> row;
      for (int j = 0; j < m; ++j) row.push_back(grid.sel[i][j]);
      cs.push_back(ar.implies(grid.eqflag[i], ar.exactly_one(row)));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) {
        Ref link = ar.conj(
            {ar.negate(safe_ref(f, i + 1)), ar.negate(safe_ref(g, j + 1)),
             ar.implies(grid.eqflag[i], ref_for(Rel::EqSafe, s->args()[i], t->args()[j])),
             ar.implies(ar.negate(grid.eqflag[i]),
                        ref_for(Rel::PopPs, s->args()[i], t->args()[j]))});
        cs.push_back(ar.implies(grid.sel[i][j], link));
      }
    std::vector<Ref> witness;
    for (int i = 0; i < n; ++i)
      witness.push_back(ar.conj({ar.negate(safe_ref(f, i + 1)), ar.negate(grid.eqflag[i])}));
    cs.push_back(ar.disj(std::move(witness)));
    return ar.conj(std::move(cs));
  }

  // Multiset path order: safe-blind subterm step, root descent over all
  // arguments, or equivalent roots with a strict argument multiset decrease.
  Ref body_mpo(const TermPtr& s, const TermPtr& t) {
    SymId f = s->sym();
    std::vector<Ref> parts;
    for (const auto& si : s->args()) parts.push_back(ge(Rel::Mpo, Rel::EqPerm, si, t));
    if (!t->is_var()) {
      SymId g = t->sym();
      Ref pg = prec_gt(f, g);
      if (pg != ar.fls()) {
        std::vector<Ref> sub{pg};
        for (const auto& tj : t->args()) sub.push_back(ref_for(Rel::Mpo, s, tj));
        parts.push_back(ar.conj(std::move(sub)));
      }
      Ref pe = prec_eq(f, g);
      if (pe != ar.fls()) {
        int n = static_cast<int>(s->args().size());
        int m = static_cast<int>(t->args().size());
        CoverGrid grid = make_cover(s, t);
        std::vector<Ref> cs{pe};
        for (int j = 0; j < m; ++j) {
          std::vector<Ref> col;
          for (int i = 0; i < n; ++i) col.push_back(grid.sel[i][j]);
          cs.push_back(ar.exactly_one(col));
        }
        for (int i = 0; i < n; ++i) {
          std::vector<Ref> row;
          for (int j = 0; j < m; ++j) row.push_back(grid.sel[i][j]);
          cs.push_back(ar.implies(grid.eqflag[i], ar.exactly_one(row)));
        }
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < m; ++j) {
            Ref link = ar.conj(
                {ar.implies(grid.eqflag[i], ref_for(Rel::EqPerm, s->args()[i], t->args()[j])),
                 ar.implies(ar.negate(grid.eqflag[i]),
                            ref_for(Rel::Mpo, s->args()[i], t->args()[j]))});
            cs.push_back(ar.implies(grid.sel[i][j], link));
          }
        std::vector<Ref> witness;
        for (int i = 0; i < n; ++i) witness.push_back(ar.negate(grid.eqflag[i]));
        cs.push_back(ar.disj(std::move(witness)));
        parts.push_back(ar.conj(std::move(cs)));
      }
    }
    return ar.disj(std::move(parts));
  }

  Encoding run() {
    Rel main = variant == OrderVariant::PopStar     ? Rel::Pop
               : variant == OrderVariant::PopStarPs ? Rel::PopPs
                                                    : Rel::Mpo;
    for (const Rule& rule : trs.rules)
      constraints.push_back(ref_for(main, rule.lhs, rule.rhs));
    while (!pending.empty()) {
      DefKey key = pending.front();
      pending.pop_front();
      Ref head = ar.atom(def_vars.at(key));
      // copies, not references: body() interns new terms, which may grow
      // `terms` under our feet
      TermPtr s = terms[std::get<1>(key)];
      TermPtr t = terms[std::get<2>(key)];
      Ref b = body(static_cast<Rel>(std::get<0>(key)), s, t);
      constraints.push_back(ar.implies(head, b));
    }
    Ref root = ar.conj(std::move(constraints));

    Encoding enc;
    enc.variant = variant;
    enc.num_atoms = static_cast<size_t>(next_var - 1);
    enc.rank_bits = nbits;
    enc.safe_vars = std::move(safe_vars);
    enc.rank_bit_vars = std::move(rank_bit_vars);
    enc.cnf = ar.to_cnf(root, next_var - 1);
    return enc;
  }
};

std::pair<SolveStatus, std::vector<bool>> run_external(const std::string& command,
                                                       const Cnf& cnf) {
  namespace fs = std::filesystem;
  std::string tmpl = (fs::temp_directory_path() / "popcert-XXXXXX").string();
  std::vector<char> path(tmpl.begin(), tmpl.end());
  path.push_back('\0');
  int fd = mkstemp(path.data());
  if (fd < 0) throw Error("cannot create a temporary CNF file");
  close(fd);
  std::string file(path.data());
  {
    std::ofstream out(file);
    export_dimacs(cnf, out);
  }
  std::string cmdline = command + " " + file;
  FILE* pipe = popen(cmdline.c_str(), "r");
  if (!pipe) {
    fs::remove(file);
    throw Error("cannot run solver command: " + command);
  }
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  pclose(pipe);
  fs::remove(file);

  auto parsed = parse_solver_output(output, cnf.num_vars);
  if (!parsed) throw Error("unrecognized output from solver command: " + command);
  if (!parsed->sat) return {SolveStatus::Unsat, {}};
  for (const Clause& c : cnf.clauses) {
    bool ok = false;
    for (Lit l : c) {
      int v = std::abs(l);
      bool val = v < static_cast<int>(parsed->model.size()) && parsed->model[v];
      if ((l > 0) == val) {
        ok = true;
        break;
      }
    }
    if (!ok) throw Error("solver command returned a non-model: " + command);
  }
  return {SolveStatus::Sat, std::move(parsed->model)};
}

}  // namespace

Encoding encode_search(const Trs& trs, OrderVariant variant, bool share_defs) {
  Encoder enc(trs, variant, share_defs);
  return enc.run();
}

Certificate decode_model(const Encoding& enc, const Trs& trs,
                         const std::vector<bool>& model) {
  const Signature& sig = trs.sig;
  Certificate cert;
  cert.order = enc.variant;
  cert.rank.assign(sig.size(), 0);
  cert.safe.assign(sig.size(), {});
  auto set = [&](int var) { return var < static_cast<int>(model.size()) && model[var]; };
  for (SymId f : sig.defined()) {
    int value = 0;
    for (int b = 0; b < enc.rank_bits; ++b)
      if (set(enc.rank_bit_vars[f][b])) value |= 1 << b;
    cert.rank[f] = value + 1;
    if (enc.variant != OrderVariant::Mpo)
      for (int pos = 1; pos <= sig[f].arity; ++pos)
        if (set(enc.safe_vars[f][pos - 1])) cert.safe[f].push_back(pos);
  }
  cert.normalize(sig);
  return cert;
}

SynthResult synthesize(const Trs& trs, OrderVariant variant, const SynthOptions& opts) {
  Encoding enc = encode_search(trs, variant, opts.share_defs);
  if (!opts.cnf_out.empty()) {
    std::ofstream out(opts.cnf_out);
    if (!out) throw Error("cannot write " + opts.cnf_out);
    export_dimacs(enc.cnf, out);
  }

  SynthResult res;
  res.vars = enc.cnf.num_vars;
  res.clauses = enc.cnf.clauses.size();

  SolveStatus status;
  std::vector<bool> model;
  if (opts.solver == "internal") {
    SolveResult sr = solve_cnf(enc.cnf, opts.conflict_budget);
    status = sr.status;
    model = std::move(sr.model);
    res.conflicts = sr.conflicts;
  } else if (opts.solver.rfind("dimacs:", 0) == 0) {
    auto [st, m] = run_external(opts.solver.substr(7), enc.cnf);
    status = st;
    model = std::move(m);
  } else {
    throw Error("unknown solver '" + opts.solver + "' (expected internal or dimacs:<command>)");
  }

  switch (status) {
    case SolveStatus::Unknown:
      res.status = SynthStatus::Unknown;
      return res;
    case SolveStatus::Unsat:
      res.status = SynthStatus::Incompatible;
      return res;
    case SolveStatus::Sat:
      break;
  }

  Certificate cert = decode_model(enc, trs, model);
  if (!check_compat(trs, cert).compatible)
    throw Error("internal error: synthesized certificate fails verification");
  res.status = SynthStatus::Compatible;
  res.cert = std::move(cert);
  return res;
}

}  // namespace popcert
