// popcert: budgeted sequence orders — clause-by-clause decision procedures,
// universe generation, longest descent chains.
#include <popcert/seqorder.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <popcert/error.hpp>
#include <popcert/multiset.hpp>

namespace popcert {

namespace {

// True iff a perfect matching exists between xs and ys under `related`.
bool perm_match(
    const std::vector<SeqPtr>& xs, const std::vector<SeqPtr>& ys,
    const std::function<bool(const SeqPtr&, const SeqPtr&)>& related) {
  if (xs.size() != ys.size()) return false;
  std::vector<int8_t> used(ys.size(), 0);
  auto go = [&](auto&& self, size_t i) -> bool {
    if (i == xs.size()) return true;
    for (size_t j = 0; j < ys.size(); ++j) {
      if (used[j] || !related(xs[i], ys[j])) continue;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return go(go, 0);
}

}  // namespace

NormPrec::NormPrec(const Signature& sig, const Certificate& cert) {
  const int n = sig.size();
  rank_.resize(static_cast<size_t>(n));
  for (SymId f = 0; f < n; ++f)
    rank_[static_cast<size_t>(f)] =
        sig.is_defined(f) ? cert.rank[static_cast<size_t>(f)] + 1 : 1;
}

int NormPrec::rank(int32_t sym) const {
  if (sym < 0) return 0;
  return rank_.at(static_cast<size_t>(sym));
}

SeqOrder::SeqOrder(const Signature& sig, const Certificate& cert, int k)
    : k_(k) {
  if (k < 1) throw Error("sequence order: width budget must be at least 1");
  Certificate c = cert;
  c.normalize(sig);
  prec_ = NormPrec(sig, c);
}

size_t SeqOrder::KeyHash::operator()(const Key& k) const {
  size_t h = std::hash<const void*>()(k.a.get());
  h = h * 1000003u ^ std::hash<const void*>()(k.b.get());
  h = h * 1000003u ^ static_cast<size_t>(k.l);
  h = h * 1000003u ^ static_cast<size_t>(k.rel);
  return h;
}

bool SeqOrder::equiv(const SeqPtr& a, const SeqPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->items.size() != b->items.size()) return false;
  if (a->kind == SeqTerm::Kind::Var) return a->var == b->var;
  if (a->kind == SeqTerm::Kind::App && !prec_.eq(a->sym, b->sym)) return false;
  return decide(Rel::Equiv, a, b, 0);
}

bool SeqOrder::gt_aux(const SeqPtr& a, const SeqPtr& b, int l) {
  return decide(Rel::Aux, a, b, l);
}

bool SeqOrder::gt(const SeqPtr& a, const SeqPtr& b, int l) {
  return decide(Rel::Main, a, b, l);
}

bool SeqOrder::ge_rel(Rel rel, const SeqPtr& a, const SeqPtr& b, int l) {
  return equiv(a, b) || decide(rel, a, b, l);
}

bool SeqOrder::decide(Rel rel, const SeqPtr& a, const SeqPtr& b, int l) {
  if (rel != Rel::Equiv && l <= 0) return false;
  Key key{rel, rel == Rel::Equiv ? 0 : l, a, b};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool r = compute(rel, a, b, l);
  memo_.emplace(std::move(key), r);
  return r;
}

bool SeqOrder::compute(Rel rel, const SeqPtr& a, const SeqPtr& b, int l) {
  if (rel == Rel::Equiv)
    return perm_match(a->items, b->items, [&](const SeqPtr& x, const SeqPtr& y) {
      return equiv(x, y);
    });

  const bool main = rel == Rel::Main;
  if (a->kind == SeqTerm::Kind::Var) return false;
  if (a->kind == SeqTerm::Kind::Seq)
    return !a->items.empty() && split_clause(rel, a, b, l);

  // Subterm: some argument of the left application already dominates b.
  for (const auto& arg : a->items)
    if (ge_rel(rel, arg, b, l)) return true;

  if (b->kind == SeqTerm::Kind::App) {
    const int m = static_cast<int>(b->items.size());
    // Precedence descent: smaller root, every argument stays below a.
    if (prec_.gt(a->sym, b->sym) && m <= k_) {
      bool ok = true;
      for (const auto& arg : b->items)
        if (!decide(Rel::Aux, a, arg, l - 1)) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    // Equal-rank descent: the argument multiset strictly decreases.
    if (main && prec_.eq(a->sym, b->sym) && m <= k_) {
      auto rest = multiset_compare(
          a->items, b->items,
          [&](const SeqPtr& x, const SeqPtr& y) {
            return decide(Rel::Main, x, y, l);
          },
          [&](const SeqPtr& x, const SeqPtr& y) { return equiv(x, y); });
      if (mul_strict(rest)) return true;
    }
  } else if (b->kind == SeqTerm::Kind::Seq) {
    // Sequence on the right: each element stays below a, at most one of them
    // (main order only) followed with main strength.
    const int m = static_cast<int>(b->items.size());
    if (m <= a->width + k_) {
      int hard = -1;
      bool ok = true;
      for (size_t j = 0; j < b->items.size(); ++j) {
        if (decide(Rel::Aux, a, b->items[j], l - 1)) continue;
        if (!main || hard >= 0) {
          ok = false;
          break;
        }
        hard = static_cast<int>(j);
      }
      if (ok && hard >= 0)
        ok = decide(Rel::Main, a, b->items[static_cast<size_t>(hard)], l - 1);
      if (ok) return true;
    }
  }
  return false;
}

// Sequence on the left: b's elements are split among a's elements so that
// every share is dominated and at least one strictly.
bool SeqOrder::split_clause(Rel rel, const SeqPtr& a, const SeqPtr& b, int l) {
  std::vector<SeqPtr> elems = seq_elements(b);
  if (static_cast<int>(elems.size()) > a->width + k_) return false;

  std::vector<SeqPtr> reps;
  std::vector<int> remaining;
  for (const auto& e : elems) {
    bool found = false;
    for (size_t c = 0; c < reps.size(); ++c)
      if (equiv(e, reps[c])) {
        ++remaining[c];
        found = true;
        break;
      }
    if (!found) {
      reps.push_back(e);
      remaining.push_back(1);
    }
  }

  const auto& slots = a->items;

  auto assign = [&](auto&& self, size_t i, bool strict) -> bool {
    if (i == slots.size()) {
      if (!strict) return false;
      for (int r : remaining)
        if (r) return false;
      return true;
    }
    // Per-slot share selection; deeper slots get their own vector, or they
    // would clobber the choices made here.
    std::vector<int> take(reps.size(), 0);
    auto pick = [&](auto&& pickself, size_t c) -> bool {
      if (c == reps.size()) {
        std::vector<SeqPtr> content;
        for (size_t j = 0; j < reps.size(); ++j)
          content.insert(content.end(), static_cast<size_t>(take[j]), reps[j]);
        SeqPtr share = seq_list(content);
        if (equiv(slots[i], share) && self(self, i + 1, strict)) return true;
        if (decide(rel, slots[i], share, l) && self(self, i + 1, true))
          return true;
        return false;
      }
      for (int t = 0; t <= remaining[c]; ++t) {
        take[c] = t;
        remaining[c] -= t;
        if (pickself(pickself, c + 1)) return true;
        remaining[c] += t;
      }
      take[c] = 0;
      return false;
    };
    return pick(pick, 0);
  };
  return assign(assign, 0, false);
}

namespace {

int seq_depth(const SeqPtr& t) {
  if (t->kind == SeqTerm::Kind::Var) return 1;
  int d = 0;
  for (const auto& e : t->items) d = std::max(d, seq_depth(e));
  return t->kind == SeqTerm::Kind::Seq ? d : 1 + d;
}

// Canonical key: equal keys exactly for equivalent sequence terms (equal-rank
// roots, arguments and elements up to permutation).
std::string universe_key(const NormPrec& prec, const SeqPtr& t) {
  if (t->kind == SeqTerm::Kind::Var) return "v" + t->var;
  std::vector<std::string> child;
  child.reserve(t->items.size());
  for (const auto& e : t->items) child.push_back(universe_key(prec, e));
  std::sort(child.begin(), child.end());
  std::string out =
      t->kind == SeqTerm::Kind::Seq
          ? std::string("s")
          : "t" + std::to_string(prec.rank(t->sym)) + ":" +
                std::to_string(t->items.size());
  out += '(';
  for (size_t i = 0; i < child.size(); ++i) {
    if (i) out += ' ';
    out += child[i];
  }
  out += ')';
  return out;
}

}  // namespace

std::vector<SeqPtr> seq_universe(const NormPrec& prec,
                                 const UniverseSpec& spec) {
  if (spec.depth < 1 || spec.width < 1)
    throw Error("universe: depth and width must be at least 1");
  std::vector<std::pair<int32_t, int>> syms = spec.symbols;
  syms.emplace_back(kBulletSym, 0);

  struct Item {
    SeqPtr t;
    int depth;
  };
  std::vector<Item> terms;
  std::set<std::string> seen;

  auto add_term = [&](const SeqPtr& t) {
    if (t->width > spec.width) return;
    std::string key = universe_key(prec, t);
    if (!seen.insert(std::move(key)).second) return;
    terms.push_back({t, seq_depth(t)});
    if (terms.size() > spec.max_size)
      throw Error("universe: size cap exceeded");
  };

  // All sequences (empty or with at least two elements) over the pool with
  // total width within bounds; pool members are pairwise inequivalent, so
  // multisets map one-to-one onto canonical keys.
  auto seqs_over = [&](const std::vector<SeqPtr>& pool) {
    std::vector<SeqPtr> out;
    std::vector<SeqPtr> cur;
    auto rec = [&](auto&& self, size_t from, int wleft) -> void {
      if (cur.size() != 1) {
        out.push_back(seq_list(cur));
        if (out.size() > spec.max_size)
          throw Error("universe: size cap exceeded");
      }
      for (size_t i = from; i < pool.size(); ++i) {
        if (pool[i]->width > wleft) continue;
        cur.push_back(pool[i]);
        self(self, i, wleft - pool[i]->width);
        cur.pop_back();
      }
    };
    rec(rec, 0, spec.width);
    return out;
  };

  for (int d = 1; d <= spec.depth; ++d) {
    std::vector<SeqPtr> shallower;
    for (const auto& it : terms)
      if (it.depth <= d - 1) shallower.push_back(it.t);
    std::vector<SeqPtr> argpool = shallower;
    for (auto& s : seqs_over(shallower)) argpool.push_back(std::move(s));
    for (const auto& [sym, ar] : syms) {
      if (ar == 0) {
        add_term(seq_app(sym, {}));
        continue;
      }
      std::vector<size_t> idx(static_cast<size_t>(ar), 0);
      while (true) {
        std::vector<SeqPtr> args;
        args.reserve(static_cast<size_t>(ar));
        for (size_t p = 0; p < idx.size(); ++p) args.push_back(argpool[idx[p]]);
        add_term(seq_app(sym, std::move(args)));
        size_t p = 0;
        while (p < idx.size() && ++idx[p] == argpool.size()) {
          idx[p] = 0;
          ++p;
        }
        if (p == idx.size()) break;
      }
    }
  }

  std::vector<SeqPtr> pool;
  pool.reserve(terms.size());
  for (const auto& it : terms) pool.push_back(it.t);
  std::vector<std::pair<std::string, SeqPtr>> keyed;
  for (const auto& t : pool) keyed.emplace_back(universe_key(prec, t), t);
  for (auto& s : seqs_over(pool))
    keyed.emplace_back(universe_key(prec, s), std::move(s));
  if (keyed.size() > spec.max_size)
    throw Error("universe: size cap exceeded");
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<SeqPtr> result;
  result.reserve(keyed.size());
  for (auto& kv : keyed) result.push_back(std::move(kv.second));
  return result;
}

std::vector<long long> chain_values(SeqOrder& ord,
                                    const std::vector<SeqPtr>& universe) {
  const size_t n = universe.size();
  std::vector<long long> val(n, -2);  // -2 unseen, -1 in progress
  auto visit = [&](auto&& self, size_t i) -> long long {
    if (val[i] >= 0) return val[i];
    if (val[i] == -1)
      throw Error("sequence order: descent cycle inside universe");
    val[i] = -1;
    long long best = 0;
    for (size_t j = 0; j < n; ++j) {
      if (!ord.gt(universe[i], universe[j], ord.k())) continue;
      best = std::max(best, 1 + self(self, j));
    }
    val[i] = best;
    return best;
  };
  for (size_t i = 0; i < n; ++i) visit(visit, i);
  return val;
}

long long chain_length(SeqOrder& ord, const SeqPtr& a,
                       const std::vector<SeqPtr>& universe) {
  auto vals = chain_values(ord, universe);
  long long best = 0;
  for (size_t j = 0; j < universe.size(); ++j)
    if (ord.gt(a, universe[j], ord.k()))
      best = std::max(best, 1 + vals[j]);
  return best;
}

}  // namespace popcert
