// popcert: path orders with safe-argument separation — decision procedures,
// certificate checking, and brute-force certificate search.
#include <popcert/orders.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include <popcert/error.hpp>
#include <popcert/multiset.hpp>

namespace popcert {

namespace {

inline void hash_mix(size_t& seed, size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

// Backtracking search for a perfect matching between positions 0..n-1 where
// ok(i, j) admits pairing left i with right j.
bool perm_match(size_t n, const std::function<bool(size_t, size_t)>& ok) {
  std::vector<int> used(n, 0);
  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == n) return true;
    for (size_t j = 0; j < n; ++j) {
      if (used[j] || !ok(i, j)) continue;
      used[j] = 1;
      if (go(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return go(0);
}

}  // namespace

size_t OrderContext::KeyHash::operator()(const Key& k) const {
  size_t seed = k.rel;
  hash_mix(seed, std::hash<const void*>()(k.s));
  hash_mix(seed, std::hash<const void*>()(k.t));
  return seed;
}

OrderContext::OrderContext(const Signature& sig, const Certificate& cert)
    : sig_(sig), cert_(cert) {
  cert_.normalize(sig_);
}

bool OrderContext::rel_of(Rel rel, const TermPtr& s, const TermPtr& t) {
  Key key{static_cast<uint8_t>(rel), s.get(), t.get()};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool value = compute(rel, s, t);
  memo_.emplace(key, value);
  return value;
}

bool OrderContext::equiv_args(const TermPtr& s, const TermPtr& t, bool respect_safe) {
  SymId f = s->sym();
  SymId g = t->sym();
  if (!cert_.prec_eq(f, g)) return false;
  const auto& sa = s->args();
  const auto& ta = t->args();
  if (sa.size() != ta.size()) return false;
  Rel rel = respect_safe ? Rel::EqSafe : Rel::EqPerm;
  return perm_match(sa.size(), [&](size_t i, size_t j) {
    if (respect_safe &&
        cert_.is_safe(f, static_cast<int>(i) + 1) != cert_.is_safe(g, static_cast<int>(j) + 1))
      return false;
    return rel_of(rel, sa[i], ta[j]);
  });
}

bool OrderContext::clause_st(Rel rel, const TermPtr& s, const TermPtr& t) {
  SymId f = s->sym();
  bool f_defined = sig_.is_defined(f);
  const auto& sa = s->args();
  for (size_t i = 0; i < sa.size(); ++i) {
    if (rel == Rel::Gsq && f_defined && cert_.is_safe(f, static_cast<int>(i) + 1))
      continue;  // the auxiliary order may only descend through normal positions
    Rel eq = rel == Rel::Gmpo ? Rel::EqPerm : Rel::EqSafe;
    if (rel_of(rel, sa[i], t) || rel_of(eq, sa[i], t)) return true;
  }
  return false;
}

bool OrderContext::clause_ia(Rel rel, const TermPtr& s, const TermPtr& t) {
  if (t->is_var()) return false;
  SymId f = s->sym();
  SymId g = t->sym();
  if (!cert_.prec_gt(f, g)) return false;
  const auto& ta = t->args();
  if (rel == Rel::Gmpo) {
    for (const auto& tj : ta)
      if (!rel_of(Rel::Gmpo, s, tj)) return false;
    return true;
  }
  if (!sig_.is_defined(f)) return false;
  if (rel == Rel::Gsq) {
    for (const auto& tj : ta)
      if (!rel_of(Rel::Gsq, s, tj)) return false;
    return true;
  }
  // pop* and pop*ps: the auxiliary order covers normal argument positions,
  // the full order covers safe ones, and at most one safe argument may leave
  // the stratum below the symbols of s.
  int exceptions = 0;
  for (size_t j = 0; j < ta.size(); ++j) {
    if (cert_.is_safe(g, static_cast<int>(j) + 1)) {
      if (!rel_of(rel, s, ta[j])) return false;
      if (!terms_below(s, ta[j]) && ++exceptions > 1) return false;
    } else {
      if (!rel_of(Rel::Gsq, s, ta[j])) return false;
    }
  }
  return true;
}

bool OrderContext::clause_ep(Rel rel, const TermPtr& s, const TermPtr& t) {
  if (t->is_var()) return false;
  SymId f = s->sym();
  SymId g = t->sym();
  if (!cert_.prec_eq(f, g)) return false;
  const auto& sa = s->args();
  const auto& ta = t->args();
  if (rel == Rel::Gmpo) {
    auto gt = [&](const TermPtr& a, const TermPtr& b) { return rel_of(Rel::Gmpo, a, b); };
    auto eq = [&](const TermPtr& a, const TermPtr& b) { return rel_of(Rel::EqPerm, a, b); };
    return mul_strict(multiset_compare(sa, ta, gt, eq));
  }
  if (!sig_.is_defined(f)) return false;
  std::vector<TermPtr> s_normal, s_safe, t_normal, t_safe;
  for (size_t i = 0; i < sa.size(); ++i)
    (cert_.is_safe(f, static_cast<int>(i) + 1) ? s_safe : s_normal).push_back(sa[i]);
  for (size_t j = 0; j < ta.size(); ++j)
    (cert_.is_safe(g, static_cast<int>(j) + 1) ? t_safe : t_normal).push_back(ta[j]);
  auto gt = [&](const TermPtr& a, const TermPtr& b) { return rel_of(rel, a, b); };
  auto eq = [&](const TermPtr& a, const TermPtr& b) { return rel_of(Rel::EqSafe, a, b); };
  if (!mul_strict(multiset_compare(s_normal, t_normal, gt, eq))) return false;
  if (rel == Rel::GpopPs) {
    for (const auto& tj : t_safe)
      if (!rel_of(Rel::GpopPs, s, tj) || !terms_below(s, tj)) return false;
    return true;
  }
  return mul_weak(multiset_compare(s_safe, t_safe, gt, eq));
}

int OrderContext::max_rank_of_funs(const TermPtr& s) {
  auto it = fun_rank_.find(s.get());
  if (it != fun_rank_.end()) return it->second;
  int best = -1;
  for (SymId f : term_funs(s)) best = std::max(best, cert_.rank[f]);
  fun_rank_.emplace(s.get(), best);
  return best;
}

bool OrderContext::terms_below(const TermPtr& s, const TermPtr& t) {
  return rel_of(Rel::Below, s, t);
}

bool OrderContext::compute(Rel rel, const TermPtr& s, const TermPtr& t) {
  switch (rel) {
    case Rel::EqSafe:
    case Rel::EqPerm: {
      if (term_eq(s, t)) return true;
      if (s->is_var() || t->is_var()) return false;
      return equiv_args(s, t, rel == Rel::EqSafe);
    }
    case Rel::Below: {
      if (t->is_var()) return true;
      if (max_rank_of_funs(s) <= cert_.rank[t->sym()]) return false;
      for (const auto& tj : t->args())
        if (!terms_below(s, tj)) return false;
      return true;
    }
    case Rel::Gsq: {
      if (s->is_var()) return false;
      return clause_st(Rel::Gsq, s, t) || clause_ia(Rel::Gsq, s, t);
    }
    case Rel::Gpop:
    case Rel::GpopPs:
    case Rel::Gmpo: {
      if (s->is_var()) return false;
      return clause_st(rel, s, t) || clause_ia(rel, s, t) || clause_ep(rel, s, t);
    }
  }
  return false;
}

bool OrderContext::safe_equiv(const TermPtr& s, const TermPtr& t) {
  return rel_of(Rel::EqSafe, s, t);
}

bool OrderContext::perm_equiv(const TermPtr& s, const TermPtr& t) {
  return rel_of(Rel::EqPerm, s, t);
}

bool OrderContext::gsq(const TermPtr& s, const TermPtr& t) { return rel_of(Rel::Gsq, s, t); }
bool OrderContext::gpop(const TermPtr& s, const TermPtr& t) { return rel_of(Rel::Gpop, s, t); }
bool OrderContext::gpopps(const TermPtr& s, const TermPtr& t) { return rel_of(Rel::GpopPs, s, t); }
bool OrderContext::mpo(const TermPtr& s, const TermPtr& t) { return rel_of(Rel::Gmpo, s, t); }

bool OrderContext::greater(OrderVariant variant, const TermPtr& s, const TermPtr& t) {
  switch (variant) {
    case OrderVariant::PopStar: return gpop(s, t);
    case OrderVariant::PopStarPs: return gpopps(s, t);
    case OrderVariant::Mpo: return mpo(s, t);
  }
  return false;
}

bool OrderContext::equivalent(OrderVariant variant, const TermPtr& s, const TermPtr& t) {
  return variant == OrderVariant::Mpo ? perm_equiv(s, t) : safe_equiv(s, t);
}

const char* OrderContext::top_clause(OrderVariant variant, const TermPtr& s, const TermPtr& t) {
  if (s->is_var()) return nullptr;
  Rel rel = variant == OrderVariant::PopStar    ? Rel::Gpop
            : variant == OrderVariant::PopStarPs ? Rel::GpopPs
                                                 : Rel::Gmpo;
  if (clause_st(rel, s, t)) return "st";
  if (clause_ia(rel, s, t)) return "ia";
  if (clause_ep(rel, s, t)) return "ep";
  return nullptr;
}

CompatReport check_compat(const Trs& trs, const Certificate& cert) {
  CompatReport report;
  report.compatible = true;
  OrderContext ctx(trs.sig, cert);
  for (size_t i = 0; i < trs.rules.size(); ++i) {
    const Rule& rule = trs.rules[i];
    RuleCheck rc;
    rc.rule_index = static_cast<int>(i);
    const char* clause = ctx.top_clause(cert.order, rule.lhs, rule.rhs);
    std::ostringstream trace;
    trace << format_term(rule.lhs, trs.sig) << " -> " << format_term(rule.rhs, trs.sig) << ": ";
    if (clause) {
      rc.oriented = true;
      trace << "oriented by clause <" << clause << ">";
      if (std::string(clause) == "ia")
        trace << " (" << trs.sig[rule.lhs->sym()].name << " > "
              << trs.sig[rule.rhs->sym()].name << ")";
      if (std::string(clause) == "ep")
        trace << " (equivalent roots, argument multisets decrease)";
    } else {
      rc.oriented = false;
      report.compatible = false;
      trace << "not oriented (";
      if (rule.lhs->is_var()) {
        trace << "left-hand side is a variable";
      } else if (rule.rhs->is_var()) {
        trace << "no left-hand argument covers the variable " << rule.rhs->var_name();
      } else {
        SymId f = rule.lhs->sym();
        SymId g = rule.rhs->sym();
        trace << "<st> finds no covering argument; ";
        if (ctx.cert().prec_gt(f, g))
          trace << "<ia> argument conditions fail";
        else if (ctx.cert().prec_eq(f, g))
          trace << "<ep> multiset conditions fail";
        else
          trace << trs.sig[f].name << " is not above " << trs.sig[g].name
                << " in the precedence";
      }
      trace << ")";
    }
    rc.trace = trace.str();
    report.rules.push_back(std::move(rc));
  }
  return report;
}

std::optional<Certificate> brute_force_search(const Trs& trs, OrderVariant variant) {
  const Signature& sig = trs.sig;
  std::vector<SymId> defined = sig.defined();
  if (defined.size() > 4)
    throw Error("brute_force_search: more than 4 defined symbols");
  for (SymId f = 0; f < static_cast<SymId>(sig.size()); ++f)
    if (sig[f].arity > 3) throw Error("brute_force_search: arity above 3");

  size_t nd = defined.size();
  int max_rank = static_cast<int>(nd);
  std::vector<int> ranks(nd, 1);

  std::vector<int> safe_mask(nd, 0);
  bool enumerate_safe = variant != OrderVariant::Mpo;

  auto build_cert = [&]() {
    Certificate cert;
    cert.order = variant;
    cert.rank.assign(sig.size(), 0);
    cert.safe.assign(sig.size(), {});
    for (size_t d = 0; d < nd; ++d) {
      cert.rank[defined[d]] = ranks[d];
      std::vector<int> safes;
      int ar = sig[defined[d]].arity;
      for (int pos = 1; pos <= ar; ++pos)
        if (safe_mask[d] & (1 << (pos - 1))) safes.push_back(pos);
      cert.safe[defined[d]] = std::move(safes);
    }
    cert.normalize(sig);
    return cert;
  };

  // Advances `digits` as an odometer with per-position inclusive bounds
  // [low, high(d)]; returns false once all combinations are exhausted.
  auto advance = [](std::vector<int>& digits, int low, auto&& high) {
    size_t d = digits.size();
    while (d > 0) {
      --d;
      if (digits[d] < high(d)) {
        ++digits[d];
        std::fill(digits.begin() + d + 1, digits.end(), low);
        return true;
      }
    }
    return false;
  };

  while (true) {
    std::fill(safe_mask.begin(), safe_mask.end(), 0);
    while (true) {
      Certificate cert = build_cert();
      if (check_compat(trs, cert).compatible) return cert;
      if (!enumerate_safe ||
          !advance(safe_mask, 0, [&](size_t d) { return (1 << sig[defined[d]].arity) - 1; }))
        break;
    }
    if (!advance(ranks, 1, [&](size_t) { return max_rank; })) return std::nullopt;
  }
}

}  // namespace popcert
