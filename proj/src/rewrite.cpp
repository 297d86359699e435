// popcert: rewriting strategies, one-step successors, and derivation-height analysis.
#include <popcert/rewrite.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include <popcert/error.hpp>

namespace popcert {

const char* strategy_name(Strategy strat) {
  switch (strat) {
    case Strategy::Innermost: return "innermost";
    case Strategy::Outermost: return "outermost";
    case Strategy::Unrestricted: return "any";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "innermost") return Strategy::Innermost;
  if (name == "outermost") return Strategy::Outermost;
  if (name == "any" || name == "unrestricted" || name == "full") return Strategy::Unrestricted;
  return std::nullopt;
}

bool match(const TermPtr& pattern, const TermPtr& subject, Binding& binding) {
  if (pattern->is_var()) {
    auto [it, inserted] = binding.emplace(pattern->var_name(), subject);
    return inserted || term_eq(it->second, subject);
  }
  if (subject->is_var() || subject->sym() != pattern->sym()) return false;
  const auto& pargs = pattern->args();
  const auto& sargs = subject->args();
  for (size_t i = 0; i < pargs.size(); ++i)
    if (!match(pargs[i], sargs[i], binding)) return false;
  return true;
}

TermPtr substitute(const TermPtr& t, const Binding& binding) {
  if (t->is_var()) {
    auto it = binding.find(t->var_name());
    if (it == binding.end()) throw Error("substitute: unbound variable " + t->var_name());
    return it->second;
  }
  if (t->args().empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args().size());
  for (const auto& a : t->args()) args.push_back(substitute(a, binding));
  return Term::make_app(t->sym(), std::move(args));
}

namespace {

// One-step successors obtained by contracting the root, if it is a redex.
std::vector<TermPtr> root_contractions(const TermPtr& t, const Trs& trs) {
  std::vector<TermPtr> out;
  if (t->is_var()) return out;
  for (const auto& rule : trs.rules) {
    if (rule.lhs->sym() != t->sym()) continue;
    Binding binding;
    if (match(rule.lhs, t, binding)) out.push_back(substitute(rule.rhs, binding));
  }
  return out;
}

void dedupe(std::vector<TermPtr>& ts) {
  std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> seen;
  std::vector<TermPtr> out;
  out.reserve(ts.size());
  for (auto& t : ts)
    if (seen.insert(t).second) out.push_back(std::move(t));
  ts = std::move(out);
}

StepResult step_rec(const TermPtr& t, const Trs& trs, Strategy strat) {
  StepResult res;
  if (t->is_var()) {
    res.normal_form = true;
    return res;
  }
  std::vector<StepResult> arg_res;
  arg_res.reserve(t->args().size());
  bool args_nf = true;
  for (const auto& a : t->args()) {
    arg_res.push_back(step_rec(a, trs, strat));
    args_nf = args_nf && arg_res.back().normal_form;
  }
  std::vector<TermPtr> roots = root_contractions(t, trs);
  res.normal_form = args_nf && roots.empty();

  auto lift_arg_steps = [&]() {
    for (size_t i = 0; i < arg_res.size(); ++i) {
      for (const auto& s : arg_res[i].successors) {
        std::vector<TermPtr> args(t->args());
        args[i] = s;
        res.successors.push_back(Term::make_app(t->sym(), std::move(args)));
      }
    }
  };

  switch (strat) {
    case Strategy::Unrestricted:
      lift_arg_steps();
      res.successors.insert(res.successors.end(), roots.begin(), roots.end());
      break;
    case Strategy::Innermost:
      lift_arg_steps();
      if (args_nf) res.successors.insert(res.successors.end(), roots.begin(), roots.end());
      break;
    case Strategy::Outermost:
      if (!roots.empty())
        res.successors = std::move(roots);
      else
        lift_arg_steps();
      break;
  }
  dedupe(res.successors);
  return res;
}

}  // namespace

StepResult successors(const TermPtr& t, const Trs& trs, Strategy strat) {
  return step_rec(t, trs, strat);
}

bool is_normal_form(const TermPtr& t, const Trs& trs) {
  if (t->is_var()) return true;
  for (const auto& a : t->args())
    if (!is_normal_form(a, trs)) return false;
  return root_contractions(t, trs).empty();
}

namespace {

struct CapHit {
  CapKind kind;
};

class HeightSearch {
 public:
  HeightSearch(const Trs& trs, Strategy strat, long long step_cap, long long state_cap)
      : trs_(trs), strat_(strat), step_cap_(step_cap), state_cap_(state_cap) {}

  long long height(const TermPtr& t) {
    if (t->is_var()) return 0;
    if (t->sym() >= 0 && !trs_.sig.is_defined(t->sym())) {
      // A constructor root never becomes a redex, so the arguments rewrite
      // independently under every strategy and the maxima add up.
      long long sum = 0;
      for (const auto& a : t->args()) {
        sum += height(a);
        if (sum > step_cap_) throw CapHit{CapKind::Steps};
      }
      return sum;
    }
    if (auto it = memo_.find(t); it != memo_.end()) {
      if (it->second < 0) throw CapHit{CapKind::Steps};  // cycle: unbounded derivation
      return it->second;
    }
    if (static_cast<long long>(memo_.size()) >= state_cap_) throw CapHit{CapKind::States};
    memo_.emplace(t, -1);
    long long best = 0;
    if (strat_ == Strategy::Unrestricted && pattern_free_root(t->sym())) {
      // Every rule at this root matches unconditionally (bare distinct
      // variables on the left).  Under unrestricted rewriting a maximal
      // derivation fires the root first: steps inside an argument kept by the
      // right-hand side can be replayed after the contraction (at least once,
      // since the variable still occurs), and steps inside erased arguments
      // count in full before it.  This collapses the duplication blow-up.
      for (const auto& rule : rules_at(t->sym())) {
        Binding binding;
        long long h = 1;
        for (size_t i = 0; i < rule.lhs->args().size(); ++i) {
          const std::string& x = rule.lhs->args()[i]->var_name();
          binding.emplace(x, t->args()[i]);
          if (!occurs(rule.rhs, x)) h += height(t->args()[i]);
          if (h > step_cap_) throw CapHit{CapKind::Steps};
        }
        h += height(substitute(rule.rhs, binding));
        if (h > step_cap_) throw CapHit{CapKind::Steps};
        best = std::max(best, h);
      }
    } else {
      StepResult step = successors(t, trs_, strat_);
      for (const auto& s : step.successors) {
        long long h = 1 + height(s);
        if (h > step_cap_) throw CapHit{CapKind::Steps};
        best = std::max(best, h);
      }
    }
    memo_[t] = best;
    return best;
  }

 private:
  std::vector<Rule> rules_at(SymId f) const {
    std::vector<Rule> out;
    for (const auto& rule : trs_.rules)
      if (rule.lhs->sym() == f) out.push_back(rule);
    return out;
  }

  static bool occurs(const TermPtr& t, const std::string& x) {
    if (t->is_var()) return t->var_name() == x;
    for (const auto& a : t->args())
      if (occurs(a, x)) return true;
    return false;
  }

  // True when the symbol has at least one rule and every rule's left-hand
  // side applies the symbol to pairwise distinct bare variables.
  bool pattern_free_root(SymId f) {
    auto it = pattern_free_.find(f);
    if (it != pattern_free_.end()) return it->second;
    bool any = false;
    bool ok = true;
    for (const auto& rule : trs_.rules) {
      if (rule.lhs->sym() != f) continue;
      any = true;
      std::unordered_set<std::string> names;
      for (const auto& a : rule.lhs->args())
        if (a->is_var())
          ok = ok && names.insert(a->var_name()).second;
        else
          ok = false;
      if (!ok) break;
    }
    ok = ok && any;
    pattern_free_.emplace(f, ok);
    return ok;
  }

  const Trs& trs_;
  Strategy strat_;
  long long step_cap_;
  long long state_cap_;
  std::unordered_map<TermPtr, long long, TermPtrHash, TermPtrEq> memo_;
  std::unordered_map<SymId, bool> pattern_free_;
};

}  // namespace

HeightResult derivation_height(const TermPtr& t, const Trs& trs, Strategy strat,
                               long long step_cap, long long state_cap) {
  HeightResult res;
  try {
    HeightSearch search(trs, strat, step_cap, state_cap);
    res.height = search.height(t);
  } catch (const CapHit& hit) {
    res.capped = true;
    res.cap = hit.kind;
    res.height = 0;
  }
  return res;
}

DerivationReport growth_table(const Trs& trs, const FamilyTemplate& family, int lo, int hi,
                              Strategy strat, long long step_cap, long long state_cap) {
  if (lo > hi) throw Error("growth_table: empty range");
  DerivationReport report;
  report.family = family.text;
  report.strategy = strat;
  for (int n = lo; n <= hi; ++n) {
    TermPtr t = family.instantiate(n, trs.sig);
    HeightResult h = derivation_height(t, trs, strat, step_cap, state_cap);
    report.rows.push_back({n, static_cast<long long>(t->size()), h.height, h.capped});
  }
  return report;
}

std::string growth_csv(const DerivationReport& report) {
  std::ostringstream out;
  out << "n,size,height,capped\n";
  for (const auto& row : report.rows)
    out << row.n << ',' << row.size << ',' << row.height << ',' << (row.capped ? 1 : 0) << '\n';
  return out.str();
}

GrowthClass growth_classify(const DerivationReport& report) {
  GrowthClass res;
  std::vector<GrowthRow> rows;
  for (const auto& row : report.rows)
    if (!row.capped) rows.push_back(row);
  if (rows.size() < 4) return res;  // Inconclusive

  // Exponential screen: successive height ratios over the last four rows stay
  // above a fixed threshold.
  {
    const double kRatioThreshold = 1.2;
    bool all_big = true;
    for (size_t i = rows.size() - 4; i + 1 < rows.size(); ++i) {
      if (rows[i].height <= 0 || rows[i + 1].height <= 0) {
        all_big = false;
        break;
      }
      double ratio = static_cast<double>(rows[i + 1].height) / static_cast<double>(rows[i].height);
      if (ratio <= kRatioThreshold) {
        all_big = false;
        break;
      }
    }
    if (all_big) {
      res.kind = GrowthKind::ExponentialSuspect;
      return res;
    }
  }

  // Polynomial estimate: least-squares fit of log height against log n over
  // the later half of the usable rows.
  std::vector<GrowthRow> tail(rows.begin() + rows.size() / 2, rows.end());
  std::vector<std::pair<double, double>> pts;
  bool all_equal = true;
  for (const auto& row : tail) {
    if (row.n >= 1 && row.height >= 1)
      pts.emplace_back(std::log(static_cast<double>(row.n)),
                       std::log(static_cast<double>(row.height)));
    if (row.height != tail.front().height) all_equal = false;
  }
  if (all_equal) {
    res.kind = GrowthKind::PolynomialDegreeEstimate;
    res.degree = 0.0;
    return res;
  }
  if (pts.size() < 2) return res;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(pts.size());
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) return res;  // all n equal
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (auto [x, y] : pts) {
    double e = y - (slope * x + intercept);
    ss += e * e;
  }
  double rms = std::sqrt(ss / n);
  res.residual = rms;
  const double kResidualThreshold = 0.1;
  if (rms < kResidualThreshold) {
    res.kind = GrowthKind::PolynomialDegreeEstimate;
    res.degree = slope;
  }
  return res;
}

}  // namespace popcert
