// popcert: predicative interpretations, stuck-term collapse, and the
// step-embedding check.
#include <popcert/predicative.hpp>

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <popcert/error.hpp>
#include <popcert/rewrite.hpp>
#include <popcert/seqorder.hpp>

namespace popcert {

namespace {

struct Interp {
  const Signature& sig;
  Certificate cert;

  Interp(const Signature& s, const Certificate& c) : sig(s), cert(c) {
    cert.normalize(sig);
  }

  bool safe_at(const TermPtr& t, size_t i) const {
    return cert.is_safe(t->sym(), static_cast<int>(i) + 1);
  }

  int norm(const TermPtr& t) const {
    if (t->is_var()) return 1;
    int deepest = 0;
    for (size_t i = 0; i < t->args().size(); ++i)
      if (safe_at(t, i)) deepest = std::max(deepest, norm(t->args()[i]));
    return 1 + deepest;
  }

  SeqPtr S(const TermPtr& t) const {
    if (term_is_value(t, sig)) return seq_nil();
    std::vector<SeqPtr> head_args;
    std::vector<SeqPtr> parts;
    for (size_t i = 0; i < t->args().size(); ++i)
      if (!safe_at(t, i)) head_args.push_back(N(t->args()[i]));
    parts.push_back(seq_app(t->sym(), std::move(head_args)));
    for (size_t i = 0; i < t->args().size(); ++i)
      if (safe_at(t, i)) parts.push_back(S(t->args()[i]));
    return seq_list(std::move(parts));
  }

  SeqPtr N(const TermPtr& t) const {
    return seq_concat(S(t), seq_tally(norm(t)));
  }
};

}  // namespace

int predicative_norm(const TermPtr& t, const Signature& sig,
                     const Certificate& cert) {
  return Interp(sig, cert).norm(t);
}

SeqPtr interp_S(const TermPtr& t, const Signature& sig,
                const Certificate& cert) {
  return Interp(sig, cert).S(t);
}

SeqPtr interp_N(const TermPtr& t, const Signature& sig,
                const Certificate& cert) {
  return Interp(sig, cert).N(t);
}

int ell_for(const Trs& trs) {
  int ell = 2;
  for (SymId f = 0; f < trs.sig.size(); ++f)
    ell = std::max(ell, trs.sig[f].arity);
  for (const auto& rule : trs.rules)
    ell = std::max(ell, 2 * static_cast<int>(rule.rhs->size()));
  return ell;
}

BotTrs with_bottom(const Trs& trs) {
  BotTrs bt{trs, -1};
  std::string name = "bot";
  while (bt.trs.sig.find(name)) name = "_" + name;
  bt.bot = bt.trs.sig.intern(name, 0, SymbolKind::Constructor);
  return bt;
}

Certificate BotTrs::extend(const Certificate& cert) const {
  Certificate c = cert;
  c.rank.resize(static_cast<size_t>(trs.sig.size()), 0);
  c.safe.resize(static_cast<size_t>(trs.sig.size()));
  c.normalize(trs.sig);
  return c;
}

TermPtr normalise_bot(const TermPtr& t, const BotTrs& bt) {
  if (t->is_var()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args().size());
  bool changed = false;
  for (const auto& a : t->args()) {
    args.push_back(normalise_bot(a, bt));
    changed = changed || args.back().get() != a.get();
  }
  TermPtr u = changed ? Term::make_app(t->sym(), std::move(args)) : t;
  if (bt.trs.sig.is_defined(u->sym()) && is_normal_form(u, bt.trs))
    return Term::make_app(bt.bot, {});
  return u;
}

EmbedReport check_embedding(const Trs& trs, const Certificate& cert,
                            const std::vector<TermPtr>& starts,
                            size_t max_edges) {
  EmbedReport report;
  report.ell = ell_for(trs);
  BotTrs bt = with_bottom(trs);
  Certificate cext = bt.extend(cert);
  SeqOrder ord(bt.trs.sig, cext, report.ell);
  Interp interp(bt.trs.sig, cext);

  std::unordered_map<TermPtr, std::pair<SeqPtr, SeqPtr>, TermPtrHash,
                     TermPtrEq>
      images;
  auto interps = [&](const TermPtr& s) {
    auto it = images.find(s);
    if (it != images.end()) return it->second;
    TermPtr down = normalise_bot(s, bt);
    auto val = std::make_pair(interp.S(down), interp.N(down));
    images.emplace(s, val);
    return val;
  };

  std::deque<TermPtr> queue(starts.begin(), starts.end());
  std::unordered_set<TermPtr, TermPtrHash, TermPtrEq> seen(starts.begin(),
                                                           starts.end());
  while (!queue.empty()) {
    TermPtr s = queue.front();
    queue.pop_front();
    for (const auto& t : successors(s, trs, Strategy::Innermost).successors) {
      if (report.entries.size() >= max_edges) {
        report.truncated = true;
        return report;
      }
      auto [ss, sn] = interps(s);
      auto [ts, tn] = interps(t);
      EmbedEntry e{s, t, ord.gt(ss, ts, report.ell),
                   ord.gt(sn, tn, report.ell)};
      if (!e.s_ok || !e.n_ok) ++report.violations;
      report.entries.push_back(std::move(e));
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return report;
}

std::string format_predicative(const TermPtr& t, const Signature& sig,
                               const Certificate& cert) {
  Certificate norm = cert;
  norm.normalize(sig);
  std::ostringstream out;
  auto go = [&](auto&& self, const TermPtr& u) -> void {
    if (u->is_var()) {
      out << u->var_name();
      return;
    }
    out << sig[u->sym()].name << '(';
    if (!u->args().empty()) {
      bool first = true;
      for (size_t i = 0; i < u->args().size(); ++i)
        if (!norm.is_safe(u->sym(), static_cast<int>(i) + 1)) {
          if (!first) out << ", ";
          first = false;
          self(self, u->args()[i]);
        }
      out << ';';
      first = true;
      for (size_t i = 0; i < u->args().size(); ++i)
        if (norm.is_safe(u->sym(), static_cast<int>(i) + 1)) {
          out << (first ? " " : ", ");
          first = false;
          self(self, u->args()[i]);
        }
    }
    out << ')';
  };
  go(go, t);
  return out.str();
}

std::string render_predicative_rules(const Trs& trs, const Certificate& cert) {
  std::ostringstream out;
  for (const auto& rule : trs.rules)
    out << format_predicative(rule.lhs, trs.sig, cert) << " -> "
        << format_predicative(rule.rhs, trs.sig, cert) << '\n';
  return out.str();
}

std::string render_embed_report(const EmbedReport& report, const Trs& trs) {
  std::ostringstream out;
  out << "embedding budget: " << report.ell << '\n';
  out << "innermost steps checked: " << report.entries.size()
      << (report.truncated ? " (truncated)" : "") << '\n';
  out << "violations: " << report.violations << '\n';
  for (const auto& e : report.entries) {
    if (e.s_ok && e.n_ok) continue;
    out << "  violated at " << format_term(e.from, trs.sig) << " -> "
        << format_term(e.to, trs.sig) << " [" << (e.s_ok ? "S ok" : "S fails")
        << ", " << (e.n_ok ? "N ok" : "N fails") << "]\n";
  }
  return out.str();
}

}  // namespace popcert
