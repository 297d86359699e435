// popcert: predicative interpretation of terms as sequences and the
// step-embedding check.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "popcert/cert.hpp"
#include "popcert/seqterm.hpp"
#include "popcert/trs.hpp"

namespace popcert {

// Depth measured through safe argument positions only; coincides with depth
// on values.
int predicative_norm(const TermPtr& t, const Signature& sig,
                     const Certificate& cert);

// Values collapse to the empty sequence; any other term becomes its root
// applied to the interpretations of the normal arguments, followed by the
// interpretations of the safe arguments.
SeqPtr interp_S(const TermPtr& t, const Signature& sig,
                const Certificate& cert);
// interp_S extended with a unit tally of the norm.
SeqPtr interp_N(const TermPtr& t, const Signature& sig,
                const Certificate& cert);

// Budget for embedding a system's steps: the largest of 2, the arities, and
// twice the right-hand-side sizes.
int ell_for(const Trs& trs);

// The system extended with a fresh constant denoting stuck terms.
struct BotTrs {
  Trs trs;
  SymId bot = -1;

  // The certificate carried over: the constant ranks with the constructors.
  Certificate extend(const Certificate& cert) const;
};
BotTrs with_bottom(const Trs& trs);

// Replaces, bottom-up, every normal form rooted in a defined symbol by the
// stuck-term constant.
TermPtr normalise_bot(const TermPtr& t, const BotTrs& bt);

// One innermost step together with the order checks on both interpretations.
struct EmbedEntry {
  TermPtr from;
  TermPtr to;
  bool s_ok = false;
  bool n_ok = false;
};
struct EmbedReport {
  int ell = 0;
  std::vector<EmbedEntry> entries;
  size_t violations = 0;
  bool truncated = false;
};

// Breadth-first over innermost steps from the start terms, at most max_edges
// steps; each step is checked in both interpretations after collapsing stuck
// subterms, with width and depth budgets ell_for(trs).
EmbedReport check_embedding(const Trs& trs, const Certificate& cert,
                            const std::vector<TermPtr>& starts,
                            size_t max_edges = 10000);

// `f(n1, n2; s1)` notation: normal arguments left of the semicolon, safe
// arguments right of it; nullary symbols print as `f()`.
std::string format_predicative(const TermPtr& t, const Signature& sig,
                               const Certificate& cert);
std::string render_predicative_rules(const Trs& trs, const Certificate& cert);
std::string render_embed_report(const EmbedReport& report, const Trs& trs);

}  // namespace popcert
