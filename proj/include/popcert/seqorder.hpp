// popcert: budgeted recursive path orders on sequence terms, ground universes,
// and longest strict-descent chains.
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "popcert/cert.hpp"
#include "popcert/seqterm.hpp"
#include "popcert/term.hpp"

namespace popcert {

// Precedence on sequence-term symbols: the unit symbol sits at rank 0, all
// constructors share rank 1, and a defined symbol sits one above its
// certificate rank.
class NormPrec {
 public:
  NormPrec() = default;
  NormPrec(const Signature& sig, const Certificate& cert);

  int rank(int32_t sym) const;
  bool gt(int32_t f, int32_t g) const { return rank(f) > rank(g); }
  bool eq(int32_t f, int32_t g) const { return rank(f) == rank(g); }

 private:
  std::vector<int> rank_;  // indexed by SymId; the unit symbol is implicit
};

// Decision procedures for the budgeted orders on sequence terms.  The width
// budget `k` caps how many argument positions a single descent step may
// spread over; the depth budget `l` caps recursion below precedence steps.
// Both orders are monotone in `k` and `l`.
class SeqOrder {
 public:
  SeqOrder(const Signature& sig, const Certificate& cert, int k);

  int k() const { return k_; }
  const NormPrec& prec() const { return prec_; }

  // Equality up to argument/element permutation and equal-rank roots.
  bool equiv(const SeqPtr& a, const SeqPtr& b);
  // Auxiliary order: the right side is assembled from pieces strictly below
  // the left root in precedence; no equal-rank descent.
  bool gt_aux(const SeqPtr& a, const SeqPtr& b, int l);
  // Main order: adds equal-rank multiset descent and allows one piece of a
  // right-hand sequence to be followed with main strength.
  bool gt(const SeqPtr& a, const SeqPtr& b, int l);
  bool ge(const SeqPtr& a, const SeqPtr& b, int l) {
    return equiv(a, b) || gt(a, b, l);
  }

 private:
  enum class Rel : uint8_t { Equiv, Aux, Main };
  struct Key {
    Rel rel;
    int l;
    SeqPtr a;
    SeqPtr b;
    bool operator==(const Key& o) const {
      return rel == o.rel && l == o.l && a.get() == o.a.get() &&
             b.get() == o.b.get();
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };

  bool decide(Rel rel, const SeqPtr& a, const SeqPtr& b, int l);
  bool compute(Rel rel, const SeqPtr& a, const SeqPtr& b, int l);
  bool ge_rel(Rel rel, const SeqPtr& a, const SeqPtr& b, int l);
  bool split_clause(Rel rel, const SeqPtr& a, const SeqPtr& b, int l);

  NormPrec prec_;
  int k_ = 1;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

// Ground sequence terms over the given symbols (the unit symbol is always
// included) up to the depth and width bounds, one representative per
// equivalence class, in a deterministic order.  Throws Error past max_size.
struct UniverseSpec {
  std::vector<std::pair<int32_t, int>> symbols;  // (symbol, argument count)
  int depth = 2;
  int width = 2;
  size_t max_size = 200000;
};
std::vector<SeqPtr> seq_universe(const NormPrec& prec, const UniverseSpec& spec);

// Length of the longest chain of main-order steps (at depth budget l = k)
// that starts at each universe member and stays inside the universe.  A
// cycle would mean the order is not irreflexive and raises Error.
std::vector<long long> chain_values(SeqOrder& ord,
                                    const std::vector<SeqPtr>& universe);
// Same, for a term that need not belong to the universe; chains pass through
// universe members only.
long long chain_length(SeqOrder& ord, const SeqPtr& a,
                       const std::vector<SeqPtr>& universe);

}  // namespace popcert
