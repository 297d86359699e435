// popcert: path orders with safe-argument separation — decision procedures,
// certificate checking, and brute-force certificate search.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>

#include <popcert/cert.hpp>
#include <popcert/trs.hpp>

namespace popcert {

// Memoized decision procedures for one signature/certificate pair.  Keeps raw
// pointers into the compared terms, so the terms must outlive the context.
class OrderContext {
 public:
  OrderContext(const Signature& sig, const Certificate& cert);

  // Permutative equivalence respecting the safe mapping: equal roots in the
  // precedence, arguments equivalent under some permutation that maps safe
  // positions to safe positions and normal ones to normal ones.
  bool safe_equiv(const TermPtr& s, const TermPtr& t);
  // Permutative equivalence that ignores the safe mapping.
  bool perm_equiv(const TermPtr& s, const TermPtr& t);

  bool gsq(const TermPtr& s, const TermPtr& t);     // auxiliary composition order
  bool gpop(const TermPtr& s, const TermPtr& t);    // pop*
  bool gpopps(const TermPtr& s, const TermPtr& t);  // pop* with parameter substitution
  bool mpo(const TermPtr& s, const TermPtr& t);     // multiset path order

  bool greater(OrderVariant variant, const TermPtr& s, const TermPtr& t);
  bool equivalent(OrderVariant variant, const TermPtr& s, const TermPtr& t);

  // t is built from variables and function symbols strictly below some
  // symbol occurring in s.
  bool terms_below(const TermPtr& s, const TermPtr& t);

  // Name of the root clause ("st", "ia", "ep") that orients s above t under
  // the variant, or nullptr when none applies.
  const char* top_clause(OrderVariant variant, const TermPtr& s, const TermPtr& t);

  const Certificate& cert() const { return cert_; }
  const Signature& sig() const { return sig_; }

 private:
  enum class Rel : uint8_t { EqSafe, EqPerm, Gsq, Gpop, GpopPs, Gmpo, Below };

  struct Key {
    uint8_t rel;
    const Term* s;
    const Term* t;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };

  bool rel_of(Rel rel, const TermPtr& s, const TermPtr& t);
  bool compute(Rel rel, const TermPtr& s, const TermPtr& t);
  bool equiv_args(const TermPtr& s, const TermPtr& t, bool respect_safe);
  bool clause_st(Rel rel, const TermPtr& s, const TermPtr& t);
  bool clause_ia(Rel rel, const TermPtr& s, const TermPtr& t);
  bool clause_ep(Rel rel, const TermPtr& s, const TermPtr& t);
  int max_rank_of_funs(const TermPtr& s);

  const Signature& sig_;
  Certificate cert_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::unordered_map<const Term*, int> fun_rank_;
};

struct RuleCheck {
  int rule_index = 0;
  bool oriented = false;
  std::string trace;
};

struct CompatReport {
  bool compatible = false;
  std::vector<RuleCheck> rules;
};

// Checks that every rule of the TRS is oriented by the order fixed in the
// certificate.
CompatReport check_compat(const Trs& trs, const Certificate& cert);

// Exhaustive search over rank maps and safe mappings; first hit in a fixed
// enumeration order.  Guarded: at most 4 defined symbols, arity at most 3.
std::optional<Certificate> brute_force_search(const Trs& trs, OrderVariant variant);

}  // namespace popcert
