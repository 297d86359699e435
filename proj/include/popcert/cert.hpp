// popcert: complexity certificates — order variant, precedence rank map,
// safe-argument mapping — and their text format.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popcert/term.hpp"

namespace popcert {

enum class OrderVariant { PopStar, PopStarPs, Mpo };

std::string order_variant_name(OrderVariant v);
std::optional<OrderVariant> order_variant_from_name(const std::string& name);

// A certificate fixes a quasi-precedence as a rank map (constructors share
// rank 0, defined symbols have dense ranks from 1) and a safe mapping
// (constructor arguments are always safe).  MPO certificates carry a safe
// mapping too, but it is ignored by that order.
struct Certificate {
  OrderVariant order = OrderVariant::PopStar;
  std::vector<int> rank;               // indexed by SymId
  std::vector<std::vector<int>> safe;  // indexed by SymId; sorted 1-based

  bool prec_gt(SymId f, SymId g) const { return rank[f] > rank[g]; }
  bool prec_eq(SymId f, SymId g) const { return rank[f] == rank[g]; }
  bool is_safe(SymId f, int pos) const;

  std::vector<int> safe_positions(SymId f) const { return safe[f]; }
  std::vector<int> normal_positions(SymId f, const Signature& sig) const;

  int max_defined_rank() const;

  // Remaps ranks of defined symbols onto 1..m preserving order and
  // equalities; fills safe positions of constructors.
  void normalize(const Signature& sig);
};

// Text format:
//   order: pop*
//   precedence:
//     times > plus
//   safe:
//     plus: 2
// Precedence lines are chains over `>` and `=`.  The rank of an unlisted
// defined symbol defaults to 1; a `>` cycle or a constructor above anything
// is an error.  `#` starts a comment.
Certificate parse_cert(const std::string& text, const Signature& sig);
Certificate parse_cert_file(const std::string& path, const Signature& sig);
std::string write_cert(const Certificate& cert, const Signature& sig);

// All pairs (f, g) of defined symbols with f one rank layer above g, top
// layer first; together with equal_pairs these determine the rank map.
std::vector<std::pair<SymId, SymId>> hasse_pairs(const Certificate& cert,
                                                 const Signature& sig);
std::vector<std::pair<SymId, SymId>> equal_pairs(const Certificate& cert,
                                                 const Signature& sig);

}  // namespace popcert
