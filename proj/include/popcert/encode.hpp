// popcert: propositional encoding of the certificate search, model decoding,
// and the synthesis driver.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "popcert/cert.hpp"
#include "popcert/formula.hpp"
#include "popcert/trs.hpp"

namespace popcert {

// A rendered search problem.  Variables 1..num_atoms are encoding atoms;
// anything above stems from the CNF conversion.  Only the safety and
// rank-bit tables are needed to read a certificate off a model.
struct Encoding {
  OrderVariant variant = OrderVariant::PopStar;
  Cnf cnf;
  size_t num_atoms = 0;
  int rank_bits = 0;
  std::vector<std::vector<int>> safe_vars;      // [f][pos-1], defined f only
  std::vector<std::vector<int>> rank_bit_vars;  // [f][bit], defined f only
};

// Builds the satisfiability problem "some certificate of this variant
// orients every rule".  With share_defs, recurring subproblems become
// defined atoms expanded once; otherwise the formula is built as a DAG
// directly.  Both renderings are equisatisfiable.
Encoding encode_search(const Trs& trs, OrderVariant variant,
                       bool share_defs = true);

Certificate decode_model(const Encoding& enc, const Trs& trs,
                         const std::vector<bool>& model);

enum class SynthStatus { Compatible, Incompatible, Unknown };

struct SynthResult {
  SynthStatus status = SynthStatus::Unknown;
  std::optional<Certificate> cert;
  int vars = 0;
  size_t clauses = 0;
  long long conflicts = 0;
};

struct SynthOptions {
  bool share_defs = true;
  long long conflict_budget = -1;  // negative: unlimited
  std::string solver = "internal";  // or "dimacs:<command>"
  std::string cnf_out;              // when nonempty, the DIMACS text goes here
};

// Encodes, solves, decodes, and re-verifies with the exact procedures; a
// decoded certificate that fails verification raises Error rather than being
// reported.  External solver models are validated against the CNF first.
SynthResult synthesize(const Trs& trs, OrderVariant variant,
                       const SynthOptions& opts = {});

}  // namespace popcert
