// popcert: propositional formulas as a hash-consed DAG, polarity-aware CNF
// conversion, and DIMACS input/output.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace popcert {

using Lit = int;  // sign = polarity, magnitude = 1-based variable index
using Clause = std::vector<Lit>;

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

// Nodes are deduplicated structurally; the same subformula is built once and
// converted to CNF once.  Constant folding happens at construction, so True
// and False never occur inside a live formula.
class FormulaArena {
 public:
  using Ref = int32_t;
  static constexpr Ref kTrue = 0;
  static constexpr Ref kFalse = 1;

  FormulaArena();

  Ref tru() const { return kTrue; }
  Ref fls() const { return kFalse; }
  Ref atom(int var);  // var >= 1
  Ref negate(Ref a);
  Ref conj(std::vector<Ref> parts);
  Ref disj(std::vector<Ref> parts);
  Ref implies(Ref a, Ref b);
  Ref iff(Ref a, Ref b);
  Ref at_most_one(const std::vector<Ref>& xs);
  Ref exactly_one(const std::vector<Ref>& xs);

  int max_var() const { return max_var_; }
  size_t size() const { return nodes_.size(); }

  // Truth value under a model indexed by variable; missing entries read as
  // false.
  bool eval(Ref f, const std::vector<bool>& model) const;

  // Plaisted-Greenbaum conversion: an auxiliary variable per internal node,
  // defining clauses only for the polarities in which the node occurs.
  // Auxiliary variables start after max(max_var(), min_vars).
  Cnf to_cnf(Ref root, int min_vars = 0) const;

 private:
  enum class Kind : uint8_t { True, False, Atom, Not, And, Or };
  struct Node {
    Kind kind;
    int var = 0;
    std::vector<Ref> kids;
  };

  Ref intern(Node node);
  const Node& node(Ref r) const { return nodes_[static_cast<size_t>(r)]; }

  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, std::vector<Ref>> buckets_;
  std::unordered_map<int, Ref> atom_refs_;
  int max_var_ = 0;
};

void export_dimacs(const Cnf& cnf, std::ostream& out);

// Reads the format export_dimacs writes: comments, a `p cnf` header, then
// zero-terminated clauses.  Literals beyond the declared count grow the
// variable range.  Throws Error on malformed input.
Cnf parse_dimacs(std::istream& in);

// Result of an external SAT solver run.
struct SolverOutput {
  bool sat = false;
  std::vector<bool> model;  // indexed by variable, size num_vars + 1
};

// Accepts both the `s SATISFIABLE` / `v 1 -2 0` competition format and the
// bare `SAT` first-line format with literals on following lines.  Returns
// nullopt when no verdict is recognizable.
std::optional<SolverOutput> parse_solver_output(const std::string& text,
                                                int num_vars);

}  // namespace popcert
