// popcert: formula arena — construction-time folding, Plaisted-Greenbaum CNF,
// DIMACS round-trip helpers.
#include <popcert/formula.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <popcert/error.hpp>

namespace popcert {

FormulaArena::FormulaArena() {
  nodes_.push_back({Kind::True, 0, {}});
  nodes_.push_back({Kind::False, 0, {}});
}

FormulaArena::Ref FormulaArena::intern(Node n) {
  uint64_t h = static_cast<uint64_t>(n.kind) * 1099511628211ull +
               static_cast<uint64_t>(n.var);
  for (Ref k : n.kids) h = h * 1099511628211ull + static_cast<uint64_t>(k) + 1;
  auto& bucket = buckets_[h];
  for (Ref r : bucket) {
    const Node& e = node(r);
    if (e.kind == n.kind && e.var == n.var && e.kids == n.kids) return r;
  }
  nodes_.push_back(std::move(n));
  Ref r = static_cast<Ref>(nodes_.size() - 1);
  bucket.push_back(r);
  return r;
}

FormulaArena::Ref FormulaArena::atom(int var) {
  if (var < 1) throw Error("formula: atom index must be positive");
  auto it = atom_refs_.find(var);
  if (it != atom_refs_.end()) return it->second;
  Ref r = intern({Kind::Atom, var, {}});
  atom_refs_.emplace(var, r);
  max_var_ = std::max(max_var_, var);
  return r;
}

FormulaArena::Ref FormulaArena::negate(Ref a) {
  switch (node(a).kind) {
    case Kind::True:
      return kFalse;
    case Kind::False:
      return kTrue;
    case Kind::Not:
      return node(a).kids[0];
    default:
      return intern({Kind::Not, 0, {a}});
  }
}

FormulaArena::Ref FormulaArena::conj(std::vector<Ref> parts) {
  std::vector<Ref> kids;
  for (Ref p : parts) {
    if (p == kFalse) return kFalse;
    if (p == kTrue) continue;
    if (node(p).kind == Kind::And) {
      for (Ref k : node(p).kids) kids.push_back(k);
    } else {
      kids.push_back(p);
    }
  }
  std::sort(kids.begin(), kids.end());
  kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
  std::unordered_set<Ref> present(kids.begin(), kids.end());
  for (Ref k : kids)
    if (node(k).kind == Kind::Not && present.count(node(k).kids[0]))
      return kFalse;
  if (kids.empty()) return kTrue;
  if (kids.size() == 1) return kids[0];
  return intern({Kind::And, 0, std::move(kids)});
}

FormulaArena::Ref FormulaArena::disj(std::vector<Ref> parts) {
  std::vector<Ref> kids;
  for (Ref p : parts) {
    if (p == kTrue) return kTrue;
    if (p == kFalse) continue;
    if (node(p).kind == Kind::Or) {
      for (Ref k : node(p).kids) kids.push_back(k);
    } else {
      kids.push_back(p);
    }
  }
  std::sort(kids.begin(), kids.end());
  kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
  std::unordered_set<Ref> present(kids.begin(), kids.end());
  for (Ref k : kids)
    if (node(k).kind == Kind::Not && present.count(node(k).kids[0]))
      return kTrue;
  if (kids.empty()) return kFalse;
  if (kids.size() == 1) return kids[0];
  return intern({Kind::Or, 0, std::move(kids)});
}

FormulaArena::Ref FormulaArena::implies(Ref a, Ref b) {
  return disj({negate(a), b});
}

FormulaArena::Ref FormulaArena::iff(Ref a, Ref b) {
  return conj({implies(a, b), implies(b, a)});
}

FormulaArena::Ref FormulaArena::at_most_one(const std::vector<Ref>& xs) {
  std::vector<Ref> parts;
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      parts.push_back(disj({negate(xs[i]), negate(xs[j])}));
  return conj(std::move(parts));
}

FormulaArena::Ref FormulaArena::exactly_one(const std::vector<Ref>& xs) {
  return conj({at_most_one(xs), disj(xs)});
}

bool FormulaArena::eval(Ref f, const std::vector<bool>& model) const {
  switch (node(f).kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Atom: {
      const size_t v = static_cast<size_t>(node(f).var);
      return v < model.size() && model[v];
    }
    case Kind::Not:
      return !eval(node(f).kids[0], model);
    case Kind::And:
      for (Ref k : node(f).kids)
        if (!eval(k, model)) return false;
      return true;
    case Kind::Or:
      for (Ref k : node(f).kids)
        if (eval(k, model)) return true;
      return false;
  }
  return false;
}

Cnf FormulaArena::to_cnf(Ref root, int min_vars) const {
  Cnf cnf;
  int next_var = std::max(max_var_, min_vars);
  std::vector<int> aux(nodes_.size(), 0);
  std::vector<uint8_t> done_pos(nodes_.size(), 0), done_neg(nodes_.size(), 0);

  // Literal for a node occurrence with the given polarity, emitting the
  // defining clauses this polarity needs.
  auto lit_of = [&](auto&& self, Ref r, bool pos) -> Lit {
    const Node& n = node(r);
    switch (n.kind) {
      case Kind::True:
      case Kind::False:
        throw Error("formula: constants may not occur inside a formula");
      case Kind::Atom:
        return n.var;
      case Kind::Not:
        return -self(self, n.kids[0], !pos);
      case Kind::And:
      case Kind::Or:
        break;
    }
    const size_t i = static_cast<size_t>(r);
    if (!aux[i]) aux[i] = ++next_var;
    const Lit v = aux[i];
    auto& done = pos ? done_pos : done_neg;
    if (done[i]) return v;
    done[i] = 1;
    if (n.kind == Kind::And) {
      if (pos) {
        for (Ref k : n.kids) cnf.clauses.push_back({-v, self(self, k, true)});
      } else {
        Clause c{v};
        for (Ref k : n.kids) c.push_back(-self(self, k, false));
        cnf.clauses.push_back(std::move(c));
      }
    } else {
      if (pos) {
        Clause c{-v};
        for (Ref k : n.kids) c.push_back(self(self, k, true));
        cnf.clauses.push_back(std::move(c));
      } else {
        for (Ref k : n.kids) cnf.clauses.push_back({v, -self(self, k, false)});
      }
    }
    return v;
  };

  auto top_clause = [&](Ref r) {
    if (node(r).kind == Kind::Or) {
      Clause c;
      for (Ref k : node(r).kids) c.push_back(lit_of(lit_of, k, true));
      cnf.clauses.push_back(std::move(c));
    } else {
      cnf.clauses.push_back({lit_of(lit_of, r, true)});
    }
  };

  if (root == kFalse) {
    cnf.clauses.push_back({});
  } else if (root != kTrue) {
    if (node(root).kind == Kind::And) {
      for (Ref k : node(root).kids) top_clause(k);
    } else {
      top_clause(root);
    }
  }
  cnf.num_vars = next_var;
  return cnf;
}

void export_dimacs(const Cnf& cnf, std::ostream& out) {
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const Clause& c : cnf.clauses) {
    for (Lit l : c) out << l << ' ';
    out << "0\n";
  }
}

Cnf parse_dimacs(std::istream& in) {
  Cnf cnf;
  bool header = false;
  Clause current;
  std::string token;
  while (in >> token) {
    if (token == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (token == "p") {
      std::string kind;
      long long nv = 0, nc = 0;
      if (!(in >> kind >> nv >> nc) || kind != "cnf" || nv < 0)
        throw Error("parse_dimacs: malformed problem line");
      cnf.num_vars = static_cast<int>(nv);
      header = true;
      continue;
    }
    long long x;
    try {
      size_t used = 0;
      x = std::stoll(token, &used);
      if (used != token.size()) throw Error("");
    } catch (...) {
      throw Error("parse_dimacs: unexpected token '" + token + "'");
    }
    if (!header) throw Error("parse_dimacs: literal before the problem line");
    if (x == 0) {
      cnf.clauses.push_back(std::move(current));
      current.clear();
    } else {
      cnf.num_vars = std::max(cnf.num_vars, static_cast<int>(std::llabs(x)));
      current.push_back(static_cast<Lit>(x));
    }
  }
  if (!header) throw Error("parse_dimacs: missing problem line");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  return cnf;
}

std::optional<SolverOutput> parse_solver_output(const std::string& text,
                                                int num_vars) {
  std::istringstream in(text);
  std::string line;
  bool seen_sat = false, seen_unsat = false;
  std::vector<Lit> lits;
  auto collect = [&](const std::string& s) {
    std::istringstream ls(s);
    long long x;
    while (ls >> x)
      if (x != 0) lits.push_back(static_cast<Lit>(x));
  };
  while (std::getline(in, line)) {
    std::string t = line;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
      t.pop_back();
    size_t start = 0;
    while (start < t.size() &&
           std::isspace(static_cast<unsigned char>(t[start])))
      ++start;
    t = t.substr(start);
    if (t.empty()) continue;
    if (t[0] == 'c') continue;
    if (t[0] == 's' && (t.size() == 1 || t[1] == ' ')) {
      if (t.find("UNSAT") != std::string::npos)
        seen_unsat = true;
      else if (t.find("SAT") != std::string::npos)
        seen_sat = true;
      continue;
    }
    if (t[0] == 'v' && (t.size() == 1 || t[1] == ' ')) {
      collect(t.substr(1));
      continue;
    }
    if (t == "SAT" || t == "SATISFIABLE") {
      seen_sat = true;
      continue;
    }
    if (t == "UNSAT" || t == "UNSATISFIABLE") {
      seen_unsat = true;
      continue;
    }
    if (t[0] == '-' || std::isdigit(static_cast<unsigned char>(t[0])))
      collect(t);
  }
  if (seen_unsat) return SolverOutput{false, {}};
  if (!seen_sat) return std::nullopt;
  SolverOutput out;
  out.sat = true;
  out.model.assign(static_cast<size_t>(num_vars) + 1, false);
  for (Lit l : lits) {
    const size_t v = static_cast<size_t>(std::abs(l));
    if (v < out.model.size()) out.model[v] = l > 0;
  }
  return out;
}

}  // namespace popcert
