// popcert: first-order signatures and immutable shared terms.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace popcert {

using SymId = int32_t;

enum class SymbolKind : uint8_t { Defined, Constructor };

struct FunctionSymbol {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::Constructor;
};

class Signature {
public:
  // Returns the id of `name`, creating the symbol on first sight.
  // Throws Error if `name` was seen before with a different arity.
  SymId intern(const std::string& name, int arity,
               SymbolKind kind = SymbolKind::Constructor);

  std::optional<SymId> find(const std::string& name) const;

  const FunctionSymbol& operator[](SymId id) const { return syms_[id]; }
  int size() const { return static_cast<int>(syms_.size()); }

  void set_kind(SymId id, SymbolKind kind) { syms_[id].kind = kind; }
  bool is_defined(SymId id) const {
    return syms_[id].kind == SymbolKind::Defined;
  }

  std::vector<SymId> defined() const;
  std::vector<SymId> constructors() const;

private:
  std::vector<FunctionSymbol> syms_;
  std::unordered_map<std::string, SymId> byname_;
};

// Terms are immutable and freely shared; subterm extraction never copies.
class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
  static TermPtr make_var(const std::string& name);
  static TermPtr make_app(SymId sym, std::vector<TermPtr> args);

  bool is_var() const { return sym_ < 0; }
  const std::string& var_name() const { return var_; }
  SymId sym() const { return sym_; }
  const std::vector<TermPtr>& args() const { return args_; }

  size_t hash() const { return hash_; }
  // Number of variable and function-symbol occurrences.
  uint32_t size() const { return size_; }
  // depth(x) = 1, depth(f(ts)) = 1 + max depth over ts (0 if none).
  uint32_t depth() const { return depth_; }

private:
  Term() = default;

  SymId sym_ = -1;
  std::string var_;
  std::vector<TermPtr> args_;
  size_t hash_ = 0;
  uint32_t size_ = 1;
  uint32_t depth_ = 1;
};

bool term_eq(const Term& a, const Term& b);
inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  return a.get() == b.get() || term_eq(*a, *b);
}

struct TermPtrHash {
  size_t operator()(const TermPtr& t) const { return t->hash(); }
};
struct TermPtrEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return term_eq(a, b);
  }
};

// All distinct variable names of t, in first-occurrence order.
std::vector<std::string> term_vars(const TermPtr& t);

// All function symbols occurring in t (deduplicated, ascending id).
std::vector<SymId> term_funs(const TermPtr& t);

// True iff u occurs in t as a subterm (t itself included).
bool has_subterm(const TermPtr& t, const TermPtr& u);

std::string format_term(const TermPtr& t, const Signature& sig);

}  // namespace popcert
