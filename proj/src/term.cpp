#include "popcert/term.hpp"

#include <algorithm>
#include <set>

#include "popcert/error.hpp"

namespace popcert {

SymId Signature::intern(const std::string& name, int arity, SymbolKind kind) {
  auto it = byname_.find(name);
  if (it != byname_.end()) {
    const FunctionSymbol& sym = syms_[it->second];
    if (sym.arity != arity) {
      throw Error("symbol '" + name + "' used with arity " +
                  std::to_string(arity) + " but previously with arity " +
                  std::to_string(sym.arity));
    }
    return it->second;
  }
  SymId id = static_cast<SymId>(syms_.size());
  syms_.push_back(FunctionSymbol{name, arity, kind});
  byname_.emplace(name, id);
  return id;
}

std::optional<SymId> Signature::find(const std::string& name) const {
  auto it = byname_.find(name);
  if (it == byname_.end()) return std::nullopt;
  return it->second;
}

std::vector<SymId> Signature::defined() const {
  std::vector<SymId> out;
  for (SymId i = 0; i < size(); ++i)
    if (syms_[i].kind == SymbolKind::Defined) out.push_back(i);
  return out;
}

std::vector<SymId> Signature::constructors() const {
  std::vector<SymId> out;
  for (SymId i = 0; i < size(); ++i)
    if (syms_[i].kind == SymbolKind::Constructor) out.push_back(i);
  return out;
}

namespace {

size_t hash_combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

TermPtr Term::make_var(const std::string& name) {
  auto t = std::shared_ptr<Term>(new Term());
  t->sym_ = -1;
  t->var_ = name;
  t->hash_ = hash_combine(0x517cc1b7, std::hash<std::string>{}(name));
  t->size_ = 1;
  t->depth_ = 1;
  return t;
}

TermPtr Term::make_app(SymId sym, std::vector<TermPtr> args) {
  auto t = std::shared_ptr<Term>(new Term());
  t->sym_ = sym;
  t->args_ = std::move(args);
  size_t h = hash_combine(0x9e3779b9, static_cast<size_t>(sym));
  uint32_t size = 1;
  uint32_t depth = 0;
  for (const TermPtr& a : t->args_) {
    h = hash_combine(h, a->hash());
    size += a->size();
    depth = std::max(depth, a->depth());
  }
  t->hash_ = h;
  t->size_ = size;
  t->depth_ = depth + 1;
  return t;
}

bool term_eq(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.hash() != b.hash()) return false;
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) return a.var_name() == b.var_name();
  if (a.sym() != b.sym()) return false;
  if (a.args().size() != b.args().size()) return false;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (!term_eq(a.args()[i], b.args()[i])) return false;
  return true;
}

static void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
  if (t->is_var()) {
    if (std::find(out.begin(), out.end(), t->var_name()) == out.end())
      out.push_back(t->var_name());
    return;
  }
  for (const TermPtr& a : t->args()) collect_vars(a, out);
}

std::vector<std::string> term_vars(const TermPtr& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

static void collect_funs(const TermPtr& t, std::set<SymId>& out) {
  if (t->is_var()) return;
  out.insert(t->sym());
  for (const TermPtr& a : t->args()) collect_funs(a, out);
}

std::vector<SymId> term_funs(const TermPtr& t) {
  std::set<SymId> acc;
  collect_funs(t, acc);
  return std::vector<SymId>(acc.begin(), acc.end());
}

bool has_subterm(const TermPtr& t, const TermPtr& u) {
  if (term_eq(t, u)) return true;
  if (t->is_var()) return false;
  for (const TermPtr& a : t->args())
    if (has_subterm(a, u)) return true;
  return false;
}

std::string format_term(const TermPtr& t, const Signature& sig) {
  if (t->is_var()) return t->var_name();
  std::string out = sig[t->sym()].name;
  if (t->args().empty()) return out;
  out += '(';
  for (size_t i = 0; i < t->args().size(); ++i) {
    if (i > 0) out += ", ";
    out += format_term(t->args()[i], sig);
  }
  out += ')';
  return out;
}

}  // namespace popcert
