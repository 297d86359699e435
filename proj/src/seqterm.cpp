// popcert: sequence terms over normalized signatures — construction, measures, rendering.
#include <popcert/seqterm.hpp>

#include <algorithm>
#include <sstream>

#include <popcert/error.hpp>

namespace popcert {

namespace {

SeqPtr make(SeqTerm node) { return std::make_shared<const SeqTerm>(std::move(node)); }

}  // namespace

SeqPtr seq_var(std::string name) {
  SeqTerm node;
  node.kind = SeqTerm::Kind::Var;
  node.var = std::move(name);
  node.width = 1;
  return make(std::move(node));
}

SeqPtr seq_app(int32_t sym, std::vector<SeqPtr> args) {
  SeqTerm node;
  node.kind = SeqTerm::Kind::App;
  node.sym = sym;
  node.width = 1;
  for (const auto& a : args) node.width = std::max(node.width, a->width);
  node.items = std::move(args);
  return make(std::move(node));
}

SeqPtr seq_nil() {
  static const SeqPtr nil = make(SeqTerm{});
  return nil;
}

SeqPtr seq_bullet() {
  static const SeqPtr bullet = seq_app(kBulletSym, {});
  return bullet;
}

SeqPtr seq_list(std::vector<SeqPtr> parts) {
  std::vector<SeqPtr> items;
  for (auto& p : parts) {
    if (p->kind == SeqTerm::Kind::Seq)
      items.insert(items.end(), p->items.begin(), p->items.end());
    else
      items.push_back(std::move(p));
  }
  if (items.size() == 1) return items.front();
  SeqTerm node;
  node.kind = SeqTerm::Kind::Seq;
  node.width = 0;
  for (const auto& e : items) node.width += e->width;
  node.items = std::move(items);
  return make(std::move(node));
}

SeqPtr seq_concat(const SeqPtr& a, const SeqPtr& b) { return seq_list({a, b}); }

SeqPtr seq_tally(int n) {
  if (n < 0) throw Error("seq_tally: negative count");
  std::vector<SeqPtr> bullets(static_cast<size_t>(n), seq_bullet());
  return seq_list(std::move(bullets));
}

bool seq_is_term(const SeqPtr& a) { return a->kind != SeqTerm::Kind::Seq; }
bool seq_is_nil(const SeqPtr& a) { return a->kind == SeqTerm::Kind::Seq && a->items.empty(); }

std::vector<SeqPtr> seq_elements(const SeqPtr& a) {
  if (a->kind == SeqTerm::Kind::Seq) return a->items;
  return {a};
}

int seq_len(const SeqPtr& a) {
  return a->kind == SeqTerm::Kind::Seq ? static_cast<int>(a->items.size()) : 1;
}

int seq_width(const SeqPtr& a) { return a->width; }

bool seq_ident(const SeqPtr& a, const SeqPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->items.size() != b->items.size()) return false;
  if (a->kind == SeqTerm::Kind::Var) return a->var == b->var;
  if (a->kind == SeqTerm::Kind::App && a->sym != b->sym) return false;
  for (size_t i = 0; i < a->items.size(); ++i)
    if (!seq_ident(a->items[i], b->items[i])) return false;
  return true;
}

std::string render_seq(const SeqPtr& a, const std::function<std::string(int32_t)>& name) {
  std::ostringstream out;
  auto bracket = [&](const SeqPtr& s, auto&& self) -> void {
    out << '[';
    bool first = true;
    for (const auto& e : seq_elements(s)) {
      if (!first) out << ' ';
      first = false;
      self(e, self);
    }
    out << ']';
  };
  auto go = [&](const SeqPtr& t, auto&& self) -> void {
    switch (t->kind) {
      case SeqTerm::Kind::Var:
        out << t->var;
        return;
      case SeqTerm::Kind::App: {
        if (t->sym == kBulletSym && t->items.empty()) {
          out << '#';
          return;
        }
        out << name(t->sym);
        if (!t->items.empty()) {
          out << '(';
          for (size_t i = 0; i < t->items.size(); ++i) {
            if (i) out << ", ";
            bracket(t->items[i], self);
          }
          out << ')';
        }
        return;
      }
      case SeqTerm::Kind::Seq:
        bracket(t, self);
        return;
    }
  };
  if (a->kind == SeqTerm::Kind::Seq)
    bracket(a, go);
  else
    go(a, go);
  return out.str();
}

}  // namespace popcert
