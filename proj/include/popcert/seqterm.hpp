// popcert: sequence terms over normalized signatures — construction, measures, rendering.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace popcert {

// Symbol id of the tally unit in normalized signatures.
inline constexpr int32_t kBulletSym = -1;

struct SeqTerm;
using SeqPtr = std::shared_ptr<const SeqTerm>;

// Grammar: a term is a variable or an application whose arguments are
// sequences; a sequence is a list of terms.  Singleton sequences are
// identified with their element, so canonical Seq nodes have zero or at
// least two items, and items are always terms.
struct SeqTerm {
  enum class Kind : uint8_t { Var, App, Seq };
  Kind kind = Kind::Seq;
  std::string var;            // Var only
  int32_t sym = kBulletSym;   // App only
  std::vector<SeqPtr> items;  // App: argument sequences; Seq: element terms
  int width = 0;
};

SeqPtr seq_var(std::string name);
SeqPtr seq_app(int32_t sym, std::vector<SeqPtr> args);
SeqPtr seq_nil();
SeqPtr seq_bullet();
// Builds a sequence from parts by splicing nested sequences; a singleton
// collapses to its element.
SeqPtr seq_list(std::vector<SeqPtr> parts);
SeqPtr seq_concat(const SeqPtr& a, const SeqPtr& b);
SeqPtr seq_tally(int n);

bool seq_is_term(const SeqPtr& a);
bool seq_is_nil(const SeqPtr& a);
// The elements of `a` viewed as a sequence ({a} itself when a is a term).
std::vector<SeqPtr> seq_elements(const SeqPtr& a);
int seq_len(const SeqPtr& a);
int seq_width(const SeqPtr& a);
bool seq_ident(const SeqPtr& a, const SeqPtr& b);  // structural identity

// Renders the tally unit as `#`, sequences as `[e1 e2 ...]`, and application
// arguments as bracketed sequences, e.g. f([#], [g([]) #]).
std::string render_seq(const SeqPtr& a, const std::function<std::string(int32_t)>& name);

}  // namespace popcert
