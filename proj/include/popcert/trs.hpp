// popcert: term rewrite systems and the TPDB-style .trs text format.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "popcert/term.hpp"

namespace popcert {

struct Rule {
  TermPtr lhs;
  TermPtr rhs;
};

// A TRS owns its signature.  Symbols appearing at the root of some lhs are
// defined; all others are constructors.
struct Trs {
  Signature sig;
  std::vector<Rule> rules;
  std::vector<std::string> warnings;

  // True if every argument of every lhs is a value (no defined symbols).
  bool is_constructor_trs() const;
};

// Parses the `(VAR ...) (RULES ...)` format.  COMMENT sections are skipped;
// any other section is an error.  Checks: consistent arities, no variable
// lhs, no applied variables, rhs variables bound by the lhs.  Duplicate
// rules produce a warning, not an error.
Trs parse_trs(const std::string& text);
Trs parse_trs_file(const std::string& path);

// Inverse of parse_trs up to whitespace: parse_trs(write_trs(t)) == t.
std::string write_trs(const Trs& trs);

// Parses a single ground-or-open term against an existing signature.  New
// symbols are rejected; identifiers listed in the TRS's variable set (or not
// in the signature at all, when allow_new_vars) become variables.
TermPtr parse_term(const std::string& text, const Signature& sig);

// A term scheme with one numeric hole, written like `plus(s^@n(0), 0)`:
// `sym^@n(t)` expands to n-fold application of the unary symbol.
struct FamilyTemplate {
  std::string text;
  TermPtr instantiate(int n, const Signature& sig) const;
};

bool term_is_value(const TermPtr& t, const Signature& sig);
bool term_is_basic(const TermPtr& t, const Signature& sig);

}  // namespace popcert
