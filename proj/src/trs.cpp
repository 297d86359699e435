// popcert: parser and writer for the .trs rule format.
#include "popcert/trs.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "popcert/error.hpp"

namespace popcert {

namespace {

enum class Tok { LParen, RParen, Comma, Arrow, Power, Ident, Other, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
         c == '+' || c == '*' || c == '-' || c == '.';
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  Token expect(Tok kind, const char* what) {
    if (tok_.kind != kind)
      throw ParseError(tok_.line, tok_.col,
                       std::string("expected ") + what + " but found '" +
                           (tok_.kind == Tok::End ? "<end>" : tok_.text) + "'");
    return next();
  }

  // Skips raw comment text until the open paren consumed by the caller is
  // closed.  Comments may contain characters that do not tokenize, so this
  // works on characters, not tokens.
  void skip_comment() {
    int depth = 1;
    if (tok_.kind == Tok::LParen) depth++;
    if (tok_.kind == Tok::RParen) depth--;
    if (tok_.kind == Tok::End)
      throw ParseError(tok_.line, tok_.col, "unterminated COMMENT section");
    while (depth > 0) {
      if (pos_ >= src_.size())
        throw ParseError(line_, col_, "unterminated COMMENT section");
      char c = bump();
      if (c == '(') depth++;
      if (c == ')') depth--;
    }
    advance();
  }

 private:
  char bump() {
    char c = src_[pos_++];
    if (c == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    return c;
  }

  void advance() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      bump();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (c == '(') {
      bump();
      tok_ = {Tok::LParen, "(", tok_.line, tok_.col};
      return;
    }
    if (c == ')') {
      bump();
      tok_ = {Tok::RParen, ")", tok_.line, tok_.col};
      return;
    }
    if (c == ',') {
      bump();
      tok_ = {Tok::Comma, ",", tok_.line, tok_.col};
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      bump();
      bump();
      tok_ = {Tok::Arrow, "->", tok_.line, tok_.col};
      return;
    }
    if (c == '^' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '@' &&
        src_[pos_ + 2] == 'n') {
      bump();
      bump();
      bump();
      tok_ = {Tok::Power, "^@n", tok_.line, tok_.col};
      return;
    }
    if (is_ident_char(c)) {
      std::string text;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) {
        if (src_[pos_] == '-' && pos_ + 1 < src_.size() &&
            src_[pos_ + 1] == '>')
          break;
        text += bump();
      }
      tok_ = {Tok::Ident, text, tok_.line, tok_.col};
      return;
    }
    std::string text(1, bump());
    tok_ = {Tok::Other, text, tok_.line, tok_.col};
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

struct PreTerm {
  std::string name;
  int line = 0;
  int col = 0;
  bool power = false;
  std::vector<PreTerm> args;
};

PreTerm parse_preterm(Lexer& lx, bool allow_power) {
  Token head = lx.expect(Tok::Ident, "an identifier");
  PreTerm t;
  t.name = head.text;
  t.line = head.line;
  t.col = head.col;
  if (allow_power && lx.peek().kind == Tok::Power) {
    lx.next();
    t.power = true;
  }
  if (lx.peek().kind == Tok::LParen) {
    lx.next();
    if (lx.peek().kind == Tok::RParen) {
      lx.next();
    } else {
      t.args.push_back(parse_preterm(lx, allow_power));
      while (lx.peek().kind == Tok::Comma) {
        lx.next();
        t.args.push_back(parse_preterm(lx, allow_power));
      }
      lx.expect(Tok::RParen, "')'");
    }
  }
  if (t.power && t.args.size() != 1)
    throw ParseError(t.line, t.col,
                     "'" + t.name + "^@n' must be applied to exactly one "
                     "argument");
  return t;
}

struct ArityUse {
  int arity;
  int line;
  int col;
};

void check_arities(const PreTerm& t, const std::set<std::string>& vars,
                   std::map<std::string, ArityUse>& arities) {
  if (vars.count(t.name)) {
    if (!t.args.empty())
      throw ParseError(t.line, t.col,
                       "variable '" + t.name + "' cannot take arguments");
    return;
  }
  auto it = arities.find(t.name);
  if (it == arities.end()) {
    arities.emplace(t.name,
                    ArityUse{static_cast<int>(t.args.size()), t.line, t.col});
  } else if (it->second.arity != static_cast<int>(t.args.size())) {
    throw ParseError(t.line, t.col,
                     "symbol '" + t.name + "' used with " +
                         std::to_string(t.args.size()) +
                         " arguments but with " +
                         std::to_string(it->second.arity) + " at line " +
                         std::to_string(it->second.line));
  }
  for (const PreTerm& a : t.args) check_arities(a, vars, arities);
}

void intern_symbols(const PreTerm& t, const std::set<std::string>& vars,
                    const std::set<std::string>& defined, Signature& sig) {
  if (vars.count(t.name)) return;
  sig.intern(t.name, static_cast<int>(t.args.size()),
             defined.count(t.name) ? SymbolKind::Defined
                                   : SymbolKind::Constructor);
  for (const PreTerm& a : t.args) intern_symbols(a, vars, defined, sig);
}

TermPtr build_term(const PreTerm& t, const std::set<std::string>& vars,
                   const Signature& sig) {
  if (vars.count(t.name)) return Term::make_var(t.name);
  std::vector<TermPtr> args;
  args.reserve(t.args.size());
  for (const PreTerm& a : t.args) args.push_back(build_term(a, vars, sig));
  return Term::make_app(*sig.find(t.name), std::move(args));
}

}  // namespace

Trs parse_trs(const std::string& text) {
  Lexer lx(text);
  std::vector<std::string> var_names;
  std::vector<std::pair<PreTerm, PreTerm>> pre_rules;

  while (lx.peek().kind != Tok::End) {
    lx.expect(Tok::LParen, "'('");
    Token section = lx.expect(Tok::Ident, "a section name");
    if (section.text == "COMMENT") {
      lx.skip_comment();
    } else if (section.text == "VAR") {
      while (lx.peek().kind == Tok::Ident) var_names.push_back(lx.next().text);
      lx.expect(Tok::RParen, "')'");
    } else if (section.text == "RULES") {
      while (lx.peek().kind != Tok::RParen) {
        PreTerm lhs = parse_preterm(lx, false);
        lx.expect(Tok::Arrow, "'->'");
        PreTerm rhs = parse_preterm(lx, false);
        pre_rules.emplace_back(std::move(lhs), std::move(rhs));
      }
      lx.next();
    } else {
      throw ParseError(section.line, section.col,
                       "unsupported section '" + section.text + "'");
    }
  }

  std::set<std::string> vars(var_names.begin(), var_names.end());
  std::set<std::string> defined;
  for (const auto& [lhs, rhs] : pre_rules) {
    if (vars.count(lhs.name))
      throw ParseError(lhs.line, lhs.col,
                       "left-hand side of a rule cannot be a variable");
    defined.insert(lhs.name);
  }

  std::map<std::string, ArityUse> arities;
  for (const auto& [lhs, rhs] : pre_rules) {
    check_arities(lhs, vars, arities);
    check_arities(rhs, vars, arities);
  }

  Trs trs;
  for (const auto& [lhs, rhs] : pre_rules) {
    intern_symbols(lhs, vars, defined, trs.sig);
    intern_symbols(rhs, vars, defined, trs.sig);
  }

  for (const auto& [plhs, prhs] : pre_rules) {
    Rule rule{build_term(plhs, vars, trs.sig), build_term(prhs, vars, trs.sig)};
    std::vector<std::string> lvars = term_vars(rule.lhs);
    for (const std::string& v : term_vars(rule.rhs)) {
      if (std::find(lvars.begin(), lvars.end(), v) == lvars.end())
        throw ParseError(prhs.line, prhs.col,
                         "variable '" + v +
                             "' on the right-hand side does not occur on the "
                             "left");
    }
    trs.rules.push_back(std::move(rule));
  }

  for (size_t i = 0; i < trs.rules.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (term_eq(trs.rules[i].lhs, trs.rules[j].lhs) &&
          term_eq(trs.rules[i].rhs, trs.rules[j].rhs)) {
        trs.warnings.push_back(
            "duplicate rule: " + format_term(trs.rules[i].lhs, trs.sig) +
            " -> " + format_term(trs.rules[i].rhs, trs.sig));
        break;
      }
    }
  }
  return trs;
}

Trs parse_trs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trs(buf.str());
}

std::string write_trs(const Trs& trs) {
  std::vector<std::string> vars;
  for (const Rule& r : trs.rules) {
    for (const std::string& v : term_vars(r.lhs))
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    for (const std::string& v : term_vars(r.rhs))
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
  }
  std::string out = "(VAR";
  for (const std::string& v : vars) out += " " + v;
  out += ")\n(RULES\n";
  for (const Rule& r : trs.rules)
    out += "  " + format_term(r.lhs, trs.sig) + " -> " +
           format_term(r.rhs, trs.sig) + "\n";
  out += ")\n";
  return out;
}

namespace {

TermPtr build_against_sig(const PreTerm& t, const Signature& sig, int n) {
  std::optional<SymId> sym = sig.find(t.name);
  if (!sym) {
    if (!t.args.empty())
      throw ParseError(t.line, t.col,
                       "unknown function symbol '" + t.name + "'");
    return Term::make_var(t.name);
  }
  if (t.power) {
    if (sig[*sym].arity != 1)
      throw ParseError(t.line, t.col,
                       "'" + t.name + "^@n' requires a unary symbol");
    TermPtr inner = build_against_sig(t.args[0], sig, n);
    for (int i = 0; i < n; ++i) inner = Term::make_app(*sym, {inner});
    return inner;
  }
  if (sig[*sym].arity != static_cast<int>(t.args.size()))
    throw ParseError(t.line, t.col,
                     "symbol '" + t.name + "' expects " +
                         std::to_string(sig[*sym].arity) + " arguments, got " +
                         std::to_string(t.args.size()));
  std::vector<TermPtr> args;
  args.reserve(t.args.size());
  for (const PreTerm& a : t.args)
    args.push_back(build_against_sig(a, sig, n));
  return Term::make_app(*sym, std::move(args));
}

PreTerm parse_single(const std::string& text, bool allow_power) {
  Lexer lx(text);
  PreTerm t = parse_preterm(lx, allow_power);
  if (lx.peek().kind != Tok::End)
    throw ParseError(lx.peek().line, lx.peek().col,
                     "unexpected trailing input '" + lx.peek().text + "'");
  return t;
}

}  // namespace

TermPtr parse_term(const std::string& text, const Signature& sig) {
  return build_against_sig(parse_single(text, false), sig, 0);
}

TermPtr FamilyTemplate::instantiate(int n, const Signature& sig) const {
  if (n < 0) throw Error("family index must be non-negative");
  return build_against_sig(parse_single(text, true), sig, n);
}

bool term_is_value(const TermPtr& t, const Signature& sig) {
  if (t->is_var()) return true;
  if (sig.is_defined(t->sym())) return false;
  for (const TermPtr& a : t->args())
    if (!term_is_value(a, sig)) return false;
  return true;
}

bool term_is_basic(const TermPtr& t, const Signature& sig) {
  if (t->is_var() || !sig.is_defined(t->sym())) return false;
  for (const TermPtr& a : t->args())
    if (!term_is_value(a, sig)) return false;
  return true;
}

bool Trs::is_constructor_trs() const {
  for (const Rule& r : rules)
    if (!term_is_basic(r.lhs, sig)) return false;
  return true;
}

}  // namespace popcert
