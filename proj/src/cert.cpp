#include "popcert/cert.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "popcert/error.hpp"

namespace popcert {

std::string order_variant_name(OrderVariant v) {
  switch (v) {
    case OrderVariant::PopStar: return "pop*";
    case OrderVariant::PopStarPs: return "pop*ps";
    case OrderVariant::Mpo: return "mpo";
  }
  return "?";
}

std::optional<OrderVariant> order_variant_from_name(const std::string& name) {
  if (name == "pop*") return OrderVariant::PopStar;
  if (name == "pop*ps") return OrderVariant::PopStarPs;
  if (name == "mpo") return OrderVariant::Mpo;
  return std::nullopt;
}

bool Certificate::is_safe(SymId f, int pos) const {
  const std::vector<int>& s = safe[f];
  return std::find(s.begin(), s.end(), pos) != s.end();
}

std::vector<int> Certificate::normal_positions(SymId f,
                                               const Signature& sig) const {
  std::vector<int> out;
  for (int i = 1; i <= sig[f].arity; ++i)
    if (!is_safe(f, i)) out.push_back(i);
  return out;
}

int Certificate::max_defined_rank() const {
  int m = 0;
  for (int r : rank) m = std::max(m, r);
  return m;
}

void Certificate::normalize(const Signature& sig) {
  std::vector<int> used;
  for (SymId f = 0; f < sig.size(); ++f)
    if (sig.is_defined(f)) used.push_back(rank[f]);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (SymId f = 0; f < sig.size(); ++f) {
    if (sig.is_defined(f)) {
      int tight = static_cast<int>(std::lower_bound(used.begin(), used.end(),
                                                    rank[f]) -
                                   used.begin()) +
                  1;
      rank[f] = tight;
    } else {
      rank[f] = 0;
      safe[f].resize(sig[f].arity);
      std::iota(safe[f].begin(), safe[f].end(), 1);
    }
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

std::string strip_comment(const std::string& line) {
  size_t hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

SymId lookup(const std::string& name, const Signature& sig) {
  std::optional<SymId> id = sig.find(name);
  if (!id) throw Error("unknown symbol '" + name + "' in certificate");
  return *id;
}

}  // namespace

Certificate parse_cert(const std::string& text, const Signature& sig) {
  Certificate cert;
  cert.rank.assign(sig.size(), 0);
  cert.safe.assign(sig.size(), {});

  bool have_order = false;
  enum class Section { None, Precedence, Safe } section = Section::None;
  std::vector<std::pair<SymId, SymId>> gts, eqs;
  std::vector<bool> safe_listed(sig.size(), false);

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    lineno++;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw ParseError(lineno, 1, msg);
    };

    if (line.rfind("order:", 0) == 0) {
      std::string name = strip_comment(line.substr(6));
      std::optional<OrderVariant> v = order_variant_from_name(name);
      if (!v) fail("unknown order '" + name + "'");
      cert.order = *v;
      have_order = true;
      continue;
    }
    if (line == "precedence:") {
      section = Section::Precedence;
      continue;
    }
    if (line == "safe:") {
      section = Section::Safe;
      continue;
    }

    if (section == Section::Precedence) {
      std::istringstream ls(line);
      std::string tok;
      std::vector<std::string> toks;
      while (ls >> tok) toks.push_back(tok);
      if (toks.empty() || toks.size() % 2 == 0)
        fail("expected a chain like 'f > g = h'");
      SymId prev = lookup(toks[0], sig);
      for (size_t i = 1; i < toks.size(); i += 2) {
        SymId next = lookup(toks[i + 1], sig);
        if (toks[i] == ">") {
          if (!sig.is_defined(prev))
            fail("constructor '" + sig[prev].name +
                 "' cannot be above another symbol");
          if (sig.is_defined(next)) gts.emplace_back(prev, next);
        } else if (toks[i] == "=") {
          if (sig.is_defined(prev) != sig.is_defined(next))
            fail("cannot equate '" + sig[prev].name + "' with '" +
                 sig[next].name + "': one is a constructor");
          if (sig.is_defined(prev)) eqs.emplace_back(prev, next);
        } else {
          fail("expected '>' or '=' but found '" + toks[i] + "'");
        }
        prev = next;
      }
    } else if (section == Section::Safe) {
      size_t colon = line.find(':');
      if (colon == std::string::npos) fail("expected 'symbol: positions'");
      std::string name = strip_comment(line.substr(0, colon));
      SymId f = lookup(name, sig);
      if (safe_listed[f]) fail("symbol '" + name + "' listed twice");
      safe_listed[f] = true;
      std::vector<int> positions;
      std::string rest = line.substr(colon + 1);
      std::istringstream ps(rest);
      std::string piece;
      while (std::getline(ps, piece, ',')) {
        std::string p = strip_comment(piece);
        if (p.empty()) continue;
        size_t used = 0;
        int pos = 0;
        try {
          pos = std::stoi(p, &used);
        } catch (const std::exception&) {
          fail("invalid argument position '" + p + "'");
        }
        if (used != p.size()) fail("invalid argument position '" + p + "'");
        if (pos < 1 || pos > sig[f].arity)
          fail("position " + std::to_string(pos) + " out of range for '" +
               name + "' (arity " + std::to_string(sig[f].arity) + ")");
        positions.push_back(pos);
      }
      std::sort(positions.begin(), positions.end());
      positions.erase(std::unique(positions.begin(), positions.end()),
                      positions.end());
      if (!sig.is_defined(f) &&
          static_cast<int>(positions.size()) != sig[f].arity)
        fail("constructor '" + name + "' must have all arguments safe");
      cert.safe[f] = std::move(positions);
    } else {
      fail("line outside of any section: '" + line + "'");
    }
  }
  if (!have_order) throw Error("certificate has no 'order:' line");

  // Compile precedence lines into the rank map: union equalities, then rank
  // classes by longest descending chain.
  UnionFind uf(sig.size());
  for (auto [a, b] : eqs) uf.merge(a, b);
  std::map<int, std::vector<int>> succs;
  for (auto [a, b] : gts) {
    int ra = uf.find(a), rb = uf.find(b);
    succs[ra].push_back(rb);
  }
  std::vector<int> cls_rank(sig.size(), -1);
  std::vector<int> visiting(sig.size(), 0);
  auto rank_of = [&](auto&& self, int c) -> int {
    if (cls_rank[c] >= 0) return cls_rank[c];
    if (visiting[c])
      throw Error("certificate precedence contains a cycle through '" +
                  sig[c].name + "'");
    visiting[c] = 1;
    int r = 1;
    auto it = succs.find(c);
    if (it != succs.end())
      for (int s : it->second) r = std::max(r, self(self, s) + 1);
    visiting[c] = 0;
    cls_rank[c] = r;
    return r;
  };
  for (SymId f = 0; f < sig.size(); ++f)
    if (sig.is_defined(f)) cert.rank[f] = rank_of(rank_of, uf.find(f));

  cert.normalize(sig);
  return cert;
}

Certificate parse_cert_file(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_cert(buf.str(), sig);
}

namespace {

std::vector<std::vector<SymId>> rank_layers(const Certificate& cert,
                                            const Signature& sig) {
  std::vector<std::vector<SymId>> layers(cert.max_defined_rank() + 1);
  for (SymId f = 0; f < sig.size(); ++f)
    if (sig.is_defined(f)) layers[cert.rank[f]].push_back(f);
  return layers;
}

}  // namespace

std::vector<std::pair<SymId, SymId>> hasse_pairs(const Certificate& cert,
                                                 const Signature& sig) {
  std::vector<std::vector<SymId>> layers = rank_layers(cert, sig);
  std::vector<std::pair<SymId, SymId>> out;
  for (size_t i = layers.size(); i-- > 2;)
    for (SymId f : layers[i])
      for (SymId g : layers[i - 1]) out.emplace_back(f, g);
  return out;
}

std::vector<std::pair<SymId, SymId>> equal_pairs(const Certificate& cert,
                                                 const Signature& sig) {
  std::vector<std::vector<SymId>> layers = rank_layers(cert, sig);
  std::vector<std::pair<SymId, SymId>> out;
  for (const std::vector<SymId>& layer : layers)
    for (size_t i = 1; i < layer.size(); ++i)
      out.emplace_back(layer[0], layer[i]);
  return out;
}

std::string write_cert(const Certificate& cert, const Signature& sig) {
  std::string out = "order: " + order_variant_name(cert.order) + "\n";
  std::vector<std::pair<SymId, SymId>> gt = hasse_pairs(cert, sig);
  std::vector<std::pair<SymId, SymId>> eq = equal_pairs(cert, sig);
  if (!gt.empty() || !eq.empty()) {
    out += "precedence:\n";
    for (auto [f, g] : gt)
      out += "  " + sig[f].name + " > " + sig[g].name + "\n";
    for (auto [f, g] : eq)
      out += "  " + sig[f].name + " = " + sig[g].name + "\n";
  }
  std::string safe_lines;
  for (SymId f = 0; f < sig.size(); ++f)
    if (sig.is_defined(f) && !cert.safe[f].empty()) {
      safe_lines += "  " + sig[f].name + ": ";
      for (size_t i = 0; i < cert.safe[f].size(); ++i) {
        if (i > 0) safe_lines += ",";
        safe_lines += std::to_string(cert.safe[f][i]);
      }
      safe_lines += "\n";
    }
  if (!safe_lines.empty()) out += "safe:\n" + safe_lines;
  return out;
}

}  // namespace popcert
