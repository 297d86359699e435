// popcert: command-line driver — certificate synthesis, verification,
// derivation simulation, embedding checks, and bound constants.
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <popcert/cert.hpp>
#include <popcert/degree.hpp>
#include <popcert/encode.hpp>
#include <popcert/error.hpp>
#include <popcert/formula.hpp>
#include <popcert/orders.hpp>
#include <popcert/predicative.hpp>
#include <popcert/rewrite.hpp>
#include <popcert/solver.hpp>
#include <popcert/trs.hpp>

namespace {

using namespace popcert;

constexpr int kExitCompatible = 0;
constexpr int kExitIncompatible = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 10;

std::string default_solver() {
  const char* env = std::getenv("POPCERT_SOLVER");
  return env && *env ? env : "internal";
}

std::vector<OrderVariant> parse_order_list(const std::string& text) {
  std::vector<OrderVariant> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto v = order_variant_from_name(item);
    if (!v) throw Error("unknown order '" + item + "' (expected pop*, pop*ps, or mpo)");
    out.push_back(*v);
  }
  if (out.empty()) throw Error("empty order list");
  return out;
}

// Width budget of a certificate: the largest normal-argument count over the
// defined symbols, at least 1.
int width_budget(const Trs& trs, const Certificate& cert) {
  int k = 1;
  for (SymId f : trs.sig.defined())
    k = std::max(k, static_cast<int>(cert.normal_positions(f, trs.sig).size()));
  return k;
}

// Exponent d alone, without the far larger coefficient c; grows doubly
// exponentially in p, so a bit guard still applies.
std::optional<BigInt> degree_exponent(int k, int p) {
  BigInt d = k + 1;
  for (int level = 0; level < p; ++level) {
    d = boost::multiprecision::pow(d, static_cast<unsigned>(k)) + 1;
    if (static_cast<long long>(msb(d)) >= (1LL << 20)) return std::nullopt;
  }
  return d;
}

void print_degree_line(const Trs& trs, const Certificate& cert) {
  int p = cert.max_defined_rank();
  int k = width_budget(trs, cert);
  std::optional<DegreeBound> db;
  try {
    db = degree_bound(k, p);
  } catch (const Error&) {
    db = std::nullopt;
  }
  std::optional<BigInt> d = db ? std::optional<BigInt>(db->d) : degree_exponent(k, p);
  if (!d) {
    std::cout << "degree bound: exceeds the representable size guard (k = " << k
              << ", p = " << p << ")\n";
    return;
  }
  std::cout << "degree bound: dheight(t) <= c * n^d for basic terms of depth n, with d = "
            << *d << " (k = " << k << ", p = " << p << ")\n";
  if (!db) {
    std::cout << "  c exceeds the representable size guard\n";
    return;
  }
  std::ostringstream cs;
  cs << db->c;
  std::string c = cs.str();
  if (c.size() <= 40)
    std::cout << "  c = " << c << "\n";
  else
    std::cout << "  c has " << c.size() << " decimal digits\n";
}

struct CheckArgs {
  std::string file;
  std::string order;
  std::string cert_out;
  std::string cnf_out;
  std::string solver = default_solver();
  long long budget = -1;
  bool no_share = false;
};

int cmd_check(const CheckArgs& a) {
  Trs trs = parse_trs_file(a.file);
  for (const std::string& w : trs.warnings) std::cerr << "warning: " << w << "\n";
  if (!trs.is_constructor_trs())
    std::cerr << "warning: not a constructor TRS; runtime bounds assume constructor systems\n";

  bool fallback = a.order.empty();
  std::vector<OrderVariant> variants =
      fallback ? std::vector<OrderVariant>{OrderVariant::PopStar, OrderVariant::PopStarPs}
               : parse_order_list(a.order);

  bool compatible = false, unknown = false;
  bool cert_written = false;
  for (size_t i = 0; i < variants.size(); ++i) {
    OrderVariant v = variants[i];
    SynthOptions opts;
    opts.share_defs = !a.no_share;
    opts.conflict_budget = a.budget;
    opts.solver = a.solver;
    if (i == 0) opts.cnf_out = a.cnf_out;  // the dump covers the first attempt
    SynthResult r = synthesize(trs, v, opts);

    std::cout << "== " << order_variant_name(v) << " ==\n";
    switch (r.status) {
      case SynthStatus::Compatible: {
        compatible = true;
        std::cout << "verdict: compatible (" << r.vars << " variables, " << r.clauses
                  << " clauses, " << r.conflicts << " conflicts)\n";
        std::cout << write_cert(*r.cert, trs.sig);
        if (v == OrderVariant::Mpo) {
          std::cout << "note: the multiset path order certifies innermost termination "
                       "only; it implies no polynomial runtime bound\n";
        } else {
          std::cout << "rules in predicative notation:\n";
          std::istringstream rules(render_predicative_rules(trs, *r.cert));
          std::string line;
          while (std::getline(rules, line)) std::cout << "  " << line << "\n";
          print_degree_line(trs, *r.cert);
        }
        if (!a.cert_out.empty() && !cert_written) {
          std::ofstream out(a.cert_out);
          if (!out) throw Error("cannot write " + a.cert_out);
          out << write_cert(*r.cert, trs.sig);
          cert_written = true;
        }
        break;
      }
      case SynthStatus::Incompatible:
        std::cout << "verdict: incompatible (no such certificate exists)\n";
        break;
      case SynthStatus::Unknown:
        unknown = true;
        std::cout << "verdict: unknown (conflict budget exhausted after " << r.conflicts
                  << " conflicts)\n";
        break;
    }
    if (fallback && compatible) break;
  }
  return compatible ? kExitCompatible : unknown ? kExitUnknown : kExitIncompatible;
}

struct VerifyArgs {
  std::string file;
  std::string cert;
};

int cmd_verify(const VerifyArgs& a) {
  Trs trs = parse_trs_file(a.file);
  Certificate cert = parse_cert_file(a.cert, trs.sig);
  CompatReport rep = check_compat(trs, cert);
  std::cout << "order: " << order_variant_name(cert.order) << "\n";
  int failed = 0;
  for (const RuleCheck& rc : rep.rules) {
    std::cout << (rc.oriented ? "  [ok]   " : "  [fail] ") << rc.trace << "\n";
    failed += rc.oriented ? 0 : 1;
  }
  if (rep.compatible)
    std::cout << "all " << rep.rules.size() << " rules oriented\n";
  else
    std::cout << failed << " of " << rep.rules.size() << " rules not oriented\n";
  return rep.compatible ? kExitCompatible : kExitIncompatible;
}

struct SimulateArgs {
  std::string file;
  std::string term;
  std::string family;
  std::string range;
  std::string strategy = "innermost";
  std::string format = "text";
  long long step_cap = kDefaultStepCap;
  long long state_cap = kDefaultStateCap;
};

std::pair<int, int> parse_range(const std::string& text) {
  size_t dots = text.find("..");
  if (dots == std::string::npos)
    throw Error("range must look like a..b, got '" + text + "'");
  try {
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw Error("empty range '" + text + "'");
    return {lo, hi};
  } catch (const Error&) {
    throw;
  } catch (...) {
    throw Error("range must look like a..b, got '" + text + "'");
  }
}

int cmd_simulate(const SimulateArgs& a) {
  Trs trs = parse_trs_file(a.file);
  auto strat = strategy_from_name(a.strategy);
  if (!strat) throw Error("unknown strategy '" + a.strategy + "'");
  if (a.format != "text" && a.format != "csv")
    throw Error("unknown format '" + a.format + "' (expected text or csv)");

  if (!a.term.empty()) {
    TermPtr t = parse_term(a.term, trs.sig);
    HeightResult h = derivation_height(t, trs, *strat, a.step_cap, a.state_cap);
    if (a.format == "csv") {
      std::cout << "term,size,height,capped\n"
                << a.term << ',' << t->size() << ',' << h.height << ','
                << (h.capped ? 1 : 0) << "\n";
    } else {
      std::cout << "term: " << format_term(t, trs.sig) << "\n"
                << "strategy: " << strategy_name(*strat) << "\n"
                << "size: " << t->size() << "\n"
                << "height: " << h.height << (h.capped ? " (cap reached)" : "") << "\n";
    }
    return kExitCompatible;
  }

  auto [lo, hi] = parse_range(a.range);
  FamilyTemplate family{a.family};
  DerivationReport rep = growth_table(trs, family, lo, hi, *strat, a.step_cap, a.state_cap);
  if (a.format == "csv") {
    std::cout << growth_csv(rep);
    return kExitCompatible;
  }
  std::cout << "family: " << rep.family << "\n"
            << "strategy: " << strategy_name(rep.strategy) << "\n";
  std::cout << std::setw(6) << "n" << std::setw(10) << "size" << std::setw(12)
            << "height" << "\n";
  for (const GrowthRow& row : rep.rows)
    std::cout << std::setw(6) << row.n << std::setw(10) << row.size
              << std::setw(12) << row.height << (row.capped ? "  (cap reached)" : "")
              << "\n";
  GrowthClass cls = growth_classify(rep);
  switch (cls.kind) {
    case GrowthKind::PolynomialDegreeEstimate:
      std::cout << "growth: polynomial, estimated degree " << cls.degree
                << " (log-log residual " << cls.residual << ")\n";
      break;
    case GrowthKind::ExponentialSuspect:
      std::cout << "growth: exponential suspect\n";
      break;
    case GrowthKind::Inconclusive:
      std::cout << "growth: inconclusive\n";
      break;
  }
  return kExitCompatible;
}

struct EmbedArgs {
  std::string file;
  std::string cert;
  std::string start;
  long long max_steps = 10000;
};

int cmd_embed(const EmbedArgs& a) {
  Trs trs = parse_trs_file(a.file);
  Certificate cert = parse_cert_file(a.cert, trs.sig);
  if (!check_compat(trs, cert).compatible) {
    std::cout << "certificate does not orient the system (run `popcert verify` for details)\n";
    return kExitIncompatible;
  }
  TermPtr start = parse_term(a.start, trs.sig);
  EmbedReport rep = check_embedding(trs, cert, {start}, static_cast<size_t>(a.max_steps));
  std::cout << render_embed_report(rep, trs);
  return rep.violations == 0 ? kExitCompatible : kExitIncompatible;
}

struct DegreeArgs {
  int k = 0;
  int p = 0;
};

int cmd_degree(const DegreeArgs& a) {
  DegreeBound db = degree_bound(a.k, a.p);
  std::cout << "k = " << a.k << ", p = " << a.p << "\n"
            << "d = " << db.d << "\n"
            << "c = " << db.c << "\n";
  return kExitCompatible;
}

// Behaves like a standalone DIMACS solver so the dimacs:<command> bridge can
// be exercised without an external tool; uses the solver exit conventions.
int cmd_solve_dimacs(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read " + file);
  Cnf cnf = parse_dimacs(in);
  SolveResult r = solve_cnf(cnf);
  if (r.status == SolveStatus::Unsat) {
    std::cout << "s UNSATISFIABLE\n";
    return 20;
  }
  std::cout << "s SATISFIABLE\nv ";
  for (int v = 1; v <= cnf.num_vars; ++v) std::cout << (r.model[v] ? v : -v) << ' ';
  std::cout << "0\n";
  return 10;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial runtime certificates for constructor rewrite systems"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "synthesize a compatible order certificate");
  c->add_option("file", check.file, "rewrite system (.trs)")->required();
  c->add_option("--order", check.order,
                "comma-separated orders to try: pop*, pop*ps, mpo "
                "(default: pop* with pop*ps fallback)");
  c->add_option("--cert-out", check.cert_out, "write the first certificate found here");
  c->add_option("--cnf-out", check.cnf_out, "dump the CNF of the first attempt (DIMACS)");
  c->add_option("--solver", check.solver,
                "internal or dimacs:<command> (default: $POPCERT_SOLVER or internal)");
  c->add_option("--conflict-budget", check.budget,
                "give up after this many conflicts (internal solver only)");
  c->add_flag("--no-share", check.no_share, "encode without shared definition atoms");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check a certificate against a system");
  v->add_option("file", verify.file, "rewrite system (.trs)")->required();
  v->add_option("--cert", verify.cert, "certificate file")->required();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "measure derivation heights");
  s->add_option("file", sim.file, "rewrite system (.trs)")->required();
  auto* term_opt = s->add_option("--term", sim.term, "a single start term");
  auto* family_opt =
      s->add_option("--family", sim.family, "term scheme with a hole, e.g. plus(s^@n(0), 0)");
  s->add_option("--range", sim.range, "instantiate the family for n = a..b");
  s->add_option("--strategy", sim.strategy, "innermost, outermost, or any");
  s->add_option("--format", sim.format, "text or csv");
  s->add_option("--step-cap", sim.step_cap, "abort a derivation after this many steps");
  s->add_option("--state-cap", sim.state_cap, "abort after this many distinct terms");
  term_opt->excludes(family_opt);
  family_opt->needs(s->get_option("--range"));

  EmbedArgs embed;
  auto* e = app.add_subcommand("embed", "check the interpretation embedding along derivations");
  e->add_option("file", embed.file, "rewrite system (.trs)")->required();
  e->add_option("--cert", embed.cert, "certificate file")->required();
  e->add_option("--start", embed.start, "start term")->required();
  e->add_option("--max-steps", embed.max_steps, "stop after this many rewrite edges");

  DegreeArgs degree;
  auto* d = app.add_subcommand("degree", "print the bound constants for a budget");
  d->add_option("--k", degree.k, "width budget (max normal-argument count)")->required();
  d->add_option("--p", degree.p, "precedence depth (max defined rank)")->required();

  std::string dimacs_file;
  auto* sd = app.add_subcommand("solve-dimacs", "run the embedded solver on a DIMACS file");
  sd->group("");  // internal: used to test the external-solver bridge
  sd->add_option("file", dimacs_file, "CNF in DIMACS format")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c->parsed()) return cmd_check(check);
    if (v->parsed()) return cmd_verify(verify);
    if (s->parsed()) {
      if (sim.term.empty() && sim.family.empty())
        throw Error("simulate needs --term or --family with --range");
      return cmd_simulate(sim);
    }
    if (e->parsed()) return cmd_embed(embed);
    if (d->parsed()) return cmd_degree(degree);
    if (sd->parsed()) return cmd_solve_dimacs(dimacs_file);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
