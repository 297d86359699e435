// popcert: CDCL solver — two watched literals, first-UIP learning, lowest
// index branching.
#include <popcert/solver.hpp>

#include <algorithm>
#include <cstdlib>

#include <popcert/error.hpp>

namespace popcert {

namespace {

struct Cdcl {
  int nvars;
  std::vector<Clause> clauses;  // originals first, then learnt
  size_t num_original = 0;
  struct Watch {
    int clause;
    Lit blocker;
  };
  std::vector<std::vector<Watch>> watches;  // indexed by literal code
  std::vector<int8_t> assign;               // 0 unset, 1 true, -1 false
  std::vector<int> level;
  std::vector<int> reason;  // clause index or -1
  std::vector<Lit> trail;
  std::vector<size_t> trail_lim;
  size_t qhead = 0;
  std::vector<uint8_t> seen;
  SolveResult stats;

  explicit Cdcl(int n) : nvars(n) {
    watches.resize(2 * static_cast<size_t>(n) + 2);
    assign.assign(static_cast<size_t>(n) + 1, 0);
    level.assign(static_cast<size_t>(n) + 1, 0);
    reason.assign(static_cast<size_t>(n) + 1, -1);
    seen.assign(static_cast<size_t>(n) + 1, 0);
  }

  static size_t code(Lit l) {
    return 2 * static_cast<size_t>(std::abs(l)) + (l < 0 ? 1 : 0);
  }
  int8_t value(Lit l) const {
    int8_t v = assign[static_cast<size_t>(std::abs(l))];
    return l > 0 ? v : static_cast<int8_t>(-v);
  }
  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  void enqueue(Lit l, int why) {
    const size_t v = static_cast<size_t>(std::abs(l));
    assign[v] = l > 0 ? 1 : -1;
    level[v] = decision_level();
    reason[v] = why;
    trail.push_back(l);
  }

  void attach(int ci) {
    const Clause& c = clauses[static_cast<size_t>(ci)];
    watches[code(c[0])].push_back({ci, c[1]});
    watches[code(c[1])].push_back({ci, c[0]});
  }

  // Returns the index of a conflicting clause, or -1.
  int propagate() {
    while (qhead < trail.size()) {
      const Lit p = trail[qhead++];
      ++stats.propagations;
      auto& ws = watches[code(-p)];
      size_t i = 0, j = 0;
      int confl = -1;
      while (i < ws.size()) {
        const Watch w = ws[i];
        if (value(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        Clause& c = clauses[static_cast<size_t>(w.clause)];
        if (c[0] == -p) std::swap(c[0], c[1]);
        if (value(c[0]) == 1) {
          ws[j++] = {w.clause, c[0]};
          ++i;
          continue;
        }
        bool moved = false;
        for (size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != -1) {
            std::swap(c[1], c[k]);
            watches[code(c[1])].push_back({w.clause, c[0]});
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        ws[j++] = {w.clause, c[0]};
        ++i;
        if (value(c[0]) == -1) {
          confl = w.clause;
          qhead = trail.size();
          break;
        }
        enqueue(c[0], w.clause);
      }
      while (i < ws.size()) ws[j++] = ws[i++];
      ws.resize(j);
      if (confl >= 0) return confl;
    }
    return -1;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (size_t k = trail.size(); k > trail_lim[static_cast<size_t>(lvl)];
         --k) {
      const size_t v = static_cast<size_t>(std::abs(trail[k - 1]));
      assign[v] = 0;
      reason[v] = -1;
    }
    trail.resize(trail_lim[static_cast<size_t>(lvl)]);
    trail_lim.resize(static_cast<size_t>(lvl));
    qhead = trail.size();
  }

  Clause analyze(int confl, int& out_level) {
    Clause learnt{0};
    int pathc = 0;
    Lit p = 0;
    size_t idx = trail.size();
    do {
      const Clause& c = clauses[static_cast<size_t>(confl)];
      for (Lit q : c) {
        if (q == p) continue;
        const size_t v = static_cast<size_t>(std::abs(q));
        if (seen[v] || level[v] == 0) continue;
        seen[v] = 1;
        if (level[v] >= decision_level())
          ++pathc;
        else
          learnt.push_back(q);
      }
      while (!seen[static_cast<size_t>(std::abs(trail[idx - 1]))]) --idx;
      p = trail[idx - 1];
      --idx;
      confl = reason[static_cast<size_t>(std::abs(p))];
      seen[static_cast<size_t>(std::abs(p))] = 0;
      --pathc;
    } while (pathc > 0);
    learnt[0] = -p;

    out_level = 0;
    if (learnt.size() > 1) {
      size_t best = 1;
      for (size_t k = 2; k < learnt.size(); ++k)
        if (level[static_cast<size_t>(std::abs(learnt[k]))] >
            level[static_cast<size_t>(std::abs(learnt[best]))])
          best = k;
      std::swap(learnt[1], learnt[best]);
      out_level = level[static_cast<size_t>(std::abs(learnt[1]))];
    }
    for (size_t k = 1; k < learnt.size(); ++k)
      seen[static_cast<size_t>(std::abs(learnt[k]))] = 0;
    return learnt;
  }

  SolveStatus search(long long budget) {
    while (true) {
      const int confl = propagate();
      if (confl >= 0) {
        ++stats.conflicts;
        if (decision_level() == 0) return SolveStatus::Unsat;
        if (budget >= 0 && stats.conflicts > budget)
          return SolveStatus::Unknown;
        int back_level = 0;
        Clause learnt = analyze(confl, back_level);
        cancel_until(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          clauses.push_back(learnt);
          const int ci = static_cast<int>(clauses.size() - 1);
          attach(ci);
          enqueue(learnt[0], ci);
        }
        continue;
      }
      int var = 0;
      for (int v = 1; v <= nvars; ++v)
        if (assign[static_cast<size_t>(v)] == 0) {
          var = v;
          break;
        }
      if (var == 0) return SolveStatus::Sat;
      ++stats.decisions;
      trail_lim.push_back(trail.size());
      enqueue(-var, -1);
    }
  }
};

}  // namespace

SolveResult solve_cnf(const Cnf& cnf, long long conflict_budget) {
  Cdcl s(cnf.num_vars);

  for (const Clause& orig : cnf.clauses) {
    Clause c = orig;
    std::sort(c.begin(), c.end(),
              [](Lit a, Lit b) { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b); });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    bool taut = false;
    for (size_t k = 0; k + 1 < c.size(); ++k)
      if (c[k] == -c[k + 1]) {
        taut = true;
        break;
      }
    if (taut) continue;
    for (Lit l : c)
      if (std::abs(l) > cnf.num_vars)
        throw Error("solver: literal outside the declared variable range");
    if (c.empty()) {
      s.stats.status = SolveStatus::Unsat;
      return s.stats;
    }
    if (c.size() == 1) {
      if (s.value(c[0]) == -1) {
        s.stats.status = SolveStatus::Unsat;
        return s.stats;
      }
      if (s.value(c[0]) == 0) s.enqueue(c[0], -1);
      continue;
    }
    s.clauses.push_back(std::move(c));
    s.attach(static_cast<int>(s.clauses.size() - 1));
  }
  s.num_original = s.clauses.size();

  s.stats.status = s.search(conflict_budget);
  if (s.stats.status == SolveStatus::Sat) {
    s.stats.model.assign(static_cast<size_t>(cnf.num_vars) + 1, false);
    for (int v = 1; v <= cnf.num_vars; ++v)
      s.stats.model[static_cast<size_t>(v)] =
          s.assign[static_cast<size_t>(v)] == 1;
    for (const Clause& c : cnf.clauses) {
      bool ok = false;
      for (Lit l : c)
        if ((l > 0) ==
            s.stats.model[static_cast<size_t>(std::abs(l))]) {
          ok = true;
          break;
        }
      if (!ok) throw Error("solver: produced model fails an input clause");
    }
  }
  return s.stats;
}

}  // namespace popcert
