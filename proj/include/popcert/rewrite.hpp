// popcert: rewriting strategies, one-step successors, and derivation-height analysis.
#pragma once

#include <optional>
#include <string_view>
#include <unordered_map>

#include <popcert/trs.hpp>

namespace popcert {

enum class Strategy { Innermost, Outermost, Unrestricted };

const char* strategy_name(Strategy strat);
std::optional<Strategy> strategy_from_name(std::string_view name);

using Binding = std::unordered_map<std::string, TermPtr>;

// Matches `pattern` against `subject`, extending `binding`; on failure the
// binding may be partially extended.
bool match(const TermPtr& pattern, const TermPtr& subject, Binding& binding);
TermPtr substitute(const TermPtr& t, const Binding& binding);

struct StepResult {
  std::vector<TermPtr> successors;  // deduplicated
  bool normal_form = false;         // no redex anywhere, regardless of strategy
};

StepResult successors(const TermPtr& t, const Trs& trs, Strategy strat);
bool is_normal_form(const TermPtr& t, const Trs& trs);

enum class CapKind { Steps, States };

struct HeightResult {
  long long height = 0;
  bool capped = false;
  CapKind cap = CapKind::Steps;
};

inline constexpr long long kDefaultStepCap = 1000000;
inline constexpr long long kDefaultStateCap = 100000;

// Length of a longest rewrite sequence from `t` under the strategy.  Requires
// termination on `t`; divergence or blow-up is reported through the caps.
HeightResult derivation_height(const TermPtr& t, const Trs& trs, Strategy strat,
                               long long step_cap = kDefaultStepCap,
                               long long state_cap = kDefaultStateCap);

struct GrowthRow {
  int n = 0;
  long long size = 0;
  long long height = 0;
  bool capped = false;
};

struct DerivationReport {
  std::string family;
  Strategy strategy = Strategy::Innermost;
  std::vector<GrowthRow> rows;
};

DerivationReport growth_table(const Trs& trs, const FamilyTemplate& family, int lo, int hi,
                              Strategy strat, long long step_cap = kDefaultStepCap,
                              long long state_cap = kDefaultStateCap);

std::string growth_csv(const DerivationReport& report);

enum class GrowthKind { PolynomialDegreeEstimate, ExponentialSuspect, Inconclusive };

struct GrowthClass {
  GrowthKind kind = GrowthKind::Inconclusive;
  double degree = 0.0;    // meaningful for PolynomialDegreeEstimate
  double residual = 0.0;  // RMS residual of the log-log fit
};

GrowthClass growth_classify(const DerivationReport& report);

}  // namespace popcert
