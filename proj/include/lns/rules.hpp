#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lns/mass.hpp"

namespace lns {

enum class Rule { conjunctive, dempster, disjunctive, dp, pcr6, cautious, average, lns, lnsa };

std::string_view to_string(Rule rule);
Rule parse_rule(std::string_view name);
inline constexpr Rule kAllRules[] = {Rule::conjunctive, Rule::dempster, Rule::disjunctive,
                                     Rule::dp,          Rule::pcr6,     Rule::cautious,
                                     Rule::average,     Rule::lns,      Rule::lnsa};

struct RuleConfig {
  Rule rule = Rule::conjunctive;
  /// Precision exponent of the LNS discount factor; 0 gives the plain proportion.
  double eta = 1.0;
  /// Rule applied to the discounted group supports in the last LNS step.
  Rule global_rule = Rule::conjunctive;
  /// Exponent of the conflict-based reliability estimator.
  double lambda = 1.0;
  /// Largest admissible product of focal-set counts for DP and PCR6.
  std::uint64_t enumeration_guard = 10'000'000;
  /// Count vacuous sources in the LNS discount denominator.
  bool count_vacuous_in_denominator = false;
  /// Sequential left folds only; parallel reductions otherwise.
  bool deterministic = false;

  void validate() const;
};

/// One LNS group: all simple supports sharing focal set `focal`.
struct GroupSummary {
  Subset focal;
  std::size_t count;
  double inner_weight;
  double alpha;
};

struct FusionResult {
  MassFunction mass;
  double conflict;
  std::vector<GroupSummary> groups;
};

FusionResult combine_conjunctive(std::span<const MassFunction> ms, const RuleConfig& cfg = {});
FusionResult combine_dempster(std::span<const MassFunction> ms, const RuleConfig& cfg = {});
FusionResult combine_disjunctive(std::span<const MassFunction> ms, const RuleConfig& cfg = {});
FusionResult combine_dp(std::span<const MassFunction> ms, const RuleConfig& cfg = {});
FusionResult combine_pcr6(std::span<const MassFunction> ms, const RuleConfig& cfg = {});
FusionResult combine_cautious(std::span<const MassFunction> ms, const RuleConfig& cfg = {});
FusionResult combine_average(std::span<const MassFunction> ms, const RuleConfig& cfg = {});

/// Dispatches on cfg.rule.
FusionResult combine(std::span<const MassFunction> ms, const RuleConfig& cfg);

/// Normalizes a conjunctive result; throws total_conflict when kappa is
/// within 1e-12 of 1.
MassFunction normalize_conflict(const MassFunction& conjunctive);

inline constexpr double kSaturationGap = 1e-12;

}  // namespace lns
