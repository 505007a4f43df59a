#pragma once

#include <span>
#include <vector>

#include "lns/rules.hpp"

namespace lns {

/// Wall-clock seconds spent in each LNS step.
struct LnsStepTimings {
  double decompose = 0.0;
  double inner_combine = 0.0;
  double discount = 0.0;
  double global_combine = 0.0;
};

/// Splits separable bbas into their simple support components. Components
/// with weight 1 are dropped; a component above 1 + 1e-9 is a not-separable
/// error naming the subset.
std::vector<SimpleSupport> to_simple_supports(std::span<const MassFunction> ms,
                                              const RuleConfig& cfg = {});

struct GroupingOptions {
  double eta = 1.0;
  bool count_vacuous_in_denominator = false;
  /// Off for the approximate rule, which never looks at the weights.
  bool inner_products = true;
  bool deterministic = true;
};

/// Groups by focal set, multiplies weights inside each group and assigns
/// the precision-weighted proportional discount factors
///   alpha_k = beta_k^eta s_k / sum_i beta_i^eta s_i,  beta_k = n / |A_k|.
/// Vacuous supports form the group keyed by the whole frame; it comes last
/// and always gets alpha = 0. Groups are listed in natural order.
std::vector<GroupSummary> lns_group(std::span<const SimpleSupport> ssfs,
                                    const GroupingOptions& options = {});

FusionResult combine_lns(std::span<const SimpleSupport> ssfs, const RuleConfig& cfg = {},
                         LnsStepTimings* timings = nullptr);
FusionResult combine_lns(std::span<const MassFunction> ms, const RuleConfig& cfg = {},
                         LnsStepTimings* timings = nullptr);

FusionResult combine_lnsa(std::span<const SimpleSupport> ssfs, const RuleConfig& cfg = {},
                          LnsStepTimings* timings = nullptr);
FusionResult combine_lnsa(std::span<const MassFunction> ms, const RuleConfig& cfg = {},
                          LnsStepTimings* timings = nullptr);

/// Combines the discounted group supports with cfg.global_rule.
FusionResult combine_groups(const Frame& frame, std::vector<GroupSummary> groups,
                            const RuleConfig& cfg);

}  // namespace lns
