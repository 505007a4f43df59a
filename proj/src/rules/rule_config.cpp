#include <cmath>
#include <string>

#include "lns/errors.hpp"
#include "lns/lns_rule.hpp"
#include "lns/rules.hpp"

namespace lns {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::conjunctive: return "conjunctive";
    case Rule::dempster: return "dempster";
    case Rule::disjunctive: return "disjunctive";
    case Rule::dp: return "dp";
    case Rule::pcr6: return "pcr6";
    case Rule::cautious: return "cautious";
    case Rule::average: return "average";
    case Rule::lns: return "lns";
    case Rule::lnsa: return "lnsa";
  }
  return "?";
}

Rule parse_rule(std::string_view name) {
  for (Rule r : kAllRules)
    if (to_string(r) == name) return r;
  throw FusionError(ErrorKind::parameter, "unknown rule '" + std::string(name) + "'");
}

void RuleConfig::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw FusionError(ErrorKind::parameter, "eta must be a finite value >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw FusionError(ErrorKind::parameter, "lambda must be a finite value > 0");
  if (enumeration_guard < 1) throw FusionError(ErrorKind::parameter, "enumeration guard must be >= 1");
  if (global_rule == Rule::lns || global_rule == Rule::lnsa)
    throw FusionError(ErrorKind::parameter, "the global rule of lns cannot itself be lns or lnsa");
}

FusionResult combine(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  cfg.validate();
  switch (cfg.rule) {
    case Rule::conjunctive: return combine_conjunctive(ms, cfg);
    case Rule::dempster: return combine_dempster(ms, cfg);
    case Rule::disjunctive: return combine_disjunctive(ms, cfg);
    case Rule::dp: return combine_dp(ms, cfg);
    case Rule::pcr6: return combine_pcr6(ms, cfg);
    case Rule::cautious: return combine_cautious(ms, cfg);
    case Rule::average: return combine_average(ms, cfg);
    case Rule::lns: return combine_lns(ms, cfg);
    case Rule::lnsa: return combine_lnsa(ms, cfg);
  }
  throw FusionError(ErrorKind::parameter, "unknown rule");
}

}  // namespace lns
