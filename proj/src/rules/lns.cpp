#include <chrono>
#include <cmath>
#include <string>

#include "lns/decomposition.hpp"
#include "lns/errors.hpp"
#include "lns/lns_rule.hpp"
#include "parallel.hpp"
#include "supports.hpp"

namespace lns {

namespace {

constexpr double kUnitWeightTolerance = 1e-9;

class StepClock {
 public:
  explicit StepClock(double* sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~StepClock() {
    if (sink_)
      *sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  StepClock(const StepClock&) = delete;
  StepClock& operator=(const StepClock&) = delete;

 private:
  double* sink_;
  std::chrono::steady_clock::time_point start_;
};

double* field(LnsStepTimings* t, double LnsStepTimings::*member) {
  return t ? &(t->*member) : nullptr;
}

// Focal set and weight when the bba is a simple support (including the
// categorical and vacuous cases), nothing otherwise.
std::optional<SimpleSupport> as_simple_support(const MassFunction& m) {
  const Subset full = m.frame().full();
  Subset focal = full;
  for (Subset a = 0; a < full; ++a) {
    if (m[a] == 0.0) continue;
    if (focal != full) return std::nullopt;
    focal = a;
  }
  return SimpleSupport(m.frame(), focal, focal == full ? 1.0 : m.ignorance());
}

void append_components(const MassFunction& m, std::vector<SimpleSupport>& out) {
  if (auto ssf = as_simple_support(m)) {
    out.push_back(*ssf);
    return;
  }
  const auto w = canonical_decompose(m);
  const Frame& frame = m.frame();
  for (Subset a = 0; a < frame.full(); ++a) {
    const double weight = w.weights[a];
    if (weight > 1.0 + kUnitWeightTolerance)
      throw FusionError(ErrorKind::not_separable,
                        "bba is not separable: component " + frame.describe(a) + " has weight " +
                            std::to_string(weight) + " > 1");
    if (weight >= 1.0 - kUnitWeightTolerance) continue;
    out.emplace_back(frame, a, weight);
  }
}

std::vector<std::pair<Subset, double>> discounted_supports(const Frame& frame,
                                                           const std::vector<GroupSummary>& groups) {
  std::vector<std::pair<Subset, double>> supports;
  supports.reserve(groups.size());
  for (const auto& g : groups) {
    if (g.focal == frame.full()) continue;
    supports.emplace_back(g.focal, 1.0 - g.alpha + g.alpha * g.inner_weight);
  }
  return supports;
}

FusionResult global_combination(const Frame& frame,
                                 std::span<const std::pair<Subset, double>> supports,
                                 const RuleConfig& cfg) {
  if (cfg.global_rule == Rule::conjunctive) {
    auto m = detail::conjunctive_of_supports(frame, supports);
    const double kappa = m.conflict();
    return {std::move(m), kappa, {}};
  }
  std::vector<MassFunction> ms;
  ms.reserve(supports.size());
  for (const auto& [focal, w] : supports) ms.push_back(SimpleSupport(frame, focal, w).to_mass());
  if (ms.empty()) ms.push_back(MassFunction::vacuous(frame));
  RuleConfig inner = cfg;
  inner.rule = cfg.global_rule;
  return combine(ms, inner);
}

FusionResult run_lns(std::span<const SimpleSupport> ssfs, const RuleConfig& cfg, bool approximate,
                     LnsStepTimings* timings) {
  cfg.validate();
  if (ssfs.empty()) throw FusionError(ErrorKind::parameter, "cannot combine an empty list of bbas");
  const Frame frame = ssfs.front().frame();
  std::vector<GroupSummary> groups;
  {
    StepClock clock(field(timings, &LnsStepTimings::inner_combine));
    groups = lns_group(ssfs, {cfg.eta, cfg.count_vacuous_in_denominator, !approximate,
                              cfg.deterministic});
  }
  std::vector<std::pair<Subset, double>> supports;
  {
    StepClock clock(field(timings, &LnsStepTimings::discount));
    supports = discounted_supports(frame, groups);
  }
  FusionResult result = [&] {
    StepClock clock(field(timings, &LnsStepTimings::global_combine));
    return global_combination(frame, supports, cfg);
  }();
  result.groups = std::move(groups);
  return result;
}

FusionResult run_lns(std::span<const MassFunction> ms, const RuleConfig& cfg, bool approximate,
                     LnsStepTimings* timings) {
  common_frame(ms);
  std::vector<SimpleSupport> ssfs;
  {
    StepClock clock(field(timings, &LnsStepTimings::decompose));
    ssfs = to_simple_supports(ms, cfg);
  }
  return run_lns(ssfs, cfg, approximate, timings);
}

}  // namespace

std::vector<SimpleSupport> to_simple_supports(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  const unsigned chunks = detail::chunk_count(ms.size(), cfg.deterministic);
  std::vector<std::vector<SimpleSupport>> partial(chunks);
  detail::for_chunks(ms.size(), chunks, [&](unsigned c, std::size_t begin, std::size_t end) {
    auto& out = partial[c];
    out.reserve(end - begin);
    for (std::size_t j = begin; j < end; ++j) append_components(ms[j], out);
  });
  if (chunks == 1) return std::move(partial[0]);
  std::vector<SimpleSupport> all;
  for (auto& p : partial) all.insert(all.end(), p.begin(), p.end());
  return all;
}

std::vector<GroupSummary> lns_group(std::span<const SimpleSupport> ssfs, const GroupingOptions& options) {
  if (ssfs.empty()) throw FusionError(ErrorKind::parameter, "cannot group an empty list of supports");
  if (!(options.eta >= 0.0)) throw FusionError(ErrorKind::parameter, "eta must be >= 0");
  const Frame& frame = ssfs.front().frame();
  const Subset full = frame.full();
  const std::size_t width = frame.powerset_size();

  const unsigned chunks = detail::chunk_count(ssfs.size(), options.deterministic);
  std::vector<std::vector<std::size_t>> counts(chunks, std::vector<std::size_t>(width, 0));
  std::vector<std::vector<double>> products(chunks, std::vector<double>(width, 1.0));
  detail::for_chunks(ssfs.size(), chunks, [&](unsigned c, std::size_t begin, std::size_t end) {
    auto& count = counts[c];
    auto& product = products[c];
    for (std::size_t j = begin; j < end; ++j) {
      const SimpleSupport& s = ssfs[j];
      require_same_frame(frame, s.frame());
      const Subset key = s.is_vacuous() ? full : s.focal();
      ++count[key];
      if (options.inner_products && key != full) product[key] *= s.weight();
    }
  });
  for (unsigned c = 1; c < chunks; ++c)
    for (std::size_t a = 0; a < width; ++a) {
      counts[0][a] += counts[c][a];
      products[0][a] *= products[c][a];
    }
  const auto& count = counts[0];
  const auto& product = products[0];

  auto precision = [&](Subset a) {
    if (options.eta == 0.0) return 1.0;
    if (a == 0)
      throw FusionError(ErrorKind::parameter,
                        "a group focused on the empty set has no precision weight; use eta = 0");
    return std::pow(static_cast<double>(frame.size()) / cardinality(a), options.eta);
  };

  double denominator = 0.0;
  for (Subset a = 0; a < full; ++a)
    if (count[a] > 0) denominator += precision(a) * static_cast<double>(count[a]);
  if (options.count_vacuous_in_denominator) denominator += static_cast<double>(count[full]);

  std::vector<GroupSummary> groups;
  for (Subset a = 0; a <= full; ++a) {
    if (count[a] == 0) continue;
    if (a == full) {
      groups.push_back({a, count[a], 1.0, 0.0});
      continue;
    }
    const double alpha = precision(a) * static_cast<double>(count[a]) / denominator;
    groups.push_back({a, count[a], options.inner_products ? product[a] : 0.0, alpha});
  }
  return groups;
}

FusionResult combine_groups(const Frame& frame, std::vector<GroupSummary> groups, const RuleConfig& cfg) {
  cfg.validate();
  const auto supports = discounted_supports(frame, groups);
  auto result = global_combination(frame, supports, cfg);
  result.groups = std::move(groups);
  return result;
}

FusionResult combine_lns(std::span<const SimpleSupport> ssfs, const RuleConfig& cfg,
                         LnsStepTimings* timings) {
  return run_lns(ssfs, cfg, false, timings);
}

FusionResult combine_lns(std::span<const MassFunction> ms, const RuleConfig& cfg,
                         LnsStepTimings* timings) {
  return run_lns(ms, cfg, false, timings);
}

FusionResult combine_lnsa(std::span<const SimpleSupport> ssfs, const RuleConfig& cfg,
                          LnsStepTimings* timings) {
  return run_lns(ssfs, cfg, true, timings);
}

FusionResult combine_lnsa(std::span<const MassFunction> ms, const RuleConfig& cfg,
                          LnsStepTimings* timings) {
  return run_lns(ms, cfg, true, timings);
}

}  // namespace lns
