#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lns/decomposition.hpp"
#include "lns/errors.hpp"
#include "lns/rules.hpp"
#include "lns/transform.hpp"
#include "parallel.hpp"
#include "supports.hpp"

namespace lns {

namespace {

void require_non_empty(std::span<const MassFunction> ms) {
  if (ms.empty()) throw FusionError(ErrorKind::parameter, "cannot combine an empty list of bbas");
}

// Pointwise product of per-source images (commonality or implicability).
template <class Transform>
std::vector<double> product_of_images(std::span<const MassFunction> ms, bool deterministic,
                                      Transform&& image) {
  const std::size_t width = ms.front().size();
  const unsigned chunks = detail::chunk_count(ms.size(), deterministic);
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(width, 1.0));
  detail::for_chunks(ms.size(), chunks, [&](unsigned c, std::size_t begin, std::size_t end) {
    auto& acc = partial[c];
    std::vector<double> scratch(width);
    for (std::size_t j = begin; j < end; ++j) {
      std::copy(ms[j].values().begin(), ms[j].values().end(), scratch.begin());
      image(std::span<double>(scratch));
      for (std::size_t a = 0; a < width; ++a) acc[a] *= scratch[a];
    }
  });
  for (unsigned c = 1; c < chunks; ++c)
    for (std::size_t a = 0; a < width; ++a) partial[0][a] *= partial[c][a];
  return std::move(partial[0]);
}

FusionResult wrap(MassFunction m) {
  const double kappa = m.conflict();
  return {std::move(m), kappa, {}};
}

}  // namespace

namespace detail {

MassFunction conjunctive_of_supports(const Frame& frame,
                                     std::span<const std::pair<Subset, double>> supports) {
  const std::size_t width = frame.powerset_size();
  std::vector<double> q(width, 1.0);
  if (supports.size() <= static_cast<std::size_t>(frame.size())) {
    for (const auto& [focal, w] : supports)
      for (std::size_t x = 0; x < width; ++x)
        if (x & ~static_cast<std::size_t>(focal)) q[x] *= w;
  } else {
    // q(X) = prod_{A not >= X} w_A, split into a zero count and a log sum so
    // that fully committed supports (w = 0) stay exact.
    std::vector<double> zeros(width, 0.0);
    std::vector<double> logs(width, 0.0);
    for (const auto& [focal, w] : supports) {
      if (w == 0.0) zeros[focal] += 1.0;
      else logs[focal] += std::log(w);
    }
    double zero_total = 0.0;
    double log_total = 0.0;
    for (std::size_t a = 0; a < width; ++a) {
      zero_total += zeros[a];
      log_total += logs[a];
    }
    fmt::superset_sum(zeros);
    fmt::superset_sum(logs);
    for (std::size_t x = 0; x < width; ++x)
      q[x] = zero_total - zeros[x] > 0.5 ? 0.0 : std::exp(log_total - logs[x]);
  }
  fmt::superset_difference(q);
  return MassFunction::from_computed(frame, std::move(q));
}

}  // namespace detail

MassFunction normalize_conflict(const MassFunction& conjunctive) {
  const double kappa = conjunctive.conflict();
  if (kappa >= 1.0 - kSaturationGap)
    throw FusionError(ErrorKind::total_conflict,
                      "total conflict: kappa = " + std::to_string(kappa) +
                          " leaves nothing to normalize (consider the lns rule)");
  std::vector<double> values(conjunctive.values().begin(), conjunctive.values().end());
  const double scale = 1.0 / (1.0 - kappa);
  for (auto& v : values) v *= scale;
  values.front() = 0.0;
  return MassFunction::from_computed(conjunctive.frame(), std::move(values));
}

FusionResult combine_conjunctive(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  require_non_empty(ms);
  const Frame& frame = common_frame(ms);
  auto q = product_of_images(ms, cfg.deterministic, fmt::superset_sum);
  return wrap(from_commonality(frame, std::move(q)));
}

FusionResult combine_dempster(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  auto conj = combine_conjunctive(ms, cfg);
  return {normalize_conflict(conj.mass), 0.0, {}};
}

FusionResult combine_disjunctive(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  require_non_empty(ms);
  const Frame& frame = common_frame(ms);
  auto b = product_of_images(ms, cfg.deterministic, fmt::subset_sum);
  return wrap(from_implicability(frame, std::move(b)));
}

FusionResult combine_cautious(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  require_non_empty(ms);
  const Frame& frame = common_frame(ms);
  const std::size_t width = frame.powerset_size();
  const unsigned chunks = detail::chunk_count(ms.size(), cfg.deterministic);
  std::vector<std::vector<double>> partial(
      chunks, std::vector<double>(width, std::numeric_limits<double>::infinity()));
  detail::for_chunks(ms.size(), chunks, [&](unsigned c, std::size_t begin, std::size_t end) {
    auto& acc = partial[c];
    for (std::size_t j = begin; j < end; ++j) {
      const auto w = canonical_decompose(ms[j]);
      for (std::size_t a = 0; a < width; ++a) acc[a] = std::min(acc[a], w.weights[a]);
    }
  });
  for (unsigned c = 1; c < chunks; ++c)
    for (std::size_t a = 0; a < width; ++a) partial[0][a] = std::min(partial[0][a], partial[c][a]);
  if (ms.size() == 1) return wrap(ms.front());
  return wrap(recompose({frame, std::move(partial[0])}));
}

FusionResult combine_average(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  require_non_empty(ms);
  const Frame& frame = common_frame(ms);
  const std::size_t width = frame.powerset_size();
  const unsigned chunks = detail::chunk_count(ms.size(), cfg.deterministic);
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(width, 0.0));
  detail::for_chunks(ms.size(), chunks, [&](unsigned c, std::size_t begin, std::size_t end) {
    auto& acc = partial[c];
    for (std::size_t j = begin; j < end; ++j)
      for (std::size_t a = 0; a < width; ++a) acc[a] += ms[j][static_cast<Subset>(a)];
  });
  for (unsigned c = 1; c < chunks; ++c)
    for (std::size_t a = 0; a < width; ++a) partial[0][a] += partial[c][a];
  const double scale = 1.0 / static_cast<double>(ms.size());
  for (auto& v : partial[0]) v *= scale;
  return wrap(MassFunction::from_computed(frame, std::move(partial[0])));
}

}  // namespace lns
