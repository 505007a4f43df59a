#include "lns/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lns/errors.hpp"
#include "lns/transform.hpp"

namespace lns {

bool WeightVector::is_separable(double tolerance) const {
  return std::all_of(weights.begin(), weights.end(), [&](double w) { return w <= 1.0 + tolerance; });
}

namespace {

// A^w with w < 1 on a single proper focal set (or the vacuous bba): the
// decomposition is read off directly, which keeps the weight bit-exact.
bool simple_support_weights(const MassFunction& m, std::vector<double>& weights) {
  const Subset full = m.frame().full();
  Subset focal = full;
  for (Subset a = 0; a < full; ++a) {
    if (m[a] == 0.0) continue;
    if (focal != full) return false;
    focal = a;
  }
  if (focal != full) weights[focal] = m.ignorance();
  return true;
}

}  // namespace

WeightVector canonical_decompose(const MassFunction& m) {
  if (m.is_dogmatic())
    throw FusionError(ErrorKind::decomposition_undefined,
                      "canonical decomposition requires m(frame) > 0");
  const Frame& frame = m.frame();
  std::vector<double> weights(frame.powerset_size(), 1.0);
  if (simple_support_weights(m, weights)) return {frame, std::move(weights)};

  auto log_q = commonality(m);
  for (std::size_t x = 0; x < log_q.size(); ++x) {
    if (!(log_q[x] > 0.0))
      throw FusionError(ErrorKind::numeric_domain,
                        "commonality of " + frame.describe(static_cast<Subset>(x)) + " is not positive");
    log_q[x] = std::log(std::max(log_q[x], kCommonalityFloor));
  }
  // ln w_A = -sum_{X >= A} (-1)^{|X|-|A|} ln q(X), the Moebius inverse of ln q.
  fmt::superset_difference(log_q);
  for (std::size_t a = 0; a + 1 < log_q.size(); ++a) weights[a] = std::exp(-log_q[a]);
  weights.back() = 1.0;
  return {frame, std::move(weights)};
}

MassFunction recompose(const WeightVector& w) {
  const Frame& frame = w.frame;
  if (w.weights.size() != frame.powerset_size())
    throw FusionError(ErrorKind::encoding, "weight vector length does not match the frame");
  // q(X) = prod_{A not >= X} w_A, i.e. ln q(X) = total - sum_{A >= X} ln w_A.
  std::vector<double> log_w(w.weights.size());
  for (std::size_t a = 0; a < log_w.size(); ++a) {
    if (!(w.weights[a] > 0.0) || !std::isfinite(w.weights[a]))
      throw FusionError(ErrorKind::invalid_weights,
                        "weight of " + frame.describe(static_cast<Subset>(a)) + " must be positive");
    log_w[a] = a + 1 == log_w.size() ? 0.0 : std::log(w.weights[a]);
  }
  double total = 0.0;
  for (double v : log_w) total += v;
  fmt::superset_sum(log_w);
  std::vector<double> q(log_w.size());
  for (std::size_t x = 0; x < q.size(); ++x) q[x] = std::exp(total - log_w[x]);
  fmt::superset_difference(q);
  try {
    return MassFunction::from_computed(frame, std::move(q));
  } catch (const FusionError& e) {
    throw FusionError(ErrorKind::invalid_weights, std::string("weights do not recompose to a bba: ") + e.what());
  }
}

}  // namespace lns
