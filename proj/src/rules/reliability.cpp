#include "lns/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lns/errors.hpp"

namespace lns {

double jousselme_distance(const MassFunction& a, const MassFunction& b) {
  require_same_frame(a.frame(), b.frame());
  std::vector<std::pair<Subset, double>> diff;
  for (Subset s = 0; s <= a.frame().full(); ++s)
    if (const double d = a[s] - b[s]; d != 0.0) diff.emplace_back(s, d);
  double quad = 0.0;
  for (const auto& [x, dx] : diff)
    for (const auto& [y, dy] : diff) {
      const int uni = cardinality(x | y);
      const double jaccard = uni == 0 ? 1.0 : static_cast<double>(cardinality(x & y)) / uni;
      quad += dx * dy * jaccard;
    }
  return std::sqrt(std::max(0.0, 0.5 * quad));
}

double conflict_degree(std::span<const MassFunction> ms, std::size_t j) {
  if (ms.size() < 2) throw FusionError(ErrorKind::parameter, "conflict degree needs at least two sources");
  double total = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (i != j) total += jousselme_distance(ms[j], ms[i]);
  return total / static_cast<double>(ms.size() - 1);
}

double reliability_from_conflict(double conf, double lambda) {
  if (!(lambda > 0.0)) throw FusionError(ErrorKind::parameter, "lambda must be > 0");
  if (!(conf >= 0.0 && conf <= 1.0))
    throw FusionError(ErrorKind::parameter, "conflict degree must lie in [0, 1]");
  return std::pow(1.0 - std::pow(conf, lambda), 1.0 / lambda);
}

std::vector<double> martin_reliability(std::span<const MassFunction> ms, double lambda) {
  if (ms.size() < 2)
    throw FusionError(ErrorKind::parameter, "reliability estimation needs at least two sources");
  if (!(lambda > 0.0)) throw FusionError(ErrorKind::parameter, "lambda must be > 0");
  common_frame(ms);
  std::vector<double> alpha(ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j)
    alpha[j] = reliability_from_conflict(std::min(1.0, conflict_degree(ms, j)), lambda);
  return alpha;
}

}  // namespace lns
