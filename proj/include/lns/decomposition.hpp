#pragma once

#include <vector>

#include "lns/mass.hpp"

namespace lns {

/// Canonical-decomposition weights w_A, one per subset. The entry for the
/// whole frame is fixed at 1. Weights above 1 are inverse simple supports.
struct WeightVector {
  Frame frame;
  std::vector<double> weights;

  bool is_separable(double tolerance = 1e-9) const;
};

inline constexpr double kCommonalityFloor = 1e-300;

WeightVector canonical_decompose(const MassFunction& m);

/// Conjunctive combination of the generalized simple supports A^{w_A}.
MassFunction recompose(const WeightVector& w);

}  // namespace lns
