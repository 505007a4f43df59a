#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lns/mass.hpp"

namespace lns::detail {

/// Conjunctive combination of simple supports given as (focal, weight)
/// pairs with weights in [0, 1], computed through the commonality product.
MassFunction conjunctive_of_supports(const Frame& frame,
                                     std::span<const std::pair<Subset, double>> supports);

}  // namespace lns::detail
