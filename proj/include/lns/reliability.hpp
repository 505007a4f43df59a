#pragma once

#include <span>
#include <vector>

#include "lns/mass.hpp"

namespace lns {

/// Evidential distance sqrt(1/2 (m1-m2)' D (m1-m2)) with the Jaccard
/// matrix D(A,B) = |A n B| / |A u B| and D(empty, empty) = 1.
double jousselme_distance(const MassFunction& a, const MassFunction& b);

/// Mean distance from source j to every other source.
double conflict_degree(std::span<const MassFunction> ms, std::size_t j);

/// alpha = (1 - conf^lambda)^(1/lambda).
double reliability_from_conflict(double conf, double lambda);

/// Conflict-based reliability factor of every source.
std::vector<double> martin_reliability(std::span<const MassFunction> ms, double lambda);

}  // namespace lns
