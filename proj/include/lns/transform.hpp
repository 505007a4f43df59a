#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "lns/mass.hpp"

namespace lns {

enum class Representation { belief, plausibility, commonality, implicability, pignistic };

std::string_view to_string(Representation kind);
Representation parse_representation(std::string_view name);

/// Bel, Pl, q or b (length 2^n) or BetP (length n).
struct RepresentationVector {
  Frame frame;
  Representation kind;
  std::vector<double> values;
};

// In-place fast Moebius/zeta passes over a natural-order vector of length
// 2^n, one sweep per frame element.
namespace fmt {
void superset_sum(std::span<double> v);         // m -> q
void superset_difference(std::span<double> v);  // q -> m
void subset_sum(std::span<double> v);           // m -> b
void subset_difference(std::span<double> v);    // b -> m
}  // namespace fmt

std::vector<double> commonality(const MassFunction& m);
std::vector<double> implicability(const MassFunction& m);

MassFunction from_commonality(const Frame& frame, std::vector<double> q);
MassFunction from_implicability(const Frame& frame, std::vector<double> b);

RepresentationVector transform(const MassFunction& m, Representation kind);
/// Inverse direction; pignistic vectors cannot be inverted.
MassFunction to_mass(const RepresentationVector& r);

RepresentationVector pignistic(const MassFunction& m);

}  // namespace lns
