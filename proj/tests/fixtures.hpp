#pragma once

#include <vector>

#include "lns/mass.hpp"

namespace fixtures {

/// The six majority-opinion sources on a three-hypothesis frame: five weak
/// supports for theta1 and one strong support for theta2.
inline std::vector<lns::MassFunction> six_sources() {
  const lns::Frame frame = lns::Frame::with_size(3);
  const std::pair<lns::Subset, double> spec[] = {{1, 0.12}, {1, 0.16}, {1, 0.15},
                                                 {1, 0.11}, {1, 0.14}, {2, 0.95}};
  std::vector<lns::MassFunction> out;
  for (const auto& [focal, mass] : spec) {
    const std::pair<lns::Subset, double> focal_masses[] = {{focal, mass}, {frame.full(), 1.0 - mass}};
    out.push_back(lns::MassFunction::from_focal(frame, focal_masses));
  }
  return out;
}

inline lns::MassFunction mass(const lns::Frame& frame, std::vector<double> values) {
  return lns::MassFunction::from_values(frame, std::move(values));
}

}  // namespace fixtures
