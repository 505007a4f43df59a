#include "lns/mass.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lns/errors.hpp"

namespace lns {

namespace {

constexpr double kNegativeNoise = 1e-9;

void require_length(const Frame& frame, std::size_t length) {
  if (length != frame.powerset_size())
    throw FusionError(ErrorKind::encoding, "expected " + std::to_string(frame.powerset_size()) +
                                               " values for a frame of size " +
                                               std::to_string(frame.size()) + ", got " +
                                               std::to_string(length));
}

}  // namespace

MassFunction MassFunction::from_values(Frame frame, std::vector<double> values, double tolerance) {
  require_length(frame, values.size());
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0)
      throw FusionError(ErrorKind::invalid_mass,
                        "mass of subset " + frame.describe(static_cast<Subset>(i)) +
                            " is not a non-negative number");
    total += values[i];
  }
  if (std::abs(total - 1.0) > tolerance)
    throw FusionError(ErrorKind::invalid_mass, "masses sum to " + std::to_string(total) + ", not 1");
  if (total != 1.0)
    for (auto& v : values) v /= total;
  return MassFunction(std::move(frame), std::move(values));
}

MassFunction MassFunction::from_focal(Frame frame, std::span<const std::pair<Subset, double>> focal,
                                      double tolerance) {
  std::vector<double> values(frame.powerset_size(), 0.0);
  for (const auto& [s, v] : focal) {
    frame.check(s);
    values[s] += v;
  }
  return from_values(std::move(frame), std::move(values), tolerance);
}

MassFunction MassFunction::vacuous(Frame frame) {
  std::vector<double> values(frame.powerset_size(), 0.0);
  values.back() = 1.0;
  return MassFunction(std::move(frame), std::move(values));
}

MassFunction MassFunction::categorical(Frame frame, Subset focal) {
  frame.check(focal);
  std::vector<double> values(frame.powerset_size(), 0.0);
  values[focal] = 1.0;
  return MassFunction(std::move(frame), std::move(values));
}

MassFunction MassFunction::from_computed(Frame frame, std::vector<double> values) {
  require_length(frame, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= 0.0) continue;
    if (values[i] < -kNegativeNoise || std::isnan(values[i]))
      throw FusionError(ErrorKind::not_valid_image,
                        "computed mass of " + frame.describe(static_cast<Subset>(i)) + " is " +
                            std::to_string(values[i]));
    values[i] = 0.0;
  }
  return MassFunction(std::move(frame), std::move(values));
}

bool MassFunction::is_categorical() const noexcept {
  int ones = 0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
    if (values_[i] == 1.0) ++ones;
    else if (values_[i] != 0.0) return false;
  }
  return ones == 1;
}

std::vector<Subset> MassFunction::focal_elements() const {
  std::vector<Subset> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > 0.0) out.push_back(static_cast<Subset>(i));
  return out;
}

double MassFunction::sum() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

SimpleSupport::SimpleSupport(Frame frame, Subset focal, double weight)
    : frame_(std::move(frame)), focal_(focal), weight_(weight) {
  frame_.check(focal_);
  if (!(weight_ >= 0.0 && weight_ <= 1.0))
    throw FusionError(ErrorKind::parameter,
                      "simple support weight must lie in [0, 1], got " + std::to_string(weight_));
}

MassFunction SimpleSupport::to_mass() const {
  std::vector<double> values(frame_.powerset_size(), 0.0);
  values[focal_] += 1.0 - weight_;
  values.back() += weight_;
  return MassFunction::from_computed(frame_, std::move(values));
}

MassFunction discount(const MassFunction& m, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw FusionError(ErrorKind::parameter,
                      "discount factor must lie in [0, 1], got " + std::to_string(alpha));
  std::vector<double> values(m.values().begin(), m.values().end());
  for (auto& v : values) v *= alpha;
  values.back() += 1.0 - alpha;
  return MassFunction::from_computed(m.frame(), std::move(values));
}

Consistency consistency(const MassFunction& a, const MassFunction& b) {
  require_same_frame(a.frame(), b.frame());
  const auto fa = a.focal_elements();
  const auto fb = b.focal_elements();
  Subset common = a.frame().full();
  for (Subset s : fa) common &= s;
  for (Subset s : fb) common &= s;
  if (common != 0) return Consistency::strong;
  for (Subset x : fa)
    for (Subset y : fb)
      if ((x & y) == 0) return Consistency::inconsistent;
  return Consistency::weak;
}

const Frame& common_frame(std::span<const MassFunction> ms) {
  if (ms.empty()) throw FusionError(ErrorKind::parameter, "at least one mass function is required");
  const Frame& frame = ms.front().frame();
  for (const auto& m : ms.subspan(1)) require_same_frame(frame, m.frame());
  return frame;
}

}  // namespace lns
