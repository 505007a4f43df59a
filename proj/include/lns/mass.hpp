#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lns/frame.hpp"

namespace lns {

/// Tolerance on the unit-sum constraint for masses built through the API.
inline constexpr double kMassTolerance = 1e-9;

/// Dense basic belief assignment: one value per subset, natural order.
/// Immutable once constructed; every value is >= 0 and they sum to 1.
class MassFunction {
 public:
  /// Validates (non-negative, sum 1 +- tolerance) and renormalizes once.
  static MassFunction from_values(Frame frame, std::vector<double> values,
                                  double tolerance = kMassTolerance);
  static MassFunction from_focal(Frame frame,
                                 std::span<const std::pair<Subset, double>> focal,
                                 double tolerance = kMassTolerance);
  static MassFunction vacuous(Frame frame);
  static MassFunction categorical(Frame frame, Subset focal);

  /// Wraps the output of a computation. Negative noise above -1e-9 is
  /// clamped to zero; anything lower is a not-a-valid-image error. No
  /// renormalization happens here.
  static MassFunction from_computed(Frame frame, std::vector<double> values);

  const Frame& frame() const noexcept { return frame_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](Subset s) const { return values_[s]; }
  std::size_t size() const noexcept { return values_.size(); }

  double conflict() const noexcept { return values_.front(); }
  double ignorance() const noexcept { return values_.back(); }

  bool is_vacuous() const noexcept { return values_.back() == 1.0; }
  bool is_dogmatic() const noexcept { return values_.back() == 0.0; }
  bool is_normal() const noexcept { return values_.front() == 0.0; }
  bool is_categorical() const noexcept;

  std::vector<Subset> focal_elements() const;
  double sum() const noexcept;

 private:
  MassFunction(Frame frame, std::vector<double> values)
      : frame_(std::move(frame)), values_(std::move(values)) {}

  Frame frame_;
  std::vector<double> values_;
};

/// Simple support function A^w: m(A) = 1 - w, m(frame) = w.
class SimpleSupport {
 public:
  SimpleSupport(Frame frame, Subset focal, double weight);

  const Frame& frame() const noexcept { return frame_; }
  Subset focal() const noexcept { return focal_; }
  double weight() const noexcept { return weight_; }

  bool is_vacuous() const noexcept { return focal_ == frame_.full() || weight_ == 1.0; }
  MassFunction to_mass() const;

 private:
  Frame frame_;
  Subset focal_;
  double weight_;
};

/// Shafer discounting toward the vacuous bba with reliability `alpha`.
MassFunction discount(const MassFunction& m, double alpha);

enum class Consistency { strong, weak, inconsistent };

Consistency consistency(const MassFunction& a, const MassFunction& b);

/// Frame shared by every element of a non-empty list; throws otherwise.
const Frame& common_frame(std::span<const MassFunction> ms);

}  // namespace lns
