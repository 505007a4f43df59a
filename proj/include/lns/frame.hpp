#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lns {

/// Subset of the frame in natural order: bit (i-1) is set iff theta_i is in
/// the subset. 0 is the empty set, 2^n - 1 the whole frame.
using Subset = std::uint32_t;

inline constexpr int kMaxFrameSize = 20;

constexpr int cardinality(Subset s) noexcept { return std::popcount(s); }
constexpr bool is_subset(Subset a, Subset b) noexcept { return (a & ~b) == 0; }

/// Ordered, labelled frame of discernment. Copies share the label storage, so
/// passing frames by value is cheap.
class Frame {
 public:
  explicit Frame(std::vector<std::string> labels);

  /// Frame with default labels theta1..thetaN.
  static Frame with_size(int n);

  int size() const noexcept { return static_cast<int>(labels_->size()); }
  std::size_t powerset_size() const noexcept { return std::size_t{1} << size(); }
  Subset full() const noexcept { return static_cast<Subset>(powerset_size() - 1); }

  const std::vector<std::string>& labels() const noexcept { return *labels_; }
  const std::string& label(int i) const { return labels_->at(static_cast<std::size_t>(i)); }
  std::optional<int> index_of(std::string_view label) const;

  Subset subset_of(std::span<const std::string> labels) const;
  Subset singleton(int i) const;
  std::vector<std::string> labels_of(Subset s) const;
  /// "{a,b}" style rendering; the empty set renders as "{}".
  std::string describe(Subset s) const;

  bool contains(Subset s) const noexcept { return s <= full(); }
  /// Throws an encoding error when `s` is not a subset of this frame.
  void check(Subset s) const;

  friend bool operator==(const Frame& a, const Frame& b) noexcept {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

struct SubsetRelations {
  Subset intersection;
  Subset union_;
  int cardinality_a;
  int cardinality_b;
  bool a_subset_of_b;
};

SubsetRelations subset_ops(const Frame& frame, Subset a, Subset b);

/// Throws an encoding error unless both frames are identical.
void require_same_frame(const Frame& a, const Frame& b);

}  // namespace lns
