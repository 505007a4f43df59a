#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lns/mass.hpp"
#include "lns/rules.hpp"

namespace lns {

/// Training points with class labels; the classes form the frame.
struct LabeledDataset {
  Frame classes;
  std::vector<std::vector<double>> points;
  std::vector<int> labels;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t dimension() const noexcept { return points.empty() ? 0 : points.front().size(); }
  /// Uniform dimension, labels inside the frame, at least two points.
  void validate() const;
};

/// CSV with numeric feature columns and the class name in the last column.
/// An optional non-numeric header row is skipped; classes are numbered in
/// order of first appearance.
LabeledDataset read_dataset_csv(std::istream& in);
LabeledDataset read_dataset_csv(const std::filesystem::path& path);

/// Two isotropic unit-variance Gaussian classes in the plane whose means are
/// `separation` standard deviations apart; classes alternate by index.
LabeledDataset two_gaussians(std::size_t count, double separation, std::uint64_t seed);

struct EknnConfig {
  std::size_t k = 5;
  double alpha = 0.95;
  /// Per-class gamma; empty means the pair-mean heuristic.
  std::optional<std::vector<double>> gamma;
  RuleConfig fusion;
  /// Z-score the features before anything else.
  bool standardize = false;

  void validate(const LabeledDataset& ds) const;
};

/// gamma_q = 1 / mean distance over unordered pairs of class-q points.
std::vector<double> gamma_auto(const LabeledDataset& ds);

/// SSF on {theta_q} with mass alpha * exp(-gamma * d^2).
SimpleSupport neighbor_bba(const Frame& classes, int label, double distance, double alpha, double gamma);

struct Classification {
  int label;
  FusionResult fused;
  std::vector<double> betp;
};

class EknnClassifier {
 public:
  EknnClassifier(LabeledDataset ds, EknnConfig cfg);

  Classification classify(const std::vector<double>& x) const;
  /// Classifies training point `index` against the other points.
  Classification classify_held_out(std::size_t index) const;

  const LabeledDataset& data() const noexcept { return ds_; }
  const std::vector<double>& gamma() const noexcept { return gamma_; }

 private:
  Classification decide(const std::vector<double>& x, std::optional<std::size_t> skip) const;
  std::vector<double> scaled(const std::vector<double>& x) const;

  LabeledDataset ds_;
  EknnConfig cfg_;
  std::vector<double> gamma_;
  std::vector<double> mean_, scale_;
};

struct LooReport {
  double accuracy = 0.0;
  std::vector<int> predicted;
  /// Per-sample global conflict; 1 for samples where fusion saturated.
  std::vector<double> conflict;
  double max_conflict = 0.0;
  /// Samples whose fusion raised an error, with the message.
  std::vector<std::pair<std::size_t, std::string>> failures;
};

/// Leave-one-out evaluation. Total-conflict failures are recorded per sample
/// and counted as misclassified; other errors propagate.
LooReport evaluate_loo(const LabeledDataset& ds, const EknnConfig& cfg);

}  // namespace lns
