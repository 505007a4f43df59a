#include "lns/eknn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "lns/errors.hpp"
#include "lns/genrand.hpp"
#include "lns/transform.hpp"

namespace lns {

namespace {

void fail(ErrorKind kind, const std::string& what) { throw FusionError(kind, what); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<double> number(const std::string& cell) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

}  // namespace

void LabeledDataset::validate() const {
  if (points.size() < 2) fail(ErrorKind::parameter, "a dataset needs at least two points");
  if (labels.size() != points.size()) fail(ErrorKind::parameter, "one label per point is required");
  const std::size_t dim = dimension();
  if (dim == 0) fail(ErrorKind::parameter, "points need at least one feature");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim)
      fail(ErrorKind::parameter, "point " + std::to_string(i) + " has the wrong dimension");
    if (labels[i] < 0 || labels[i] >= classes.size())
      fail(ErrorKind::parameter, "point " + std::to_string(i) + " has a label outside the frame");
  }
}

LabeledDataset read_dataset_csv(std::istream& in) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> points;
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(trim(cell));
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (cells.size() < 2) fail(ErrorKind::parse, where + "need features and a label");
    std::vector<double> x;
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
      const auto v = number(cells[c]);
      if (!v) break;
      x.push_back(*v);
    }
    if (x.size() + 1 != cells.size()) {
      if (points.empty() && names.empty()) continue;  // header row
      fail(ErrorKind::parse, where + "malformed feature value");
    }
    if (!points.empty() && x.size() != points.front().size())
      fail(ErrorKind::parse, where + "expected " + std::to_string(points.front().size()) + " features");
    const std::string& name = cells.back();
    if (name.empty()) fail(ErrorKind::parse, where + "empty class label");
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      it = names.end() - 1;
    }
    labels.push_back(static_cast<int>(it - names.begin()));
    points.push_back(std::move(x));
  }
  if (names.empty()) fail(ErrorKind::parse, "no data rows");
  if (names.size() > static_cast<std::size_t>(kMaxFrameSize))
    fail(ErrorKind::parse, "more than " + std::to_string(kMaxFrameSize) + " classes");
  LabeledDataset ds{Frame(std::move(names)), std::move(points), std::move(labels)};
  ds.validate();
  return ds;
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::parse, "cannot open " + path.string());
  return read_dataset_csv(in);
}

LabeledDataset two_gaussians(std::size_t count, double separation, std::uint64_t seed) {
  Rng rng(seed);
  LabeledDataset ds{Frame({"class1", "class2"}), {}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    const int label = static_cast<int>(i % 2);
    const double shift = label == 0 ? 0.0 : separation;
    const double x = rng.normal() + shift;
    const double y = rng.normal();
    ds.points.push_back({x, y});
    ds.labels.push_back(label);
  }
  ds.validate();
  return ds;
}

void EknnConfig::validate(const LabeledDataset& ds) const {
  if (k < 1) fail(ErrorKind::parameter, "K must be at least 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::parameter, "alpha must lie in (0, 1]");
  if (gamma) {
    if (gamma->size() != static_cast<std::size_t>(ds.classes.size()))
      fail(ErrorKind::parameter, "one gamma per class is required");
    for (double g : *gamma)
      if (!(g > 0.0) || !std::isfinite(g)) fail(ErrorKind::parameter, "gamma values must be positive");
  }
  fusion.validate();
}

std::vector<double> gamma_auto(const LabeledDataset& ds) {
  const auto n = static_cast<std::size_t>(ds.classes.size());
  std::vector<double> sum(n, 0.0);
  std::vector<std::size_t> pairs(n, 0);
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      if (ds.labels[i] == ds.labels[j]) {
        const auto q = static_cast<std::size_t>(ds.labels[i]);
        sum[q] += std::sqrt(squared_distance(ds.points[i], ds.points[j]));
        ++pairs[q];
      }
  std::vector<double> gamma(n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::string& name = ds.classes.label(static_cast<int>(q));
    if (pairs[q] == 0)
      fail(ErrorKind::undefined_gamma, "class '" + name + "' has fewer than two points; supply gamma");
    if (sum[q] == 0.0)
      fail(ErrorKind::undefined_gamma, "all points of class '" + name + "' coincide; supply gamma");
    gamma[q] = static_cast<double>(pairs[q]) / sum[q];
  }
  return gamma;
}

SimpleSupport neighbor_bba(const Frame& classes, int label, double distance, double alpha, double gamma) {
  if (!(distance >= 0.0)) fail(ErrorKind::parameter, "distance must be non-negative");
  if (!(gamma > 0.0)) fail(ErrorKind::parameter, "gamma must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::parameter, "alpha must lie in (0, 1]");
  const double support = alpha * std::exp(-gamma * distance * distance);
  return {classes, classes.singleton(label), 1.0 - support};
}

EknnClassifier::EknnClassifier(LabeledDataset ds, EknnConfig cfg) : ds_(std::move(ds)), cfg_(std::move(cfg)) {
  ds_.validate();
  cfg_.validate(ds_);
  const std::size_t dim = ds_.dimension();
  mean_.assign(dim, 0.0);
  scale_.assign(dim, 1.0);
  if (cfg_.standardize) {
    const auto count = static_cast<double>(ds_.size());
    for (const auto& p : ds_.points)
      for (std::size_t d = 0; d < dim; ++d) mean_[d] += p[d] / count;
    std::vector<double> var(dim, 0.0);
    for (const auto& p : ds_.points)
      for (std::size_t d = 0; d < dim; ++d) var[d] += (p[d] - mean_[d]) * (p[d] - mean_[d]) / count;
    for (std::size_t d = 0; d < dim; ++d) scale_[d] = var[d] > 0.0 ? 1.0 / std::sqrt(var[d]) : 1.0;
    for (auto& p : ds_.points) p = scaled(p);
  }
  gamma_ = cfg_.gamma ? *cfg_.gamma : gamma_auto(ds_);
}

std::vector<double> EknnClassifier::scaled(const std::vector<double>& x) const {
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) out[d] = (x[d] - mean_[d]) * scale_[d];
  return out;
}

Classification EknnClassifier::classify(const std::vector<double>& x) const {
  if (x.size() != ds_.dimension())
    fail(ErrorKind::parameter, "query has " + std::to_string(x.size()) + " features, expected " +
                                   std::to_string(ds_.dimension()));
  return decide(cfg_.standardize ? scaled(x) : x, std::nullopt);
}

Classification EknnClassifier::classify_held_out(std::size_t index) const {
  if (index >= ds_.size()) fail(ErrorKind::parameter, "sample index out of range");
  return decide(ds_.points[index], index);
}

Classification EknnClassifier::decide(const std::vector<double>& x, std::optional<std::size_t> skip) const {
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(ds_.size());
  for (std::size_t i = 0; i < ds_.size(); ++i)
    if (i != skip) order.emplace_back(squared_distance(x, ds_.points[i]), i);
  if (cfg_.k > order.size())
    fail(ErrorKind::parameter, "K = " + std::to_string(cfg_.k) + " exceeds the " +
                                   std::to_string(order.size()) + " available neighbours");
  // Pairs compare by distance, then by index.
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cfg_.k), order.end());

  std::vector<MassFunction> ms;
  ms.reserve(cfg_.k);
  for (std::size_t j = 0; j < cfg_.k; ++j) {
    const int label = ds_.labels[order[j].second];
    ms.push_back(neighbor_bba(ds_.classes, label, std::sqrt(order[j].first), cfg_.alpha,
                              gamma_[static_cast<std::size_t>(label)])
                     .to_mass());
  }
  FusionResult fused = combine(ms, cfg_.fusion);
  auto bet = pignistic(fused.mass).values;
  const auto best = std::max_element(bet.begin(), bet.end()) - bet.begin();
  return {static_cast<int>(best), std::move(fused), std::move(bet)};
}

LooReport evaluate_loo(const LabeledDataset& ds, const EknnConfig& cfg) {
  if (cfg.k + 1 > ds.size())
    fail(ErrorKind::parameter, "leave-one-out needs K <= N - 1");
  const EknnClassifier clf(ds, cfg);
  LooReport report;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    try {
      const auto c = clf.classify_held_out(i);
      report.predicted.push_back(c.label);
      report.conflict.push_back(c.fused.conflict);
      if (c.label == ds.labels[i]) ++correct;
    } catch (const FusionError& e) {
      if (e.kind() != ErrorKind::total_conflict) throw;
      report.predicted.push_back(-1);
      report.conflict.push_back(1.0);
      report.failures.emplace_back(i, e.what());
    }
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(ds.size());
  report.max_conflict = *std::max_element(report.conflict.begin(), report.conflict.end());
  return report;
}

}  // namespace lns
