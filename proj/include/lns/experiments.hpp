#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lns/rules.hpp"

namespace lns {

/// One fused bba per column; rows are subsets in natural order.
struct TableColumn {
  std::string name;
  std::vector<double> values;
  /// "ok", "saturated" or "error: <message>".
  std::string status = "ok";
};

struct Table {
  std::string name;
  std::vector<std::string> rows;
  std::vector<TableColumn> columns;
};

/// Plot-ready (x, y) series; a missing y marks a failed point.
struct Series {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<std::optional<double>> y;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  nlohmann::ordered_json parameters;
  std::vector<Table> tables;
  std::vector<Series> series;
  /// Wall-clock seconds keyed by label.
  std::map<std::string, double> timings;
  std::vector<std::string> notes;

  nlohmann::ordered_json to_json() const;
  /// Tables with cells at 5 decimals, then series and notes.
  void write_text(std::ostream& out) const;
  /// Long format: series,x,y (empty y for failed points).
  void write_series_csv(std::ostream& out) const;
};

/// Knobs shared by all experiments; empty grids select the defaults of the
/// experiment. The resolved values are embedded in every report.
struct ExperimentParams {
  std::uint64_t seed = 1;
  bool deterministic = false;
  double eta = 1.0;
  double lambda = 1.0;
  Rule global_rule = Rule::conjunctive;
  std::vector<Rule> rules;
  std::vector<double> eta_grid;
  std::vector<std::size_t> s2_grid;
  std::vector<std::size_t> t_grid;
  /// Conflict sweep with every weight fixed instead of random draws.
  std::optional<double> fixed_weight;
  std::vector<std::size_t> sources;
  int frame_size = 8;
  int repeats = 5;
  /// Timing inputs: "ssf" and/or "consonant".
  std::vector<std::string> inputs;
  std::vector<std::size_t> k_grid;
  std::optional<std::string> dataset;
  std::size_t points = 200;
  double separation = 4.0;
  double alpha = 0.95;

  nlohmann::ordered_json to_json() const;
  static ExperimentParams from_json(const nlohmann::json& j);
  RuleConfig rule_config(Rule rule) const;
};

const std::vector<std::string_view>& experiment_names();

/// Runs table1, eta-sweep, conflict-sweep, timing or eknn-sweep.
ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params);

}  // namespace lns
