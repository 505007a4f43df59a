#include <algorithm>
#include <cstdio>
#include <ostream>

#include "lns/errors.hpp"
#include "lns/experiments.hpp"

namespace lns {

namespace {

std::string fixed5(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::vector<std::string> rule_names(const std::vector<Rule>& rules) {
  std::vector<std::string> out;
  for (Rule r : rules) out.emplace_back(to_string(r));
  return out;
}

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

}  // namespace

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["seed"] = seed;
  j["parameters"] = parameters;
  auto& tabs = j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : tables) {
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (const auto& c : t.columns)
      cols.push_back({{"name", c.name}, {"status", c.status}, {"values", c.values}});
    tabs.push_back({{"name", t.name}, {"rows", t.rows}, {"columns", std::move(cols)}});
  }
  auto& ser = j["series"] = nlohmann::ordered_json::array();
  for (const auto& s : series) {
    nlohmann::ordered_json ys = nlohmann::ordered_json::array();
    for (const auto& y : s.y) ys.push_back(y ? nlohmann::ordered_json(*y) : nlohmann::ordered_json());
    ser.push_back({{"name", s.name}, {"x_label", s.x_label}, {"y_label", s.y_label}, {"x", s.x}, {"y", ys}});
  }
  j["timings"] = timings;
  j["notes"] = notes;
  return j;
}

void ExperimentReport::write_text(std::ostream& out) const {
  out << "experiment: " << name << " (seed " << seed << ")\n";
  for (const auto& t : tables) {
    out << "\n" << t.name << "\n";
    std::size_t first = 8;
    for (const auto& r : t.rows) first = std::max(first, r.size() + 2);
    std::vector<std::size_t> widths;
    for (const auto& c : t.columns) widths.push_back(std::max<std::size_t>(c.name.size(), 7) + 2);
    out << pad("", first);
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << pad(t.columns[c].name, widths[c]);
    out << "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      out << pad(t.rows[r], first);
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        const auto& col = t.columns[c];
        out << pad(col.status == "ok" ? fixed5(col.values[r]) : "-", widths[c]);
      }
      out << "\n";
    }
    for (const auto& c : t.columns)
      if (c.status != "ok") out << "  " << c.name << ": " << c.status << "\n";
  }
  if (!series.empty()) out << "\n";
  for (const auto& s : series) {
    out << s.name << " (" << s.x_label << " -> " << s.y_label << "):";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << " " << s.x[i] << ":" << (s.y[i] ? fixed5(*s.y[i]) : std::string("n/a"));
    out << "\n";
  }
  if (!timings.empty()) out << "\n";
  for (const auto& [label, seconds] : timings) out << label << ": " << seconds << " s\n";
  if (!notes.empty()) out << "\n";
  for (const auto& n : notes) out << "note: " << n << "\n";
}

void ExperimentReport::write_series_csv(std::ostream& out) const {
  out << "series,x,y\n";
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << '"' << s.name << "\"," << s.x[i] << ',';
      if (s.y[i]) out << *s.y[i];
      out << '\n';
    }
}

nlohmann::ordered_json ExperimentParams::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["deterministic"] = deterministic;
  j["eta"] = eta;
  j["lambda"] = lambda;
  j["global_rule"] = std::string(to_string(global_rule));
  j["rules"] = rule_names(rules);
  j["eta_grid"] = eta_grid;
  j["s2_grid"] = s2_grid;
  j["t_grid"] = t_grid;
  j["fixed_weight"] = fixed_weight ? nlohmann::ordered_json(*fixed_weight) : nlohmann::ordered_json();
  j["sources"] = sources;
  j["frame_size"] = frame_size;
  j["repeats"] = repeats;
  j["inputs"] = inputs;
  j["k_grid"] = k_grid;
  j["dataset"] = dataset ? nlohmann::ordered_json(*dataset) : nlohmann::ordered_json();
  j["points"] = points;
  j["separation"] = separation;
  j["alpha"] = alpha;
  return j;
}

ExperimentParams ExperimentParams::from_json(const nlohmann::json& j) {
  ExperimentParams p;
  try {
    read_if(j, "seed", p.seed);
    read_if(j, "deterministic", p.deterministic);
    read_if(j, "eta", p.eta);
    read_if(j, "lambda", p.lambda);
    if (j.contains("global_rule")) p.global_rule = parse_rule(j.at("global_rule").get<std::string>());
    if (j.contains("rules"))
      for (const auto& r : j.at("rules")) p.rules.push_back(parse_rule(r.get<std::string>()));
    read_if(j, "eta_grid", p.eta_grid);
    read_if(j, "s2_grid", p.s2_grid);
    read_if(j, "t_grid", p.t_grid);
    if (j.contains("fixed_weight") && !j.at("fixed_weight").is_null())
      p.fixed_weight = j.at("fixed_weight").get<double>();
    read_if(j, "sources", p.sources);
    read_if(j, "frame_size", p.frame_size);
    read_if(j, "repeats", p.repeats);
    read_if(j, "inputs", p.inputs);
    read_if(j, "k_grid", p.k_grid);
    if (j.contains("dataset") && !j.at("dataset").is_null()) p.dataset = j.at("dataset").get<std::string>();
    read_if(j, "points", p.points);
    read_if(j, "separation", p.separation);
    read_if(j, "alpha", p.alpha);
  } catch (const nlohmann::json::exception& e) {
    throw FusionError(ErrorKind::parse, std::string("experiment parameters: ") + e.what());
  }
  return p;
}

RuleConfig ExperimentParams::rule_config(Rule rule) const {
  RuleConfig cfg;
  cfg.rule = rule;
  cfg.eta = eta;
  cfg.lambda = lambda;
  cfg.global_rule = global_rule;
  cfg.deterministic = deterministic;
  cfg.validate();
  return cfg;
}

}  // namespace lns
