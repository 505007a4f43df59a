// Command-line front-end: fusion, transforms, generation, EKNN and the
// named experiments.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "lns/decomposition.hpp"
#include "lns/eknn.hpp"
#include "lns/errors.hpp"
#include "lns/experiments.hpp"
#include "lns/genrand.hpp"
#include "lns/io.hpp"
#include "lns/lns_rule.hpp"
#include "lns/transform.hpp"

using namespace lns;

namespace {

struct Globals {
  std::string input;
  std::string output;
  std::string format;
  std::uint64_t seed = 1;
  bool deterministic = false;
};

struct RuleFlags {
  std::string rule = "conjunctive";
  double eta = 1.0;
  double lambda = 1.0;
  std::string global_rule = "conjunctive";
  std::uint64_t guard = 10'000'000;
  bool count_vacuous = false;

  RuleConfig config(Rule r, bool deterministic) const {
    RuleConfig cfg;
    cfg.rule = r;
    cfg.eta = eta;
    cfg.lambda = lambda;
    cfg.global_rule = parse_rule(global_rule);
    cfg.enumeration_guard = guard;
    cfg.count_vacuous_in_denominator = count_vacuous;
    cfg.deterministic = deterministic;
    cfg.validate();
    return cfg;
  }
};

void add_rule_flags(CLI::App* sub, RuleFlags& f, bool with_rule = true) {
  if (with_rule) sub->add_option("--rule", f.rule, "Combination rule")->capture_default_str();
  sub->add_option("--eta", f.eta, "Precision exponent of the LNS discount")->capture_default_str();
  sub->add_option("--lambda", f.lambda, "Exponent of the conflict-based reliability")->capture_default_str();
  sub->add_option("--global-rule", f.global_rule, "Rule for the last LNS step")->capture_default_str();
  sub->add_option("--guard", f.guard, "Largest focal-tuple count for dp and pcr6")->capture_default_str();
  sub->add_flag("--count-vacuous", f.count_vacuous, "Count vacuous sources in the LNS denominator");
}

std::string number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string mask(Subset s, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (s >> i & 1u) out[static_cast<std::size_t>(n - 1 - i)] = '1';
  return out;
}

io::Format output_format(const Globals& g) {
  if (!g.format.empty()) return io::parse_format(g.format);
  if (!g.output.empty() && g.output != "-") return io::format_for(g.output);
  return io::Format::csv;
}

io::BbaSet read_input(const Globals& g) {
  if (!g.input.empty() && g.input != "-") return io::read_file(g.input, io::format_for(g.input));
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  const auto text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = first != std::string::npos && (text[first] == '{' || text[first] == '[');
  std::istringstream in(text);
  return io::read(in, json ? io::Format::json : io::Format::csv);
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw FusionError(ErrorKind::parameter, "cannot write '" + path + "'");
  fn(out);
}

void write_bbas(const Globals& g, const Frame& frame, std::span<const MassFunction> ms) {
  const auto format = output_format(g);
  with_output(g.output, [&](std::ostream& out) { io::write(out, format, frame, ms); });
}

/// Parses "a:b" into an inclusive range.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  std::size_t a = 0, b = 0;
  const char* s = text.data();
  const bool ok = colon != std::string::npos &&
                  std::from_chars(s, s + colon, a).ec == std::errc{} &&
                  std::from_chars(s + colon + 1, s + text.size(), b).ec == std::errc{} && a >= 1 && a <= b;
  if (!ok) throw FusionError(ErrorKind::parameter, "expected a range a:b with 1 <= a <= b, got '" + text + "'");
  return {a, b};
}

int run_fuse(const Globals& g, const RuleFlags& f) {
  const auto set = read_input(g);
  if (set.masses.empty()) throw FusionError(ErrorKind::parameter, "no bbas to fuse");
  const auto cfg = f.config(parse_rule(f.rule), g.deterministic);
  const auto result = combine(set.masses, cfg);
  write_bbas(g, set.frame, std::span(&result.mass, 1));
  std::cerr << "rule " << f.rule << ", " << set.masses.size() << " sources, conflict " << result.conflict << "\n";
  for (const auto& grp : result.groups)
    std::cerr << "  group " << set.frame.describe(grp.focal) << ": count " << grp.count << ", weight "
              << grp.inner_weight << ", alpha " << grp.alpha << "\n";
  return 0;
}

int run_transform(const Globals& g, const std::string& to) {
  const auto set = read_input(g);
  const auto kind = parse_representation(to);
  const int n = set.frame.size();
  with_output(g.output, [&](std::ostream& out) {
    if (kind == Representation::pignistic) {
      for (int i = 0; i < n; ++i) out << (i ? "," : "") << set.frame.label(i);
    } else {
      for (Subset s = 0; s <= set.frame.full(); ++s) out << (s ? "," : "") << mask(s, n);
    }
    out << "\n";
    for (const auto& m : set.masses) {
      const auto r = transform(m, kind);
      for (std::size_t i = 0; i < r.values.size(); ++i) out << (i ? "," : "") << number(r.values[i]);
      out << "\n";
    }
  });
  return 0;
}

int run_decompose(const Globals& g) {
  const auto set = read_input(g);
  const int n = set.frame.size();
  with_output(g.output, [&](std::ostream& out) {
    for (Subset s = 0; s < set.frame.full(); ++s) out << (s ? "," : "") << mask(s, n);
    out << "\n";
    for (const auto& m : set.masses) {
      const auto w = canonical_decompose(m);
      for (Subset s = 0; s < set.frame.full(); ++s) out << (s ? "," : "") << number(w.weights[s]);
      out << "\n";
    }
  });
  return 0;
}

int run_discount(const Globals& g, double alpha) {
  const auto set = read_input(g);
  std::vector<MassFunction> out;
  for (const auto& m : set.masses) out.push_back(discount(m, alpha));
  write_bbas(g, set.frame, out);
  return 0;
}

struct GenFlags {
  std::string kind = "general";
  int frame = 3;
  std::vector<std::string> labels;
  std::size_t count = 10;
  std::vector<Subset> pool;
  std::size_t num_focals = 0;
  std::optional<double> min_singleton;
  std::uint64_t stream = 0;
};

int run_gen(const Globals& g, const GenFlags& f) {
  GenSpec spec;
  spec.frame = f.labels.empty() ? Frame::with_size(f.frame) : Frame(f.labels);
  spec.kind = parse_gen_kind(f.kind);
  spec.focal_pool = f.pool;
  spec.num_focals = f.num_focals;
  spec.min_singleton_mass = f.min_singleton;
  spec.seed = g.seed;
  if (f.count < 1) throw FusionError(ErrorKind::parameter, "count must be at least 1");
  Generator gen(spec, f.stream);
  std::vector<MassFunction> ms;
  for (std::size_t i = 0; i < f.count; ++i) ms.push_back(gen.next());
  write_bbas(g, spec.frame, ms);
  return 0;
}

struct EknnFlags {
  std::string train;
  std::size_t k = 5;
  double alpha = 0.95;
  std::vector<double> gamma;
  bool loo = false;
  std::string sweep;
  std::string report;
  bool standardize = false;
  std::vector<double> query;
};

int run_eknn(const Globals& g, const EknnFlags& f, const RuleFlags& rf) {
  if (f.train.empty()) throw FusionError(ErrorKind::parameter, "--train is required");
  const auto ds = read_dataset_csv(std::filesystem::path(f.train));
  EknnConfig cfg;
  cfg.k = f.k;
  cfg.alpha = f.alpha;
  if (!f.gamma.empty()) cfg.gamma = f.gamma;
  cfg.fusion = rf.config(parse_rule(rf.rule), g.deterministic);
  cfg.standardize = f.standardize;

  if (!f.query.empty()) {
    const EknnClassifier clf(ds, cfg);
    const auto c = clf.classify(f.query);
    std::cout << "class " << ds.classes.label(c.label) << "\n";
    for (int i = 0; i < ds.classes.size(); ++i)
      std::cout << "BetP(" << ds.classes.label(i) << ") = " << c.betp[static_cast<std::size_t>(i)] << "\n";
    std::cout << "conflict " << c.fused.conflict << "\n";
    return 0;
  }

  std::size_t lo = f.k, hi = f.k;
  if (!f.sweep.empty()) std::tie(lo, hi) = parse_range(f.sweep);
  ExperimentReport rep;
  rep.name = "eknn";
  rep.seed = g.seed;
  rep.parameters = {{"train", f.train}, {"alpha", f.alpha}, {"rule", rf.rule}, {"k_from", lo}, {"k_to", hi},
                    {"standardize", f.standardize}};
  Series acc{rf.rule + " accuracy", "K", "leave-one-out accuracy", {}, {}};
  Series max_k{rf.rule + " max kappa", "K", "max m(empty)", {}, {}};
  Series mean_k{rf.rule + " mean kappa", "K", "mean m(empty)", {}, {}};
  const auto gamma = f.gamma.empty() ? EknnClassifier(ds, cfg).gamma() : f.gamma;
  rep.parameters["gamma"] = gamma;
  std::cout << "# gamma";
  for (double v : gamma) std::cout << " " << v;
  std::cout << (f.gamma.empty() ? " (1 / mean same-class pair distance)\n" : "\n");
  std::cout << "K,accuracy,max_conflict,mean_conflict,saturated\n";
  for (std::size_t k = lo; k <= hi; ++k) {
    cfg.k = k;
    const auto loo = evaluate_loo(ds, cfg);
    double mean = 0.0;
    for (double c : loo.conflict) mean += c;
    mean /= static_cast<double>(loo.conflict.size());
    std::cout << k << "," << loo.accuracy << "," << loo.max_conflict << "," << mean << "," << loo.failures.size()
              << "\n";
    acc.x.push_back(static_cast<double>(k));
    acc.y.push_back(loo.accuracy);
    max_k.x.push_back(static_cast<double>(k));
    max_k.y.push_back(loo.max_conflict);
    mean_k.x.push_back(static_cast<double>(k));
    mean_k.y.push_back(mean);
  }
  rep.series = {acc, max_k, mean_k};
  if (!f.report.empty())
    with_output(f.report, [&](std::ostream& out) { out << rep.to_json().dump(2) << "\n"; });
  return 0;
}

struct ExperimentFlags {
  std::string name;
  std::vector<std::string> rules;
  std::vector<double> eta_grid;
  std::vector<std::size_t> s2;
  std::vector<std::size_t> t;
  std::optional<double> fixed_weight;
  std::vector<std::size_t> sources;
  int frame = 8;
  int repeats = 5;
  std::vector<std::string> inputs;
  std::vector<std::size_t> k_grid;
  std::string dataset;
  std::size_t points = 200;
  double separation = 4.0;
  double alpha = 0.95;
  std::string series_csv;
  std::string replay;
};

ExperimentParams experiment_params(const Globals& g, const ExperimentFlags& f, const RuleFlags& rf) {
  ExperimentParams p;
  p.seed = g.seed;
  p.deterministic = g.deterministic;
  p.eta = rf.eta;
  p.lambda = rf.lambda;
  p.global_rule = parse_rule(rf.global_rule);
  for (const auto& r : f.rules) p.rules.push_back(parse_rule(r));
  p.eta_grid = f.eta_grid;
  p.s2_grid = f.s2;
  p.t_grid = f.t;
  p.fixed_weight = f.fixed_weight;
  p.sources = f.sources;
  p.frame_size = f.frame;
  p.repeats = f.repeats;
  p.inputs = f.inputs;
  p.k_grid = f.k_grid;
  if (!f.dataset.empty()) p.dataset = f.dataset;
  p.points = f.points;
  p.separation = f.separation;
  p.alpha = f.alpha;
  return p;
}

/// Parameters embedded in a saved report (or a bare parameter object).
ExperimentParams replay_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FusionError(ErrorKind::parameter, "cannot read '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FusionError(ErrorKind::parse, path + ": " + e.what());
  }
  return ExperimentParams::from_json(j.contains("parameters") ? j.at("parameters") : j);
}

int run_experiment_cmd(const Globals& g, const ExperimentFlags& f, const RuleFlags& rf) {
  const auto params = f.replay.empty() ? experiment_params(g, f, rf) : replay_params(f.replay);
  const auto rep = run_experiment(f.name, params);
  rep.write_text(std::cout);
  if (!g.output.empty())
    with_output(g.output, [&](std::ostream& out) { out << rep.to_json().dump(2) << "\n"; });
  if (!f.series_csv.empty()) with_output(f.series_csv, [&](std::ostream& out) { rep.write_series_csv(out); });
  return 0;
}

void add_experiment_flags(CLI::App* sub, ExperimentFlags& f) {
  sub->add_option("--rule", f.rules, "Rules to run (repeatable)");
  sub->add_option("--eta-grid", f.eta_grid, "eta values for eta-sweep");
  sub->add_option("--s2", f.s2, "Minority group sizes for conflict-sweep");
  sub->add_option("--t", f.t, "Majority ratios for conflict-sweep");
  sub->add_option("--deterministic-w", f.fixed_weight, "Fix every support weight in conflict-sweep");
  sub->add_option("--sources", f.sources, "Source counts for timing");
  sub->add_option("--frame", f.frame, "Frame size for timing")->capture_default_str();
  sub->add_option("--repeats", f.repeats, "Timed runs per point (median)")->capture_default_str();
  sub->add_option("--inputs", f.inputs, "Timing inputs: ssf, consonant");
  sub->add_option("--k-grid", f.k_grid, "Neighbour counts for eknn-sweep");
  sub->add_option("--dataset", f.dataset, "CSV dataset for eknn-sweep");
  sub->add_option("--points", f.points, "Synthetic dataset size")->capture_default_str();
  sub->add_option("--separation", f.separation, "Synthetic class separation in sigmas")->capture_default_str();
  sub->add_option("--alpha", f.alpha, "EKNN alpha")->capture_default_str();
  sub->add_option("--series-csv", f.series_csv, "Also write the series as CSV");
  sub->add_option("--replay", f.replay, "Rerun with the parameters embedded in a JSON report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combination of many belief functions (LNS-CR and classical rules)"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("-i,--input", g.input, "Input bba file (csv or json; '-' for stdin)");
  app.add_option("-o,--output", g.output, "Output file (stdout when omitted)");
  app.add_option("-f,--format", g.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_flag("--deterministic", g.deterministic, "Sequential reductions only");

  RuleFlags fuse_rf;
  auto* fuse = app.add_subcommand("fuse", "Combine every bba of the input");
  add_rule_flags(fuse, fuse_rf);

  std::string to;
  auto* trans = app.add_subcommand("transform", "Belief, plausibility, commonality, implicability or BetP");
  trans->add_option("--to", to, "Target representation")->required();

  auto* decomp = app.add_subcommand("decompose", "Canonical decomposition weights");

  double alpha = 1.0;
  auto* disc = app.add_subcommand("discount", "Discount every bba by a reliability factor");
  disc->add_option("--alpha", alpha, "Reliability in [0, 1]")->required();

  GenFlags gf;
  auto* gen = app.add_subcommand("gen", "Generate random bbas");
  gen->add_option("--kind", gf.kind, "general, ssf or consonant")->capture_default_str();
  gen->add_option("--frame", gf.frame, "Number of hypotheses")->capture_default_str();
  gen->add_option("--labels", gf.labels, "Hypothesis labels (overrides --frame)")->delimiter(',');
  gen->add_option("--count", gf.count, "Number of bbas")->capture_default_str();
  gen->add_option("--pool", gf.pool, "Candidate focal sets as subset indices")->delimiter(',');
  gen->add_option("--num-focals", gf.num_focals, "Focal sets per bba / chain length");
  gen->add_option("--min-singleton", gf.min_singleton, "Keep bbas with a singleton mass above this");
  gen->add_option("--stream", gf.stream, "Independent stream for the same seed");

  EknnFlags ef;
  RuleFlags eknn_rf;
  auto* eknn = app.add_subcommand("eknn", "Evidential K-nearest-neighbour classifier");
  eknn->add_option("--train", ef.train, "Training CSV (last column = class)");
  eknn->add_option("--k", ef.k, "Neighbours")->capture_default_str();
  eknn->add_option("--alpha", ef.alpha, "Neighbour bba scale")->capture_default_str();
  eknn->add_option("--gamma", ef.gamma, "Per-class gamma (default: pair-mean heuristic)")->delimiter(',');
  eknn->add_flag("--loo", ef.loo, "Leave-one-out evaluation (default action)");
  eknn->add_option("--sweep-k", ef.sweep, "Leave-one-out over K = a:b");
  eknn->add_option("--report", ef.report, "Write a JSON report");
  eknn->add_flag("--standardize", ef.standardize, "Z-score the features");
  eknn->add_option("--query", ef.query, "Classify one point")->delimiter(',');
  add_rule_flags(eknn, eknn_rf);

  ExperimentFlags xf;
  RuleFlags exp_rf;
  auto* exp = app.add_subcommand("experiment", "Run table1, eta-sweep, conflict-sweep, timing or eknn-sweep");
  exp->add_option("name", xf.name, "Experiment name")->required();
  add_experiment_flags(exp, xf);
  add_rule_flags(exp, exp_rf, false);

  ExperimentFlags bf;
  RuleFlags bench_rf;
  auto* bench = app.add_subcommand("bench", "Time rules on random supports (timing experiment shortcut)");
  add_experiment_flags(bench, bf);
  add_rule_flags(bench, bench_rf, false);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fuse) return run_fuse(g, fuse_rf);
    if (*trans) return run_transform(g, to);
    if (*decomp) return run_decompose(g);
    if (*disc) return run_discount(g, alpha);
    if (*gen) return run_gen(g, gf);
    if (*eknn) return run_eknn(g, ef, eknn_rf);
    if (*exp) return run_experiment_cmd(g, xf, exp_rf);
    if (*bench) {
      bf.name = "timing";
      if (bf.sources.empty()) bf.sources = {100000};
      if (bf.rules.empty()) bf.rules = {"lns", "lnsa"};
      if (bf.inputs.empty()) bf.inputs = {"ssf"};
      return run_experiment_cmd(g, bf, bench_rf);
    }
  } catch (const FusionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
