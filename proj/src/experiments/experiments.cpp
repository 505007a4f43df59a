#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "lns/eknn.hpp"
#include "lns/errors.hpp"
#include "lns/experiments.hpp"
#include "lns/genrand.hpp"
#include "lns/lns_rule.hpp"
#include "lns/reliability.hpp"
#include "lns/transform.hpp"

namespace lns {

namespace {

constexpr const char* kWeightNote = "random SSF weights are uniform on [0, 1)";

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

std::string number_label(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::vector<std::string> subset_rows(const Frame& frame) {
  std::vector<std::string> rows;
  for (Subset s = 0; s <= frame.full(); ++s) rows.push_back(frame.describe(s));
  return rows;
}

TableColumn column(std::string name, const std::function<MassFunction()>& fuse) {
  TableColumn col{std::move(name), {}, "ok"};
  try {
    const auto m = fuse();
    col.values.assign(m.values().begin(), m.values().end());
  } catch (const FusionError& e) {
    col.status = e.kind() == ErrorKind::total_conflict ? "saturated" : std::string("error: ") + e.what();
  }
  return col;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

/// Median wall-clock time of `repeats` runs after one discarded warm-up.
double median_seconds(int repeats, const std::function<void()>& fn) {
  fn();
  std::vector<double> runs;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    runs.push_back(seconds_since(start));
  }
  return median(std::move(runs));
}

std::vector<SimpleSupport> draw_supports(const Frame& frame, std::vector<Subset> pool, std::size_t count,
                                         std::optional<double> min_singleton, std::uint64_t seed,
                                         std::uint64_t stream) {
  Generator gen(GenSpec{frame, GenKind::ssf, std::move(pool), 0, min_singleton, seed}, stream);
  std::vector<SimpleSupport> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.next_support());
  return out;
}

std::vector<MassFunction> as_masses(std::span<const SimpleSupport> ssfs) {
  std::vector<MassFunction> out;
  out.reserve(ssfs.size());
  for (const auto& s : ssfs) out.push_back(s.to_mass());
  return out;
}

/// LNS rules read the supports directly; every other rule sees dense bbas.
FusionResult fuse_supports(std::span<const SimpleSupport> ssfs, std::span<const MassFunction> ms,
                           const RuleConfig& cfg) {
  if (cfg.rule == Rule::lns) return combine_lns(ssfs, cfg);
  if (cfg.rule == Rule::lnsa) return combine_lnsa(ssfs, cfg);
  return combine(ms, cfg);
}

ExperimentReport start(const char* name, const ExperimentParams& p) {
  ExperimentReport rep;
  rep.name = name;
  rep.seed = p.seed;
  rep.parameters = p.to_json();
  return rep;
}

std::vector<MassFunction> six_sources() {
  const Frame frame = Frame::with_size(3);
  const std::pair<Subset, double> spec[] = {{1, 0.12}, {1, 0.16}, {1, 0.15},
                                            {1, 0.11}, {1, 0.14}, {2, 0.95}};
  std::vector<MassFunction> out;
  for (const auto& [focal, mass] : spec) {
    const std::pair<Subset, double> fm[] = {{focal, mass}, {frame.full(), 1.0 - mass}};
    out.push_back(MassFunction::from_focal(frame, fm));
  }
  return out;
}

ExperimentReport table1(ExperimentParams p) {
  p.rules = or_default(p.rules, {Rule::conjunctive, Rule::dempster, Rule::disjunctive, Rule::dp, Rule::pcr6,
                                 Rule::cautious, Rule::average, Rule::lns, Rule::lnsa});
  const auto ms = six_sources();
  const Frame& frame = ms.front().frame();
  ExperimentReport rep = start("table1", p);

  Table main{"combination of six masses", subset_rows(frame), {}};
  for (Rule r : p.rules) {
    const auto cfg = p.rule_config(r);
    main.columns.push_back(column(std::string(to_string(r)), [&] { return combine(ms, cfg).mass; }));
    if (r == Rule::lns || r == Rule::lnsa) {
      std::ostringstream groups;
      groups << to_string(r) << " groups:";
      for (const auto& g : combine(ms, cfg).groups)
        groups << " " << frame.describe(g.focal) << " s=" << g.count << " w=" << g.inner_weight
               << " alpha=" << g.alpha;
      rep.notes.push_back(groups.str());
    }
  }
  rep.tables.push_back(std::move(main));

  Table martin{"conflict-based discounting then conjunctive, by lambda", subset_rows(frame), {}};
  for (double lambda : {0.1, 0.5, 1.0, 1.5, 2.0}) {
    martin.columns.push_back(column("lambda=" + number_label(lambda), [&] {
      const auto alpha = martin_reliability(ms, lambda);
      std::vector<MassFunction> discounted;
      for (std::size_t j = 0; j < ms.size(); ++j) discounted.push_back(discount(ms[j], alpha[j]));
      return combine_conjunctive(discounted).mass;
    }));
  }
  rep.tables.push_back(std::move(martin));
  rep.notes.push_back("conflict degree uses the mean Jousselme distance to the other sources");
  return rep;
}

ExperimentReport eta_sweep(ExperimentParams p) {
  if (p.eta_grid.empty())
    for (int i = 0; i <= 60; ++i) p.eta_grid.push_back(i / 10.0);
  p.rules = or_default(p.rules, {Rule::lns});
  const Frame frame = Frame::with_size(3);
  std::vector<SimpleSupport> ssfs;
  const std::pair<Subset, std::size_t> groups[] = {{1, 60}, {2, 50}, {6, 50}};
  for (std::size_t g = 0; g < 3; ++g) {
    const auto part = draw_supports(frame, {groups[g].first}, groups[g].second, std::nullopt, p.seed, g);
    ssfs.insert(ssfs.end(), part.begin(), part.end());
  }
  const auto ms = as_masses(ssfs);
  ExperimentReport rep = start("eta-sweep", p);
  rep.notes.push_back(kWeightNote);
  rep.notes.push_back("groups: 60 on {theta1}, 50 on {theta2}, 50 on {theta2,theta3}");

  for (Rule r : p.rules) {
    const std::string rule(to_string(r));
    std::vector<Series> masses;
    for (Subset s = 0; s <= frame.full(); ++s)
      masses.push_back({rule + " m(" + frame.describe(s) + ")", "eta", "mass", {}, {}});
    std::vector<Series> bet;
    for (int i = 0; i < 3; ++i)
      bet.push_back({rule + " BetP(" + frame.label(i) + ")", "eta", "probability", {}, {}});
    Series gap{rule + " BetP(theta1)-BetP(theta2)", "eta", "difference", {}, {}};
    for (double eta : p.eta_grid) {
      auto cfg = p.rule_config(r);
      cfg.eta = eta;
      std::optional<MassFunction> fused;
      std::optional<std::vector<double>> b;
      try {
        fused = fuse_supports(ssfs, ms, cfg).mass;
        b = pignistic(*fused).values;
      } catch (const FusionError& e) {
        rep.notes.push_back(rule + " at eta=" + number_label(eta) + ": " + e.what());
      }
      for (Subset s = 0; s <= frame.full(); ++s) {
        masses[s].x.push_back(eta);
        masses[s].y.push_back(fused ? std::optional<double>((*fused)[s]) : std::nullopt);
      }
      for (std::size_t i = 0; i < 3; ++i) {
        bet[i].x.push_back(eta);
        bet[i].y.push_back(b ? std::optional<double>((*b)[i]) : std::nullopt);
      }
      gap.x.push_back(eta);
      gap.y.push_back(b ? std::optional<double>((*b)[0] - (*b)[1]) : std::nullopt);
    }
    for (std::size_t i = 1; i < gap.x.size(); ++i) {
      if (!gap.y[i - 1] || !gap.y[i]) continue;
      const double a = *gap.y[i - 1], c = *gap.y[i];
      if (a <= 0.0 && c > 0.0) {
        const double at = gap.x[i - 1] + (gap.x[i] - gap.x[i - 1]) * (-a) / (c - a);
        rep.notes.push_back(rule + ": BetP(theta1) overtakes BetP(theta2) near eta = " + number_label(at));
      }
    }
    for (auto& s : masses) rep.series.push_back(std::move(s));
    for (auto& s : bet) rep.series.push_back(std::move(s));
    rep.series.push_back(std::move(gap));
  }
  return rep;
}

ExperimentReport conflict_sweep(ExperimentParams p) {
  p.s2_grid = or_default(p.s2_grid, {1, 2, 3, 4, 5, 10, 15, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100});
  p.t_grid = or_default(p.t_grid, {1, 2, 3, 4});
  p.rules = or_default(p.rules,
                       {Rule::conjunctive, Rule::dempster, Rule::cautious, Rule::average, Rule::lns, Rule::lnsa});
  if (p.fixed_weight && !(*p.fixed_weight >= 0.0 && *p.fixed_weight <= 1.0))
    throw FusionError(ErrorKind::parameter, "fixed weight must lie in [0, 1]");
  const Frame frame = Frame::with_size(2);
  ExperimentReport rep = start("conflict-sweep", p);
  rep.notes.push_back(p.fixed_weight ? "every support has weight " + number_label(*p.fixed_weight)
                                     : std::string(kWeightNote) + "; only singleton masses above 0.5 kept");

  for (std::size_t t : p.t_grid) {
    if (t < 1) throw FusionError(ErrorKind::parameter, "t must be at least 1");
    std::vector<Series> kappa, theta1;
    for (Rule r : p.rules) {
      const std::string suffix = std::string(to_string(r)) + " t=" + std::to_string(t);
      kappa.push_back({"kappa " + suffix, "s2", "m(empty)", {}, {}});
      theta1.push_back({"m(theta1) " + suffix, "s2", "m({theta1})", {}, {}});
    }
    std::vector<std::size_t> saturated_from(p.rules.size(), 0);
    for (std::size_t s2 : p.s2_grid) {
      std::vector<SimpleSupport> ssfs;
      if (p.fixed_weight) {
        ssfs.assign(t * s2, SimpleSupport(frame, 1, *p.fixed_weight));
        ssfs.insert(ssfs.end(), s2, SimpleSupport(frame, 2, *p.fixed_weight));
      } else {
        const std::uint64_t stream = 2 * (1000 * t + s2);
        ssfs = draw_supports(frame, {1}, t * s2, 0.5, p.seed, stream);
        const auto minority = draw_supports(frame, {2}, s2, 0.5, p.seed, stream + 1);
        ssfs.insert(ssfs.end(), minority.begin(), minority.end());
      }
      const auto ms = as_masses(ssfs);
      for (std::size_t k = 0; k < p.rules.size(); ++k) {
        kappa[k].x.push_back(static_cast<double>(s2));
        theta1[k].x.push_back(static_cast<double>(s2));
        try {
          const auto fused = fuse_supports(ssfs, ms, p.rule_config(p.rules[k])).mass;
          kappa[k].y.push_back(fused[0]);
          theta1[k].y.push_back(fused[1]);
        } catch (const FusionError& e) {
          kappa[k].y.push_back(std::nullopt);
          theta1[k].y.push_back(std::nullopt);
          if (e.kind() == ErrorKind::total_conflict) {
            if (saturated_from[k] == 0) saturated_from[k] = s2;
          } else {
            rep.notes.push_back(kappa[k].name + " at s2=" + std::to_string(s2) + ": " + e.what());
          }
        }
      }
    }
    for (std::size_t k = 0; k < p.rules.size(); ++k)
      if (saturated_from[k] != 0)
        rep.notes.push_back(std::string(to_string(p.rules[k])) + " saturated (total conflict) for t=" +
                            std::to_string(t) + " from s2=" + std::to_string(saturated_from[k]));
    for (auto& s : kappa) rep.series.push_back(std::move(s));
    for (auto& s : theta1) rep.series.push_back(std::move(s));
  }
  return rep;
}

ExperimentReport timing(ExperimentParams p) {
  p.sources = or_default(p.sources, {10000, 25000, 50000, 75000, 100000});
  p.rules = or_default(p.rules, {Rule::conjunctive, Rule::average, Rule::cautious, Rule::lns, Rule::lnsa});
  p.inputs = or_default(p.inputs, {"ssf", "consonant"});
  if (p.repeats < 1) throw FusionError(ErrorKind::parameter, "repeats must be at least 1");
  if (p.frame_size < 1 || p.frame_size > kMaxFrameSize)
    throw FusionError(ErrorKind::parameter, "frame size out of range");
  const Frame frame = Frame::with_size(p.frame_size);
  ExperimentReport rep = start("timing", p);
  rep.notes.push_back("median of " + std::to_string(p.repeats) + " runs after one warm-up, steady clock");

  for (const auto& input : p.inputs) {
    if (input != "ssf" && input != "consonant")
      throw FusionError(ErrorKind::parameter, "unknown timing input '" + input + "'");
    const bool ssf = input == "ssf";
    std::vector<Series> per_rule;
    for (Rule r : p.rules) per_rule.push_back({input + " " + std::string(to_string(r)), "S", "seconds", {}, {}});
    const char* steps[] = {"decompose", "inner-combine", "discount", "global-combine"};
    std::vector<Series> per_step;
    if (!ssf)
      for (const char* s : steps) per_step.push_back({input + " lns step " + s, "S", "seconds", {}, {}});

    for (std::size_t count : p.sources) {
      std::vector<SimpleSupport> supports;
      std::vector<MassFunction> ms;
      if (ssf) {
        supports = draw_supports(frame, {}, count, std::nullopt, p.seed, count);
        ms = as_masses(supports);
      } else {
        const auto chain = std::min<std::size_t>(5, static_cast<std::size_t>(p.frame_size));
        Generator gen(GenSpec{frame, GenKind::consonant, {}, chain, std::nullopt, p.seed}, count);
        ms.reserve(count);
        for (std::size_t i = 0; i < count; ++i) ms.push_back(gen.next());
      }
      for (std::size_t k = 0; k < p.rules.size(); ++k) {
        const auto cfg = p.rule_config(p.rules[k]);
        per_rule[k].x.push_back(static_cast<double>(count));
        try {
          const double sec = median_seconds(p.repeats, [&] {
            if (ssf) fuse_supports(supports, ms, cfg);
            else combine(ms, cfg);
          });
          per_rule[k].y.push_back(sec);
          rep.timings[per_rule[k].name + " S=" + std::to_string(count)] = sec;
        } catch (const FusionError& e) {
          per_rule[k].y.push_back(std::nullopt);
          rep.notes.push_back(per_rule[k].name + " at S=" + std::to_string(count) + ": " + e.what());
        }
      }
      if (!ssf) {
        std::vector<std::vector<double>> runs(4);
        const auto cfg = p.rule_config(Rule::lns);
        for (int r = 0; r <= p.repeats; ++r) {
          LnsStepTimings t;
          combine_lns(std::span<const MassFunction>(ms), cfg, &t);
          if (r == 0) continue;  // warm-up
          runs[0].push_back(t.decompose);
          runs[1].push_back(t.inner_combine);
          runs[2].push_back(t.discount);
          runs[3].push_back(t.global_combine);
        }
        for (std::size_t s = 0; s < 4; ++s) {
          per_step[s].x.push_back(static_cast<double>(count));
          per_step[s].y.push_back(median(runs[s]));
          rep.timings[per_step[s].name + " S=" + std::to_string(count)] = *per_step[s].y.back();
        }
      }
    }
    for (auto& s : per_rule) rep.series.push_back(std::move(s));
    for (auto& s : per_step) rep.series.push_back(std::move(s));
  }
  return rep;
}

ExperimentReport eknn_sweep(ExperimentParams p) {
  if (p.k_grid.empty())
    for (std::size_t k = 1; k <= 25; ++k) p.k_grid.push_back(k);
  p.rules = or_default(p.rules, {Rule::conjunctive, Rule::dempster, Rule::lns});
  const LabeledDataset ds = p.dataset ? read_dataset_csv(std::filesystem::path(*p.dataset))
                                      : two_gaussians(p.points, p.separation, p.seed);
  ExperimentReport rep = start("eknn-sweep", p);
  rep.notes.push_back(p.dataset ? "dataset " + *p.dataset
                                : "two Gaussian classes, " + std::to_string(p.points) + " points, means " +
                                      number_label(p.separation) + " sigma apart");
  rep.notes.push_back("gamma per class = 1 / mean distance over unordered same-class pairs");

  for (Rule r : p.rules) {
    const std::string rule(to_string(r));
    Series acc{rule + " accuracy", "K", "leave-one-out accuracy", {}, {}};
    Series max_k{rule + " max kappa", "K", "max m(empty)", {}, {}};
    Series mean_k{rule + " mean kappa", "K", "mean m(empty)", {}, {}};
    for (std::size_t k : p.k_grid) {
      EknnConfig cfg;
      cfg.k = k;
      cfg.alpha = p.alpha;
      cfg.fusion = p.rule_config(r);
      acc.x.push_back(static_cast<double>(k));
      max_k.x.push_back(static_cast<double>(k));
      mean_k.x.push_back(static_cast<double>(k));
      try {
        const auto loo = evaluate_loo(ds, cfg);
        double mean = 0.0;
        for (double c : loo.conflict) mean += c / static_cast<double>(loo.conflict.size());
        acc.y.push_back(loo.accuracy);
        max_k.y.push_back(loo.max_conflict);
        mean_k.y.push_back(mean);
        if (!loo.failures.empty())
          rep.notes.push_back(rule + " K=" + std::to_string(k) + ": " + std::to_string(loo.failures.size()) +
                              " samples saturated");
      } catch (const FusionError& e) {
        acc.y.push_back(std::nullopt);
        max_k.y.push_back(std::nullopt);
        mean_k.y.push_back(std::nullopt);
        rep.notes.push_back(rule + " K=" + std::to_string(k) + ": " + e.what());
      }
    }
    rep.series.push_back(std::move(acc));
    rep.series.push_back(std::move(max_k));
    rep.series.push_back(std::move(mean_k));
  }
  return rep;
}

}  // namespace

const std::vector<std::string_view>& experiment_names() {
  static const std::vector<std::string_view> names{"table1", "eta-sweep", "conflict-sweep", "timing",
                                                   "eknn-sweep"};
  return names;
}

ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params) {
  if (name == "table1") return table1(params);
  if (name == "eta-sweep") return eta_sweep(params);
  if (name == "conflict-sweep") return conflict_sweep(params);
  if (name == "timing") return timing(params);
  if (name == "eknn-sweep") return eknn_sweep(params);
  throw FusionError(ErrorKind::parameter, "unknown experiment '" + std::string(name) +
                                              "'; choose table1, eta-sweep, conflict-sweep, timing or eknn-sweep");
}

}  // namespace lns
