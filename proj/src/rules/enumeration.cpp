// Rules whose partial-conflict bookkeeping has no commonality shortcut.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "lns/errors.hpp"
#include "lns/rules.hpp"

namespace lns {

namespace {

struct Focal {
  Subset set;
  double mass;
};

std::vector<std::vector<Focal>> focal_lists(std::span<const MassFunction> ms) {
  std::vector<std::vector<Focal>> lists;
  lists.reserve(ms.size());
  for (const auto& m : ms) {
    auto& list = lists.emplace_back();
    for (Subset s : m.focal_elements()) list.push_back({s, m[s]});
  }
  return lists;
}

void enforce_guard(const std::vector<std::vector<Focal>>& lists, std::uint64_t guard,
                   std::string_view rule) {
  std::uint64_t tuples = 1;
  for (const auto& l : lists) {
    const std::uint64_t k = l.size();
    if (k != 0 && tuples > guard / k)
      throw FusionError(ErrorKind::complexity_guard,
                        std::string(rule) + " would enumerate more than " + std::to_string(guard) +
                            " focal tuples; use the lns or lnsa rule for many sources");
    tuples *= k;
  }
}

// Visits every focal tuple with its intersection and product mass, reusing
// prefix results odometer-style.
template <typename Fn>
void for_each_tuple(const std::vector<std::vector<Focal>>& lists, Fn&& fn) {
  const std::size_t sources = lists.size();
  std::vector<std::size_t> pick(sources, 0);
  std::vector<Subset> meet(sources + 1, ~Subset{0});
  std::vector<double> product(sources + 1, 1.0);
  std::size_t depth = 0;
  while (true) {
    for (; depth < sources; ++depth) {
      const Focal& f = lists[depth][pick[depth]];
      meet[depth + 1] = meet[depth] & f.set;
      product[depth + 1] = product[depth] * f.mass;
    }
    fn(pick, meet[sources], product[sources]);
    std::size_t j = sources;
    while (true) {
      if (j == 0) return;
      --j;
      if (++pick[j] < lists[j].size()) break;
      pick[j] = 0;
    }
    depth = j;
  }
}

}  // namespace

FusionResult combine_dp(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  const Frame& frame = common_frame(ms);
  const auto lists = focal_lists(ms);
  enforce_guard(lists, cfg.enumeration_guard, "dp");

  const std::size_t n = frame.size();
  const std::size_t words = (lists.size() + 63) / 64;
  // holders[i] is the set of sources whose chosen focal set contains theta_i.
  std::vector<std::uint64_t> holders(n * words);
  auto strictly_below = [&](std::size_t i, std::size_t k) {
    bool proper = false;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t a = holders[i * words + w], b = holders[k * words + w];
      if ((a & ~b) != 0) return false;
      proper = proper || a != b;
    }
    return proper;
  };

  std::vector<double> out(frame.powerset_size(), 0.0);
  for_each_tuple(lists, [&](const std::vector<std::size_t>& pick, Subset meet, double p) {
    if (meet != 0) {
      out[meet] += p;
      return;
    }
    // A conflicting tuple goes to the union of the intersections of its
    // maximal consistent groups of sources; for two sources that is the union.
    std::fill(holders.begin(), holders.end(), 0);
    Subset joined = 0;
    for (std::size_t j = 0; j < lists.size(); ++j) {
      const Subset set = lists[j][pick[j]].set;
      joined |= set;
      for (std::size_t i = 0; i < n; ++i)
        if (set >> i & 1u) holders[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
    Subset target = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(joined >> i & 1u)) continue;
      bool maximal = true;
      for (std::size_t k = 0; k < n && maximal; ++k)
        if (k != i && (joined >> k & 1u) && strictly_below(i, k)) maximal = false;
      if (maximal) target |= Subset{1} << i;
    }
    out[target] += p;
  });
  auto m = MassFunction::from_computed(frame, std::move(out));
  const double kappa = m.conflict();
  return {std::move(m), kappa, {}};
}

FusionResult combine_pcr6(std::span<const MassFunction> ms, const RuleConfig& cfg) {
  const Frame& frame = common_frame(ms);
  for (std::size_t j = 0; j < ms.size(); ++j)
    if (!ms[j].is_normal())
      throw FusionError(ErrorKind::parameter,
                        "pcr6 needs normal inputs; source " + std::to_string(j) + " has m(empty) > 0");
  if (ms.size() == 1) return {ms.front(), 0.0, {}};
  const auto lists = focal_lists(ms);
  enforce_guard(lists, cfg.enumeration_guard, "pcr6");

  std::vector<double> out(frame.powerset_size(), 0.0);
  for_each_tuple(lists, [&](const std::vector<std::size_t>& pick, Subset meet, double p) {
    if (meet != 0) {
      out[meet] += p;
      return;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < lists.size(); ++j) total += lists[j][pick[j]].mass;
    const double scale = p / total;
    for (std::size_t j = 0; j < lists.size(); ++j) {
      const Focal& f = lists[j][pick[j]];
      out[f.set] += f.mass * scale;
    }
  });
  return {MassFunction::from_computed(frame, std::move(out)), 0.0, {}};
}

}  // namespace lns
