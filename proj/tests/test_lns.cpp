#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "lns/errors.hpp"
#include "lns/lns_rule.hpp"
#include "lns/transform.hpp"
#include "oracle.hpp"

using namespace lns;

namespace {

const Frame kFrame2 = Frame::with_size(2);
const Frame kFrame3 = Frame::with_size(3);

void expect_mass(const MassFunction& m, std::vector<double> want, double tol) {
  ASSERT_EQ(m.size(), want.size());
  for (Subset a = 0; a < want.size(); ++a) EXPECT_NEAR(m[a], want[a], tol) << "subset " << a;
}

RuleConfig deterministic(double eta = 1.0) {
  RuleConfig cfg;
  cfg.eta = eta;
  cfg.deterministic = true;
  return cfg;
}

std::vector<SimpleSupport> majority(int t, int s2, double w) {
  std::vector<SimpleSupport> out;
  for (int i = 0; i < t * s2; ++i) out.emplace_back(kFrame2, 1, w);
  for (int i = 0; i < s2; ++i) out.emplace_back(kFrame2, 2, w);
  return out;
}

}  // namespace

TEST(LnsGroup, SixSources) {
  const auto ms = fixtures::six_sources();
  const auto ssfs = to_simple_supports(ms);
  ASSERT_EQ(ssfs.size(), 6u);
  const auto groups = lns_group(ssfs);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].focal, 1u);
  EXPECT_EQ(groups[0].count, 5u);
  EXPECT_NEAR(groups[0].inner_weight, 0.88 * 0.84 * 0.85 * 0.89 * 0.86, 1e-15);
  EXPECT_NEAR(groups[0].inner_weight, 0.480916, 1e-6);
  EXPECT_NEAR(groups[0].alpha, 5.0 / 6.0, 1e-15);
  EXPECT_EQ(groups[1].focal, 2u);
  EXPECT_NEAR(groups[1].inner_weight, 0.05, 1e-15);
  EXPECT_NEAR(groups[1].alpha, 1.0 / 6.0, 1e-15);
}

TEST(LnsGroup, AllVacuous) {
  std::vector<SimpleSupport> ssfs(3, SimpleSupport(kFrame3, 7, 0.4));
  ssfs.emplace_back(kFrame3, 2, 1.0);
  const auto groups = lns_group(ssfs);
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].focal, 7u);
  EXPECT_EQ(groups[0].count, 4u);
  EXPECT_EQ(groups[0].alpha, 0.0);
  EXPECT_TRUE(combine_lns(ssfs).mass.is_vacuous());
}

TEST(LnsGroup, PrecisionWeighting) {
  std::vector<SimpleSupport> ssfs{{kFrame3, 1, 0.5}, {kFrame3, 1, 0.5}, {kFrame3, 6, 0.5}, {kFrame3, 6, 0.5}};
  auto groups = lns_group(ssfs, {.eta = 1.0});
  EXPECT_NEAR(groups[0].alpha, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(groups[1].alpha, 1.0 / 3.0, 1e-15);
  groups = lns_group(ssfs, {.eta = 0.0});
  EXPECT_NEAR(groups[0].alpha, 0.5, 1e-15);
}

TEST(LnsGroup, VacuousDenominatorSwitch) {
  std::vector<SimpleSupport> ssfs{{kFrame2, 1, 0.5}, {kFrame2, 3, 0.5}};
  EXPECT_EQ(lns_group(ssfs)[0].alpha, 1.0);
  EXPECT_NEAR(lns_group(ssfs, {.count_vacuous_in_denominator = true})[0].alpha, 2.0 / 3.0, 1e-15);
}

TEST(LnsGroup, EmptySetGroupNeedsZeroEta) {
  std::vector<SimpleSupport> ssfs{{kFrame2, 0, 0.5}, {kFrame2, 1, 0.5}};
  EXPECT_THROW(lns_group(ssfs), FusionError);
  EXPECT_NO_THROW(lns_group(ssfs, {.eta = 0.0}));
  EXPECT_THROW(lns_group(std::vector<SimpleSupport>{}), FusionError);
}

TEST(Lns, SixSourcesColumn) {
  auto r = combine_lns(fixtures::six_sources(), deterministic());
  expect_mass(r.mass, {0.06849, 0.36408, 0.08984, 0, 0, 0, 0, 0.47759}, 1e-5);
  EXPECT_EQ(r.conflict, r.mass[0]);
  EXPECT_EQ(r.groups.size(), 2u);
  const auto bet = pignistic(r.mass).values;
  EXPECT_GT(bet[0], bet[1]);
  // Singleton focal sets make eta irrelevant.
  auto r0 = combine_lns(fixtures::six_sources(), deterministic(0.0));
  EXPECT_LE(oracle::max_abs_diff(r0.mass.values(), r.mass.values()), 1e-15);
}

TEST(Lns, FourToOneMajority) {
  std::vector<SimpleSupport> ssfs(4, SimpleSupport(kFrame2, 1, 0.7));
  ssfs.emplace_back(kFrame2, 2, 0.7);
  expect_mass(combine_lns(ssfs, deterministic()).mass, {0.0364752, 0.5714448, 0.0235248, 0.3685552}, 1e-12);
  expect_mass(combine_lnsa(ssfs, deterministic()).mass, {0.16, 0.64, 0.04, 0.16}, 1e-12);
}

TEST(Lns, VacuousIsNeutral) {
  auto ms = fixtures::six_sources();
  const auto base = combine_lns(ms, deterministic()).mass;
  for (int k = 0; k < 5; ++k) ms.push_back(MassFunction::vacuous(kFrame3));
  ms.push_back(SimpleSupport(kFrame3, 3, 1.0).to_mass());
  EXPECT_LE(oracle::max_abs_diff(combine_lns(ms, deterministic()).mass.values(), base.values()), 1e-12);
  const auto base_a = combine_lnsa(fixtures::six_sources(), deterministic()).mass;
  EXPECT_LE(oracle::max_abs_diff(combine_lnsa(ms, deterministic()).mass.values(), base_a.values()), 1e-12);
}

TEST(Lnsa, SingleGroupIsCategorical) {
  std::vector<SimpleSupport> ssfs{{kFrame3, 6, 0.2}, {kFrame3, 6, 0.9}, {kFrame3, 6, 0.5}};
  auto r = combine_lnsa(ssfs, deterministic());
  EXPECT_EQ(r.mass[6], 1.0);
}

TEST(Lnsa, DiffersFromLnsOnFewSourcesWithSameAlphas) {
  const auto lns_r = combine_lns(fixtures::six_sources(), deterministic());
  const auto lnsa_r = combine_lnsa(fixtures::six_sources(), deterministic());
  EXPECT_GT(oracle::max_abs_diff(lns_r.mass.values(), lnsa_r.mass.values()), 0.05);
  ASSERT_EQ(lnsa_r.groups.size(), lns_r.groups.size());
  for (std::size_t k = 0; k < lns_r.groups.size(); ++k)
    EXPECT_EQ(lnsa_r.groups[k].alpha, lns_r.groups[k].alpha);
}

TEST(Lns, SeparableInputsAreDecomposed) {
  // theta1^0.5 (x) {theta1,theta2}^0.4 as one consonant bba equals feeding
  // the two supports separately.
  const std::vector<SimpleSupport> parts{{kFrame3, 1, 0.5}, {kFrame3, 3, 0.4}};
  std::vector<MassFunction> as_masses{parts[0].to_mass(), parts[1].to_mass()};
  const auto joint = combine_conjunctive(as_masses).mass;
  const auto split = combine_lns(parts, deterministic());
  const auto merged = combine_lns(std::vector{joint}, deterministic());
  EXPECT_LE(oracle::max_abs_diff(split.mass.values(), merged.mass.values()), 1e-12);
  ASSERT_EQ(merged.groups.size(), 2u);
  EXPECT_NEAR(merged.groups[1].inner_weight, 0.4, 1e-12);
}

TEST(Lns, NotSeparableNamesSubset) {
  std::vector<MassFunction> ms{fixtures::mass(kFrame2, {0.0, 0.4, 0.2, 0.4})};
  try {
    combine_lns(ms, deterministic());
    FAIL();
  } catch (const FusionError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_separable);
    EXPECT_NE(std::string(e.what()).find("{}"), std::string::npos);
  }
}

TEST(Lns, AlternativeGlobalRule) {
  RuleConfig cfg = deterministic();
  const auto conj = combine_lns(fixtures::six_sources(), cfg).mass;
  cfg.global_rule = Rule::dempster;
  const auto dem = combine_lns(fixtures::six_sources(), cfg);
  EXPECT_LE(oracle::max_abs_diff(dem.mass.values(), normalize_conflict(conj).values()), 1e-15);
  cfg.global_rule = Rule::pcr6;
  EXPECT_EQ(combine_lns(fixtures::six_sources(), cfg).mass[0], 0.0);
}

TEST(Lns, StepTimingsArePopulated) {
  LnsStepTimings t;
  combine_lns(fixtures::six_sources(), deterministic(), &t);
  EXPECT_GE(t.decompose, 0.0);
  EXPECT_GE(t.inner_combine, 0.0);
  EXPECT_GE(t.global_combine, 0.0);
}

TEST(LnsProperties, EtaShiftsWeightTowardSpecificGroups) {
  std::vector<SimpleSupport> ssfs;
  for (int i = 0; i < 3; ++i) ssfs.emplace_back(kFrame3, 1, 0.4);
  for (int i = 0; i < 7; ++i) ssfs.emplace_back(kFrame3, 6, 0.4);
  double prev1 = -1.0, prev2 = 2.0;
  for (double eta = 0.0; eta <= 6.0; eta += 0.25) {
    const auto g = lns_group(ssfs, {.eta = eta});
    EXPECT_GE(g[0].alpha, prev1);
    EXPECT_LE(g[1].alpha, prev2);
    prev1 = g[0].alpha;
    prev2 = g[1].alpha;
  }
}

TEST(LnsProperties, MajorityMonotonicity) {
  for (int s2 : {1, 5, 20, 60}) {
    double prev_theta1[2] = {-1.0, -1.0};
    double prev_kappa[2] = {2.0, 2.0};
    for (int t = 1; t <= 4; ++t) {
      const auto ssfs = majority(t, s2, 0.7);
      const FusionResult rs[2] = {combine_lns(ssfs, deterministic()), combine_lnsa(ssfs, deterministic())};
      for (int k = 0; k < 2; ++k) {
        EXPECT_GT(rs[k].mass[1], prev_theta1[k]);
        // LNS keeps part of each group's inner product, so its conflict only
        // falls once the minority group is large enough (0.7^s2 < 1/8).
        if (k == 1 || s2 >= 6) {
          EXPECT_LT(rs[k].conflict, prev_kappa[k]);
        }
        prev_theta1[k] = rs[k].mass[1];
        prev_kappa[k] = rs[k].conflict;
      }
      const double a1 = t / (t + 1.0);
      const double a2 = 1.0 / (t + 1.0);
      EXPECT_NEAR(rs[1].conflict, a1 * a2, 1e-15);
      EXPECT_NEAR(rs[1].mass[1], a1 * (1.0 - a2), 1e-15);
    }
  }
}

TEST(LnsProperties, ConvergesToApproximation) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SimpleSupport> ssfs;
    for (int i = 0; i < 200 + trial * 10; ++i) ssfs.emplace_back(kFrame3, 1, u(rng));
    for (int i = 0; i < 200 + trial * 7; ++i) ssfs.emplace_back(kFrame3, 6, u(rng));
    const auto a = combine_lns(ssfs, deterministic());
    const auto b = combine_lnsa(ssfs, deterministic());
    EXPECT_LE(oracle::max_abs_diff(a.mass.values(), b.mass.values()), 1e-9);
  }
}

TEST(LnsProperties, Commutativity) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SimpleSupport> ssfs;
  for (int i = 0; i < 40; ++i) ssfs.emplace_back(kFrame3, static_cast<Subset>(1 + rng() % 7), u(rng));
  const auto base = combine_lns(ssfs, deterministic()).mass;
  for (int k = 0; k < 5; ++k) {
    std::shuffle(ssfs.begin(), ssfs.end(), rng);
    EXPECT_LE(oracle::max_abs_diff(combine_lns(ssfs, deterministic()).mass.values(), base.values()), 1e-12);
  }
}

TEST(LnsProperties, ConjunctiveAbsorbsWhereLnsDoesNot) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  std::vector<SimpleSupport> ssfs;
  std::vector<MassFunction> ms;
  for (int i = 0; i < 100; ++i) {
    ssfs.emplace_back(kFrame2, i < 60 ? 1 : 2, u(rng));
    ms.push_back(ssfs.back().to_mass());
  }
  EXPECT_GE(combine_conjunctive(ms).conflict, 1.0 - 1e-9);
  EXPECT_THROW(combine_dempster(ms), FusionError);
  const auto r = combine_lns(ssfs, deterministic());
  EXPECT_LE(r.conflict, 0.9);
  EXPECT_GT(r.mass[1], r.mass[2]);
}
