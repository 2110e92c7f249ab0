#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "frax/carleson.hpp"
#include "frax/catalog.hpp"
#include "frax/errors.hpp"
#include "frax/field.hpp"
#include "support/generators.hpp"

namespace frax {
namespace {

using testing::small_grid;

DiscreteMeasure single_atom(int n, Point x, double t, double w) {
  DiscreteMeasure mu;
  mu.n = n;
  mu.atoms.push_back({x, t, w});
  return mu;
}

TEST(Sets, MembershipIsClosed) {
  const OpenSet b = OpenSet::single(Ball{{0.0, 0.0, 0.0}, 1.0});
  EXPECT_TRUE(b.contains(2, {1.0, 0.0, 0.0}));
  EXPECT_FALSE(b.contains(2, {1.0, 0.1, 0.0}));
  const OpenSet box = OpenSet::make_box(Box{{-1.0, 0.0, 0.0}, {1.0, 2.0, 0.0}});
  EXPECT_TRUE(box.contains(2, {1.0, 2.0, 0.0}));
  EXPECT_FALSE(box.contains(2, {1.0, 2.1, 0.0}));
  EXPECT_THROW(OpenSet::single(Ball{{0.0, 0.0, 0.0}, -1.0}).validate(1), ParameterError);
}

TEST(Tents, BallAndBoxAreExact) {
  const OpenSet b = OpenSet::single(Ball{{0.0, 0.0, 0.0}, 2.0});
  EXPECT_TRUE(tent_contains(b, 2, {1.0, 0.0, 0.0}, 1.0));
  EXPECT_FALSE(tent_contains(b, 2, {1.0, 0.0, 0.0}, 1.01));
  EXPECT_FALSE(tent_is_approximate(b));
  const OpenSet box = OpenSet::make_box(Box{{0.0, 0.0, 0.0}, {4.0, 0.0, 0.0}});
  EXPECT_TRUE(tent_contains(box, 1, {2.0, 0.0, 0.0}, 2.0));
  EXPECT_FALSE(tent_contains(box, 1, {1.0, 0.0, 0.0}, 1.5));
  const OpenSet u = OpenSet::ball_union({Ball{{0.0, 0.0, 0.0}, 1.0}, Ball{{1.5, 0.0, 0.0}, 1.0}});
  EXPECT_TRUE(tent_is_approximate(u));
  EXPECT_TRUE(tent_contains(u, 1, {0.75, 0.0, 0.0}, 1.5));
}

TEST(Hausdorff, DyadicCosts) {
  EXPECT_DOUBLE_EQ(dyadic_ball_cost(0.5, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(dyadic_ball_cost(0.3, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(dyadic_ball_cost(0.25, 2.0), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(ball_capacity_surrogate(4.0, 2, 1.0, 0.5), 8.0);
}

TEST(Hausdorff, BallScalingExponent) {
  // H^infty_d of a ball of radius r behaves like r^d
  for (int n : {1, 2}) {
    const double d = n - 0.5;
    std::vector<double> lr, lh;
    for (int k = 1; k <= 6; ++k) {
      const double r = std::ldexp(1.0, -k);
      lr.push_back(std::log(r));
      lh.push_back(std::log(hausdorff_content(OpenSet::single(Ball{{0.1, 0.1, 0.0}, r}), n, d).value));
    }
    const double slope = (lh.back() - lh.front()) / (lr.back() - lr.front());
    EXPECT_NEAR(slope, d, 0.1 * d) << "n=" << n;
  }
}

TEST(Condition, SingleAtomSupIsOne) {
  const CapacityParams cp{1.0, 1.0, 2.0, 0.5};
  const ConditionResult r = condition_vi(single_atom(1, {0.0, 0.0, 0.0}, 1.0, 1.0), cp);
  EXPECT_NEAR(r.sup, 1.0, 1e-12);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(r.witness->radius, 1.0, 1e-12);
}

TEST(Condition, FamilyConditionUsesHausdorffContent) {
  const CapacityParams cp{1.0, 1.0, 1.0, 0.5};
  const DiscreteMeasure mu = single_atom(1, {0.0, 0.0, 0.0}, 0.25, 2.0);
  const std::vector<OpenSet> fam{OpenSet::single(Ball{{0.0, 0.0, 0.0}, 0.5})};
  const ConditionResult r = condition_v(mu, cp, fam);
  EXPECT_NEAR(r.sup, 2.0 / hausdorff_content(fam[0], 1, 0.5).value, 1e-12);
  EXPECT_EQ(r.witness_index.value_or(99), 0u);
}

TEST(Condition, CaseWindows) {
  EXPECT_NO_THROW(require_case({1.0, 1.0, 2.0, 0.5}, 1, CapacityCase::case1));
  EXPECT_THROW(require_case({1.0, 2.0, 2.0, 0.5}, 1, CapacityCase::case1), ParameterError);
  EXPECT_NO_THROW(require_case({1.5, 2.0, 2.0, 0.5}, 1, CapacityCase::case2));
  EXPECT_NO_THROW(require_case({1.5, kInfinity, 2.0, 0.5}, 1, CapacityCase::case3));
  EXPECT_EQ(parse_case(case_name(CapacityCase::case3)), CapacityCase::case3);
  const auto [m, s] = lorentz_indices({1.0, 1.0, 3.0, 0.5}, CapacityCase::case1);
  EXPECT_EQ(m, 3.0);
  EXPECT_EQ(s, 1.0);
}

TEST(Atoms, GridAndOffGridPathsAgree) {
  Params prm;
  prm.s = 0.7;
  const GridSpec g = small_grid(1, 10.0, 128, 3, 0.5, 2.0);
  const GridFunction f = GridFunction::sample(g, gaussian(1.0));
  DiscreteMeasure mu;
  mu.n = 1;
  mu.atoms.push_back({{0.0, 0.0, 0.0}, 0.5, 1.0});
  mu.atoms.push_back({{1e-7, 0.0, 0.0}, 0.5, 1.0});
  const auto u = extension_at_atoms(f, prm, mu);
  EXPECT_NEAR(u[0], u[1], 1e-8);
  const ExtensionField full = extend(f, prm);
  EXPECT_NEAR(u[0], full.level(0)[64], 1e-13);
}

TEST(GridTents, MaskLogic) {
  const GridSpec g = small_grid(1, 8.0, 16);
  std::vector<char> mask(g.size(), 1);
  EXPECT_TRUE(grid_tent_contains(mask, g, 8, 3.0));
  mask[10] = 0;  // two cells away
  EXPECT_TRUE(grid_tent_contains(mask, g, 8, 1.5));
  EXPECT_FALSE(grid_tent_contains(mask, g, 8, 2.5));
}

TEST(Embedding, ReportCarriesConditionAndRatios) {
  Params prm;
  prm.p = prm.q = 1.0;
  prm.beta = 0.5;
  prm.q0 = 2.0;
  const GridSpec g = small_grid(1, 16.0, 128, 3);
  DiscreteMeasure mu;
  mu.n = 1;
  for (int i = -3; i <= 3; ++i) mu.atoms.push_back({{static_cast<double>(i), 0.0, 0.0}, 1.0, 1.0});
  const Report r = embedding_test(mu, prm, {sample_catalog("gaussian", g), sample_catalog("bump", g)}, CapacityCase::case1);
  EXPECT_EQ(r.status, Status::pass);
  EXPECT_GT(r.ratio, 0.0);
  int ratios = 0;
  for (const auto& [k, v] : r.values) ratios += k.rfind("ratio#", 0) == 0;
  EXPECT_EQ(ratios, 2);
}

// Properties

TEST(CarlesonProperty, ConditionScalesWithMass) {
  testing::Gen gen(51);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(1, 2);
    DiscreteMeasure mu = gen.measure(n, gen.integer(1, 12), 3.0);
    const CapacityParams cp{1.0, 1.0, gen.uniform(1.0, 4.0), gen.uniform(0.2, 0.9)};
    const double a = condition_vi(mu, cp).sup;
    const double c = gen.log_uniform(0.1, 10.0);
    for (auto& atom : mu.atoms) atom.w *= c;
    EXPECT_NEAR(condition_vi(mu, cp).sup / a, std::pow(c, cp.p / cp.q0), 1e-10);
  }
}

TEST(CarlesonProperty, TentMeasureGrowsWithNestedBalls) {
  testing::Gen gen(52);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(1, 3);
    const DiscreteMeasure mu = gen.measure(n, 20, 3.0);
    const Ball b = gen.ball(n, 3.0);
    const Ball bigger{b.center, b.radius * gen.uniform(1.0, 2.0)};
    EXPECT_LE(tent_measure(mu, OpenSet::single(b)), tent_measure(mu, OpenSet::single(bigger)) + 1e-12);
  }
}

TEST(CarlesonProperty, MinimizingFunctionIsNondecreasing) {
  testing::Gen gen(53);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = gen.integer(1, 2);
    const DiscreteMeasure mu = gen.measure(n, 15, 2.0);
    std::vector<OpenSet> fam;
    for (int i = 0; i < 8; ++i) fam.push_back(OpenSet::single(gen.ball(n, 3.0)));
    std::vector<double> lambdas;
    for (int i = 0; i < 12; ++i) lambdas.push_back(0.05 * std::pow(1.6, i));
    const CapacityParams cp{1.0, 1.0, 2.0, 0.5};
    const MinimizingFunction mf = minimizing_function(mu, cp, lambdas, fam);
    for (std::size_t i = 1; i < mf.values.size(); ++i) EXPECT_GE(mf.values[i], mf.values[i - 1]);
  }
}

TEST(CarlesonProperty, HausdorffTrendNeverIncreases) {
  testing::Gen gen(54);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(1, 2);
    std::vector<Ball> balls;
    for (int i = 0, m = gen.integer(1, 4); i < m; ++i) balls.push_back(gen.ball(n, 1.0));
    const HausdorffResult h = hausdorff_content(OpenSet::ball_union(balls), n, gen.uniform(0.2, n - 0.1), 8);
    for (std::size_t i = 1; i < h.trend.size(); ++i) EXPECT_LE(h.trend[i], h.trend[i - 1] + 1e-15);
    EXPECT_LE(h.value, h.trend.front() + 1e-15);
  }
}

TEST(CarlesonProperty, SuperlevelAtomsLieInGridTents) {
  testing::Gen gen(55);
  for (int trial = 0; trial < 4; ++trial) {
    Params prm;
    prm.s = gen.order();
    const GridSpec g = small_grid(1, 8.0, 64, 9, 0.1, 4.0);
    const ExtensionField u = extend(GridFunction::sample(g, gen.smooth_datum(1)), prm);
    const GridFunction nt = nontangential_max(u);
    const double lambda = gen.uniform(0.1, 0.9) * lp_norm(nt, kInfinity);
    const auto mask = superlevel_mask(nt, lambda);
    const auto levels = g.levels();
    for (int j = 0; j < g.t_count; ++j) {
      const auto lv = u.level(j);
      for (std::size_t i = 0; i < lv.size(); ++i) {
        if (std::abs(lv[i]) > lambda) EXPECT_TRUE(grid_tent_contains(mask, g, i, levels[static_cast<std::size_t>(j)]));
      }
    }
  }
}

// Documented sample points

TEST(CarlesonCases, TentMembership) {
  const OpenSet b = OpenSet::single(Ball{{0.0, 0.0, 0.0}, 1.0});
  EXPECT_TRUE(tent_contains(b, 1, {0.0, 0.0, 0.0}, 0.5));
  EXPECT_FALSE(tent_contains(b, 1, {0.6, 0.0, 0.0}, 0.5));
  const OpenSet u = OpenSet::ball_union({Ball{{-1.0, 0.0, 0.0}, 1.0}, Ball{{1.0, 0.0, 0.0}, 1.0}});
  for (const auto& [x, t] : std::vector<std::pair<double, double>>{{0.0, 0.9}, {0.5, 1.6}, {-1.0, 0.95}, {1.5, 0.6}}) {
    bool inside = true;
    for (int i = 0; i <= 10000; ++i) inside = inside && u.contains(1, {x - t + 2.0 * t * i / 10000.0, 0.0, 0.0});
    EXPECT_EQ(tent_contains(u, 1, {x, 0.0, 0.0}, t), inside) << x << " " << t;
  }
}

TEST(CarlesonCases, TentMeasure) {
  const OpenSet b = OpenSet::single(Ball{{0.0, 0.0, 0.0}, 1.0});
  EXPECT_EQ(tent_measure(single_atom(2, {0.1, 0.1, 0.0}, 0.5, 3.0), b), 3.0);
  EXPECT_EQ(tent_measure(single_atom(2, {0.0, 0.0, 0.0}, 1.5, 3.0), b), 0.0);
  testing::Gen gen(56);
  const DiscreteMeasure mu = gen.measure(2, 100, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const OpenSet o = gen.coin() ? OpenSet::single(gen.ball(2, 3.0)) : OpenSet::make_box(Box{{-2.0, -1.0, 0.0}, {gen.uniform(0.0, 3.0), 2.0, 0.0}});
    double want = 0.0;
    for (const auto& a : mu.atoms) want += tent_contains(o, 2, a.x, a.t) ? a.w : 0.0;
    EXPECT_EQ(tent_measure(mu, o), want);
  }
}

TEST(CarlesonCases, HausdorffContentOfBalls) {
  for (int n : {1, 2, 3}) {
    const double d = n - 0.5;
    for (int j = 0; j <= 5; ++j) {
      const double v = hausdorff_content(OpenSet::single(Ball{{0.0, 0.0, 0.0}, std::ldexp(1.0, -j)}), n, d).value;
      const double ref = std::exp2(-j * d);
      EXPECT_LE(v, 4.0 * ref);
      EXPECT_GE(v, ref / 4.0);
    }
    for (int k = 1; k <= 5; ++k) {
      const double r = std::ldexp(1.0, -k - 1);
      const double ratio = hausdorff_content(OpenSet::single(Ball{{0.0, 0.0, 0.0}, 2.0 * r}), n, d).value /
                           hausdorff_content(OpenSet::single(Ball{{0.0, 0.0, 0.0}, r}), n, d).value;
      EXPECT_NEAR(ratio, std::exp2(d), 0.1 * std::exp2(d));
    }
  }
  const OpenSet inner = OpenSet::single(Ball{{0.1, 0.0, 0.0}, 0.3});
  const OpenSet outer = OpenSet::single(Ball{{0.0, 0.0, 0.0}, 0.6});
  EXPECT_LE(hausdorff_content(inner, 2, 1.5).value, hausdorff_content(outer, 2, 1.5).value);
}

TEST(CarlesonCases, CapacitySurrogate) {
  EXPECT_EQ(ball_capacity_surrogate(1.0, 2, 1.0, 0.5), 1.0);
  EXPECT_NEAR(ball_capacity_surrogate(2.0, 2, 1.0, 0.5), std::pow(2.0, 1.5), 1e-15);
  for (double r = 0.01; r < 10.0; r *= 1.37) {
    const double h = hausdorff_content(OpenSet::single(Ball{{0.0, 0.0, 0.0}, r}), 2, 1.5).value;
    const double c = ball_capacity_surrogate(r, 2, 1.0, 0.5);
    EXPECT_LE(h / c, 4.0);
    EXPECT_GE(h / c, 0.25);
  }
}

TEST(CarlesonCases, ConditionAgainstExhaustiveGrid) {
  DiscreteMeasure mu;
  mu.n = 1;
  mu.atoms = {{{-1.0, 0.0, 0.0}, 0.3, 1.0}, {{-0.4, 0.0, 0.0}, 0.8, 2.0}, {{0.5, 0.0, 0.0}, 0.2, 0.5},
              {{1.2, 0.0, 0.0}, 0.6, 1.5}, {{2.5, 0.0, 0.0}, 1.0, 3.0}};
  const CapacityParams cp{1.0, 1.0, 2.0, 0.5};
  double oracle = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double c = -3.0 + 7.0 * i / 99.0;
    for (int k = 0; k < 100; ++k) {
      const double r = 0.05 * std::pow(400.0, k / 99.0);
      double mass = 0.0;
      for (const auto& a : mu.atoms) mass += std::abs(a.x[0] - c) + a.t <= r ? a.w : 0.0;
      oracle = std::max(oracle, std::sqrt(mass) / std::sqrt(r));
    }
  }
  const double sup = condition_vi(mu, cp).sup;
  EXPECT_GE(sup, oracle * (1.0 - 1e-12));
  EXPECT_LE(sup, oracle * 1.05);
}

TEST(CarlesonCases, FamilyCondition) {
  testing::Gen gen(57);
  const DiscreteMeasure mu = gen.measure(1, 30, 3.0);
  const CapacityParams cp{1.0, 1.0, 2.0, 0.5};
  std::vector<OpenSet> fam;
  double by_power = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Ball b = gen.ball(1, 3.0);
    fam.push_back(OpenSet::single(b));
    by_power = std::max(by_power, std::sqrt(tent_measure(mu, fam.back())) / std::sqrt(b.radius));
  }
  const double v = condition_v(mu, cp, fam).sup;
  EXPECT_LE(v / by_power, 4.0);
  EXPECT_GE(v / by_power, 0.25);
  DiscreteMeasure empty;
  EXPECT_EQ(condition_v(empty, cp, fam).sup, 0.0);
  std::vector<OpenSet> with_union = fam;
  with_union.push_back(OpenSet::ball_union({fam[0].balls[0], fam[1].balls[0]}));
  EXPECT_GE(condition_v(mu, cp, with_union).sup, v);
}

TEST(CarlesonCases, MinimizingFunctionValues) {
  const DiscreteMeasure mu = single_atom(1, {0.0, 0.0, 0.0}, 1.0, 2.0);
  std::vector<OpenSet> fam;
  for (double r : {1.0, 1.5, 3.0}) fam.push_back(OpenSet::single(Ball{{0.0, 0.0, 0.0}, r}));
  const MinimizingFunction mf = minimizing_function(mu, {1.0, 1.0, 2.0, 0.5}, {0.5, 1.5, 2.5}, fam);
  EXPECT_NEAR(mf.values[0], 1.0, 1e-12);
  EXPECT_NEAR(mf.values[1], 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(mf.values[2]));
}

TEST(CarlesonCases, EmbeddingWithoutMass) {
  Params prm;
  prm.p = prm.q = 1.0;
  prm.beta = 0.5;
  DiscreteMeasure empty;
  const GridSpec g = small_grid(1, 16.0, 128, 3);
  const Report r = embedding_test(empty, prm, {sample_catalog("gaussian", g)}, CapacityCase::case1);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.ratio, 0.0);
}

}  // namespace
}  // namespace frax
