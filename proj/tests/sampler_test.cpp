#include "problife/sampler.hpp"

#include "oracles.hpp"
#include "problife/exact.hpp"
#include "problife/meanfield.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace problife;

TEST(Mix64, MatchesSplitMix64Reference) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(mix64(0x9e3779b97f4a7c15ULL), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mix64(0), 0u);
}

TEST(TrajectoryStream, DeterministicUniforms) {
  const TrajectoryStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  EXPECT_EQ(a.key(), b.key());
  EXPECT_NE(a.key(), c.key());
  EXPECT_NE(a.key(), d.key());
  double sum = 0.0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double u = a.uniform(i / 100, i % 100);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform(i / 100, i % 100));
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(SampleStep, ClassicIsDeterministic) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const GridState s = oracle::random_binary(rng, 7, 6);
    const GridState next = sample_step(s, classic_life(), Boundary::dead, TrajectoryStream(i, i), 1);
    ASSERT_EQ(oracle::to_bool(next), oracle::conway_step(oracle::to_bool(s)));
    ASSERT_EQ(next.generation(), 1u);
  }
}

TEST(SampleStep, ClassicOutcomeIsAPossibleWorldOfWorkedExample) {
  const GridState start = oracle::load_fixture("fig2.cells");
  const GridState target = oracle::from_ascii(oracle::kFig1State2);
  const double probability = 0.8 * 0.8 * 0.9 * 0.9 * 0.9;

  // Every cell's firing probability from the mean-field state, multiplied out.
  const GridState mf = step(start, standard_ruleset());
  double product = 1.0;
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) product *= target(x, y) == 1.0 ? mf(x, y) : 1.0 - mf(x, y);
  EXPECT_NEAR(product, probability, 1e-15);

  const int n = 20000;
  int hits = 0;
  std::set<WorldId> outcomes;
  for (int t = 0; t < n; ++t) {
    const GridState next =
        sample_step(start, standard_ruleset(), Boundary::dead, TrajectoryStream(42, t), 1);
    hits += next.values().matrix() == target.values().matrix() ? 1 : 0;
    outcomes.insert(world_of(next));
  }
  // 5 binary choices -> at most 32 outcomes
  EXPECT_LE(outcomes.size(), 32u);
  const double stderr_ = std::sqrt(probability * (1 - probability) / n);
  EXPECT_NEAR(static_cast<double>(hits) / n, probability, 5 * stderr_);
}

TEST(SampleStep, DeadGridWithoutStrobingStaysDead) {
  const GridState next =
      sample_step(GridState::zeros(5, 5), standard_ruleset(), Boundary::dead, TrajectoryStream(0, 0), 1);
  EXPECT_TRUE(is_extinct(next));
}

TEST(SampleStep, RejectsFloatGrid) {
  EXPECT_THROW(sample_step(oracle::from_rows({{0.5}}), classic_life(), Boundary::dead,
                           TrajectoryStream(0, 0), 1),
               std::invalid_argument);
}

TEST(SampleStep, ZeroRulesetKillsEverything) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const GridState s = oracle::random_binary(rng, 5, 5, 0.6);
    EXPECT_TRUE(is_extinct(sample_step(s, Ruleset{}, Boundary::toroidal, TrajectoryStream(i, 0), 1)));
  }
}

TEST(SampleTrajectory, ZeroStepsAndReproducibility) {
  const GridState start = oracle::load_fixture("fig2.cells");
  const auto none = sample_trajectory(start, standard_ruleset(), 0, Boundary::dead, 1, 0);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0], start);

  const auto a = sample_trajectory(start, standard_ruleset(), 6, Boundary::dead, 9, 4);
  const auto b = sample_trajectory(start, standard_ruleset(), 6, Boundary::dead, 9, 4);
  EXPECT_EQ(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].generation(), k);
}

TEST(SampleTrajectory, ClassicExampleSequence) {
  const auto states = sample_trajectory(oracle::load_fixture("fig1.cells"), classic_life(), 2,
                                        Boundary::dead, 123, 0);
  EXPECT_EQ(states[1].values().matrix(), oracle::from_ascii(oracle::kFig1State2).values().matrix());
  EXPECT_EQ(states[2].values().matrix(), oracle::from_ascii(oracle::kFig1State3).values().matrix());
}

TEST(SampleTrajectory, FloatStartIsDrawnCellwise) {
  const GridState start = oracle::from_rows({{0.3, 1.0}, {0.0, 0.7}});
  int first = 0, last = 0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) {
    const GridState g0 = sample_trajectory(start, classic_life(), 0, Boundary::dead, 5, t)[0];
    ASSERT_TRUE(g0.is_binary());
    ASSERT_EQ(g0(1, 0), 1.0);
    ASSERT_EQ(g0(0, 1), 0.0);
    first += g0(0, 0) == 1.0;
    last += g0(1, 1) == 1.0;
  }
  EXPECT_NEAR(first / double(n), 0.3, 0.015);
  EXPECT_NEAR(last / double(n), 0.7, 0.015);
}

TEST(EstimateMarginals, ClassicIsExact) {
  const GridState start = oracle::load_fixture("fig1.cells");
  const auto est = estimate_marginals(start, classic_life(), 2, 50, Boundary::dead, 3);
  ASSERT_EQ(est.size(), 1u);
  EXPECT_EQ(est[0].samples, 50u);
  EXPECT_EQ(est[0].generation(), 2u);
  EXPECT_EQ(est[0].means.values().matrix(), oracle::from_ascii(oracle::kFig1State3).values().matrix());
  EXPECT_TRUE((est[0].standard_error == 0.0).all());
}

TEST(EstimateMarginals, StrobingFromEmpty) {
  const auto est = estimate_marginals(GridState::zeros(2, 2), parse_ruleset("B0:0.8/S"), 1,
                                      100000, Boundary::dead, 2024);
  EXPECT_TRUE(((est[0].means.values() - 0.8).abs() < 0.01).all());
  EXPECT_TRUE(((est[0].standard_error - std::sqrt(0.16 / 100000)).abs() < 1e-4).all());
}

TEST(EstimateMarginals, ThreadCountDoesNotChangeResult) {
  const GridState start = oracle::from_ascii({"O.O", ".O.", "OO."});
  const Ruleset r = parse_ruleset("B1:0.3,2:0.6,3:0.8/S1:0.5,2:0.9,3:0.7");
  const auto one = estimate_marginals(start, r, 4, 5000, Boundary::dead, 11, {1, true});
  for (unsigned threads : {2u, 5u, 16u}) {
    const auto many = estimate_marginals(start, r, 4, 5000, Boundary::dead, 11, {threads, true});
    ASSERT_EQ(many.size(), 5u);
    for (std::size_t k = 0; k < one.size(); ++k) {
      ASSERT_EQ(one[k].means, many[k].means);
      ASSERT_EQ(one[k].standard_error.matrix(), many[k].standard_error.matrix());
    }
  }
}

TEST(EstimateMarginals, RejectsZeroSamples) {
  EXPECT_THROW(estimate_marginals(GridState::zeros(1, 1), classic_life(), 1, 0, Boundary::dead, 0),
               std::invalid_argument);
}

TEST(EstimateMarginals, StochasticBirthVariantMatchesExact) {
  // Survive with p_s on 2 or 3 neighbors, born surely on 3 and with p_b on 2.
  const Ruleset sgl = parse_ruleset("B2:0.3,3/S2:0.85,3:0.85");
  const GridState start = oracle::from_ascii({"OO.", ".O.", "..O"});
  const auto exact = exact_run(start, sgl, 3);
  const std::uint64_t n = 40000;
  const auto est = estimate_marginals(start, sgl, 3, n, Boundary::dead, 77);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      const double p = exact[3](x, y);
      const double tol = 4.0 * std::sqrt(p * (1 - p) / n) + 1e-12;
      EXPECT_NEAR(est[0].means(x, y), p, tol) << x << "," << y;
    }
  }
}
