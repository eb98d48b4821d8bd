#include <gtest/gtest.h>

#include <numbers>

#include "expect_error.hpp"
#include "menger/menger.hpp"
#include "oracles.hpp"

using namespace menger;

class CircleOracle : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(CircleOracle, BothSeminorms) {
  const auto [s, rho] = GetParam();
  const SeminormSpec spec{s, rho, SeminormVariant::first_difference};
  const Curve c = make_preset("circle", 512, 2);
  EXPECT_NEAR(seminorm_first(c, spec) / testing_support::circle_first_oracle(spec), 1.0, 0.01);
  EXPECT_NEAR(seminorm_second(c, spec) / testing_support::circle_second_oracle(spec), 1.0, 0.01);
}

INSTANTIATE_TEST_SUITE_P(Exponents, CircleOracle,
                         ::testing::Values(std::make_pair(0.5, 2.0), std::make_pair(0.3, 1.5)));

// integrands singular at h = 0: the lattice sums converge slowly, so check that
// the error shrinks under refinement
class CircleOracleRefinement : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(CircleOracleRefinement, ErrorDecreases) {
  const auto [s, rho] = GetParam();
  const SeminormSpec spec{s, rho, SeminormVariant::first_difference};
  const double o1 = testing_support::circle_first_oracle(spec), o2 = testing_support::circle_second_oracle(spec);
  double prev1 = 1, prev2 = 1;
  for (int N : {128, 512, 2048}) {
    const Curve c = make_preset("circle", N, 2);
    const double e1 = std::abs(seminorm_first(c, spec) / o1 - 1), e2 = std::abs(seminorm_second(c, spec) / o2 - 1);
    EXPECT_LT(e1, prev1) << N;
    EXPECT_LT(e2, prev2) << N;
    prev1 = e1;
    prev2 = e2;
  }
  EXPECT_LT(prev1, 0.02);
  EXPECT_LT(prev2, 0.02);
}

INSTANTIATE_TEST_SUITE_P(Singular, CircleOracleRefinement,
                         ::testing::Values(std::make_pair(0.75, 2.0), std::make_pair(0.2, 1.0)));

TEST(Seminorm, EquivalenceOnCircle) {
  const EquivalenceReport r =
      equivalence_check(make_preset("circle", 256, 2), SeminormSpec{0.5, 2.0, SeminormVariant::first_difference});
  EXPECT_TRUE(r.within);
  EXPECT_NEAR(r.lower, std::pow(2.0, -5.0), 1e-15);
  EXPECT_NEAR(r.upper, 1.0, 1e-15);
  EXPECT_NEAR(r.ratio, 0.75, 0.01);
}

TEST(Seminorm, SampleLevelOneDimensional) {
  // f(u) = sin(2 pi u) as a 1 x M sample row
  const int M = 400;
  Eigen::MatrixXd f(1, M);
  for (int i = 0; i < M; ++i) f(0, i) = std::sin(2 * std::numbers::pi * i / M);
  const SeminormSpec spec{0.5, 2.0, SeminormVariant::second_difference};
  // |f(u+h) - 2f(u) + f(u-h)| = 2(1 - cos 2 pi h)|sin 2 pi u|, mean of sin^2 is 1/2
  const double half = testing_support::integrate_from_zero(
      [](double h) {
        const double d = 2 * (1 - std::cos(2 * std::numbers::pi * h));
        return d * d / std::pow(h, 4.0);
      },
      0.25);
  EXPECT_NEAR(seminorm_second_samples(f, spec), std::sqrt(half), 0.01 * std::sqrt(half));
  // constant samples have zero seminorm; open arcs drop wrapping offsets
  EXPECT_EQ(seminorm_first_samples(Eigen::MatrixXd::Ones(2, 16), spec), 0.0);
  EXPECT_LT(seminorm_first_samples(f, spec, false), seminorm_first_samples(f, spec, true));
}

TEST(Seminorm, Validation) {
  const Curve c = make_preset("circle", 32, 2);
  EXPECT_MENGER_ERROR(seminorm_first(c, SeminormSpec{1.0, 2.0}), ErrorKind::BadParams);
  EXPECT_MENGER_ERROR(seminorm_first(c, SeminormSpec{0.5, 0.5}), ErrorKind::BadParams);
  Eigen::MatrixXd P(2, 4);
  P << 0, 2, 2, 0, 0, 0, 1, 1;
  EXPECT_MENGER_ERROR(seminorm_first(Curve{P}, SeminormSpec{}), ErrorKind::NotArclength);
}

TEST(Hoelder, CircleMatchesScan) {
  const Curve c = make_preset("circle", 256, 2);
  for (double alpha : {0.25, 0.5, 0.9}) {
    // |t(a) - t(b)| = 2 sin(pi d) at parameter distance d
    double best = 0;
    for (int i = 1; i <= 128; ++i) {
      const double d = i / 256.0;
      best = std::max(best, 2 * std::sin(std::numbers::pi * d) / std::pow(d, alpha));
    }
    const HoelderReport r = hoelder_estimate(c, alpha);
    EXPECT_NEAR(r.seminorm / best, 1.0, 1e-3) << alpha;
  }
  EXPECT_MENGER_ERROR(hoelder_estimate(c, 1.0), ErrorKind::BadParams);
}

TEST(EnergySpace, RatiosAndRegime) {
  const EnergySpaceReport r = energy_space_ratios(make_preset("circle", 128, 2), EnergyParams::make(2.5, 2.0));
  EXPECT_GT(r.energy, 0);
  EXPECT_NEAR(r.s, 0.75, 1e-15);
  EXPECT_NEAR(r.norm, r.seminorm + 1.0, 1e-12);
  EXPECT_NEAR(r.energy_over_norm * std::pow(r.norm, 2), r.energy, 1e-9 * r.energy);
  EXPECT_MENGER_ERROR(energy_space_ratios(make_preset("circle", 64, 2), EnergyParams::make(3.0, 2.0)),
                      ErrorKind::BadRegime);
}
