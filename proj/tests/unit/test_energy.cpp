#include <gtest/gtest.h>

#include <numbers>

#include "expect_error.hpp"
#include "menger/menger.hpp"
#include "oracles.hpp"

using namespace menger;

namespace {
const EnergyParams kP = EnergyParams::make(2.5, 2.0);
const QuadratureSpec kZeta{DegeneratePolicy::zeta_corrected, true};
}  // namespace

TEST(Energy, FullAndDecomposedAgree) {
  for (int N : {5, 6, 7, 12, 31}) {
    const Curve c = make_preset("perturbed_circle(0.2,5)", N, 3);
    const EnergyReport full = energy_full(c, kP);
    const EnergyReport dec = energy_decomposed(c, kP);
    EXPECT_NEAR(dec.value / full.value, 1.0, 1e-12) << "N=" << N;
    EXPECT_TRUE(dec.decomposition_used);
    EXPECT_FALSE(full.decomposition_used);
    EXPECT_EQ(full.kernel_evaluations, std::int64_t(N) * (N - 1) * (N - 2));
    // a sixth of the ordered triples, up to rounding on the tie plane
    EXPECT_NEAR(double(dec.kernel_evaluations), double(full.kernel_evaluations) / 6, N);
  }
}

TEST(Energy, CircleMengerOracle) {
  // p = q = 2: every triple of the N-gon lies on its circumcircle of radius
  // 1/(2N sin(pi/N)), and the lattice sum is N(N-1)(N-2)/N^3 R^{-2}/4
  for (int N : {16, 64}) {
    const Curve c = make_preset("circle", N, 2);
    const double R = 1.0 / (2 * N * std::sin(std::numbers::pi / N));
    const double expected = double(N - 1) * (N - 2) / (double(N) * N) / (4 * R * R);
    EXPECT_NEAR(energy_decomposed(c, EnergyParams::make(2, 2)).value / expected, 1.0, 1e-12);
  }
}

TEST(Energy, CircleContinuumLimitWithCorrection) {
  // every triple on the unit-length circle has R = 1/(2 pi), so E^{2,2} = pi^2
  const Curve c = make_preset("circle", 256, 2);
  const double e = energy_decomposed(c, EnergyParams::make(2, 2), kZeta).value;
  EXPECT_NEAR(e / (std::numbers::pi * std::numbers::pi), 1.0, 0.01);
}

TEST(Energy, ZetaCorrectionImprovesCircleConvergence) {
  const PresetSpec circle = PresetSpec::parse("circle");
  const std::vector<Eigen::Index> Ns{32, 64, 128};
  const auto skip = energy_convergence(circle, 2, kP, Ns, DegeneratePolicy::skip_coincident);
  const auto zeta = energy_convergence(circle, 2, kP, Ns, DegeneratePolicy::zeta_corrected);
  EXPECT_LT(zeta.last_relative_change(), skip.last_relative_change() / 2);
  for (const auto& r : zeta.rows) EXPECT_GT(r.value, r.raw);
  EXPECT_EQ(zeta.differences.size(), 2u);
}

TEST(Energy, RiemannZeta) {
  EXPECT_NEAR(riemann_zeta(0.5), -1.4603545088095868, 1e-12);
  EXPECT_NEAR(riemann_zeta(2.0), std::numbers::pi * std::numbers::pi / 6, 1e-12);
}

TEST(Energy, DeterministicAcrossThreadCounts) {
  const Curve c = make_preset("torus_knot(2,3)", 60, 3);
  set_num_threads(1);
  const double a = energy_decomposed(c, kP, kZeta).value;
  const double fa = energy_full(c, kP).value;
  set_num_threads(4);
  const double b = energy_decomposed(c, kP, kZeta).value;
  const double fb = energy_full(c, kP).value;
  set_num_threads(0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(fa, fb);
}

TEST(Energy, Preconditions) {
  Eigen::MatrixXd P(2, 4);
  P << 0, 2, 2, 0, 0, 0, 1, 1;  // rectangle with unequal sides
  EXPECT_MENGER_ERROR(energy_decomposed(Curve{P}, kP), ErrorKind::NotArclength);
  EXPECT_NO_THROW(discrete_energy(Curve{P}, kP));
  // zeta correction is only defined for p - q < 1
  EXPECT_MENGER_ERROR(energy_decomposed(make_preset("circle", 16, 2), EnergyParams::make(3.5, 2), kZeta),
                      ErrorKind::BadParams);
}

TEST(Energy, ScalingLaw) {
  const Curve c = make_preset("ellipse(2)", 40, 2);
  for (double p : {2.4, 2.9}) {
    const EnergyParams e = EnergyParams::make(p, 2.0);
    const double a = energy_decomposed(c, e).value;
    const double b = energy_decomposed(c.scaled(0.4), e).value;
    EXPECT_NEAR(b / a, std::pow(0.4, e.scaling_exponent()), 1e-12);
  }
}

TEST(Energy, Strands) {
  // p = q = 2 stays bounded as the strands approach, p = 2.5 blows up like delta^{-1/2}
  const double near = strand_pair_experiment(0.01, EnergyParams::make(2, 2), 120);
  const double far = strand_pair_experiment(0.1, EnergyParams::make(2, 2), 120);
  EXPECT_LT(std::abs(near / far - 1), 0.1);
  const std::vector<double> d{0.1, 0.01};
  const std::vector<double> v{strand_pair_experiment(0.1, kP, 120), strand_pair_experiment(0.01, kP, 120)};
  EXPECT_NEAR(testing_support::loglog_slope(d, v), -0.5, 0.2);
  EXPECT_MENGER_ERROR(strand_pair_experiment(0.0, kP, 100), ErrorKind::BadParams);
  EXPECT_MENGER_ERROR(strand_pair_experiment(0.1, kP, 7), ErrorKind::BadParams);
}

TEST(Energy, ConvergenceValidation) {
  const std::vector<Eigen::Index> bad{64, 32};
  EXPECT_MENGER_ERROR(energy_convergence(PresetSpec::parse("circle"), 2, kP, bad), ErrorKind::BadParams);
}
