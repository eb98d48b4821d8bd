#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "expect_error.hpp"
#include "menger/menger.hpp"

using namespace menger;

namespace {
Eigen::MatrixXd mode(Eigen::Index N, int k, double phase) {
  Eigen::MatrixXd f(2, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    const double t = 2 * std::numbers::pi * k * double(j) / double(N) + phase;
    f(0, j) = std::cos(t);
    f(1, j) = std::sin(t);
  }
  return f;
}
}  // namespace

TEST(Symbol, RhoIsPositiveIncreasingAndCached) {
  double prev = 0;
  for (int k : {1, 2, 4, 8}) {
    const double r = rho_k(2.5, k);
    EXPECT_GT(r, prev);
    prev = r;
  }
  const RhoResult d = rho_k_detailed(2.5, 8);
  EXPECT_EQ(d.value, rho_k(2.5, 8));
  EXPECT_LT(d.relative_change, 1e-2);
}

TEST(Symbol, Asymptotics) {
  const SymbolTable t = rho_asymptotic(2.5, {8, 16, 32});
  EXPECT_NEAR(t.slope, 3.5, 0.05);
  EXPECT_LT(t.deviation, 0.05);
  EXPECT_EQ(t.plateau, t.scaled.back());
  EXPECT_NEAR(tilde_rho(2.5, 0.0, 8), 12 * rho_k(2.5, 8), 1e-12);
  EXPECT_GT(tilde_rho(2.5, 1.0, 8), tilde_rho(2.5, 0.0, 8));
}

TEST(Symbol, Validation) {
  EXPECT_MENGER_ERROR(rho_k(3.0, 4), ErrorKind::BadParams);
  EXPECT_MENGER_ERROR(rho_k(2.5, 0), ErrorKind::BadParams);
  EXPECT_MENGER_ERROR(rho_asymptotic(2.5, {8, 4}), ErrorKind::BadParams);
  RhoOptions crude;
  crude.gauss_points = 1;
  crude.levels = 2;
  crude.max_change = 1e-14;
  EXPECT_MENGER_ERROR(rho_k_detailed(2.5, 3, crude), ErrorKind::QuadratureNotConverged);
}

TEST(Symbol, FourierConvention) {
  const Eigen::Index N = 32;
  const Eigen::MatrixXcd c = fourier_coefficients(mode(N, 3, 0.0));
  // cos -> 1/2 at k = +-3, sin -> -i/2 at +3 and +i/2 at -3
  EXPECT_NEAR(c(0, 3).real(), 0.5, 1e-14);
  EXPECT_NEAR(c(0, N - 3).real(), 0.5, 1e-14);
  EXPECT_NEAR(c(1, 3).imag(), -0.5, 1e-14);
  EXPECT_NEAR(c(1, N - 3).imag(), 0.5, 1e-14);
  EXPECT_NEAR(std::abs(c(0, 4)), 0.0, 1e-14);
}

TEST(Symbol, QuadraticFormOnSingleModes) {
  // Q acts diagonally: a rotating mode (cos, sin) gets rho_k, orthogonal modes vanish
  const Eigen::Index N = 128;
  for (int k : {2, 5}) {
    const Eigen::MatrixXd f = mode(N, k, 0.3);
    EXPECT_NEAR(q_form_fourier(f, f, 2.5) / rho_k(2.5, k), 1.0, 1e-10);
    EXPECT_NEAR(q_form_direct(f, f, 2.5) / rho_k(2.5, k), 1.0, 0.05) << k;
  }
  EXPECT_NEAR(q_form_fourier(mode(N, 2, 0), mode(N, 3, 0), 2.5), 0.0, 1e-10);
}

TEST(Symbol, DirectFormIsSymmetricAndMatchesFourier) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  const Eigen::Index N = 96;
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(3, N), g = Eigen::MatrixXd::Zero(3, N);
  for (int k = 1; k <= 4; ++k)
    for (int d = 0; d < 3; ++d) {
      const double a = gauss(rng), b = gauss(rng), c = gauss(rng), e = gauss(rng);
      for (Eigen::Index j = 0; j < N; ++j) {
        const double t = 2 * std::numbers::pi * k * double(j) / double(N);
        f(d, j) += a * std::cos(t) + b * std::sin(t);
        g(d, j) += c * std::cos(t) + e * std::sin(t);
      }
    }
  EXPECT_NEAR(q_form_direct(f, g, 2.5), q_form_direct(g, f, 2.5), 1e-10 * std::abs(q_form_direct(f, g, 2.5)));
  EXPECT_NEAR(q_form_direct(f, g, 2.5) / q_form_fourier(f, g, 2.5), 1.0, 0.05);
  // constants are in the kernel
  EXPECT_NEAR(q_form_fourier(Eigen::MatrixXd::Ones(3, N), g, 2.5), 0.0, 1e-10);
  EXPECT_MENGER_ERROR(q_form_direct(f, g.leftCols(N - 1), 2.5), ErrorKind::BadInput);
}

TEST(Symbol, WeightsAreCached) {
  const QFormWeights& a = qform_weights(64, 2.5);
  const QFormWeights& b = qform_weights(64, 2.5);
  EXPECT_EQ(&a, &b);
  EXPECT_EQ(a.n1.size(), a.weight.size());
  EXPECT_FALSE(a.weight.empty());
}
