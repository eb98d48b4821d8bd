#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <numbers>

#include "expect_error.hpp"
#include "menger/menger.hpp"

using namespace menger;
using Eigen::Vector3d;

TEST(Kernel, WedgeMatchesCrossProduct) {
  const Vector3d a(0.3, -1.2, 2.0), b(1.5, 0.4, -0.7);
  EXPECT_NEAR(wedge_norm(a, b), a.cross(b).norm(), 1e-14);
  const Eigen::Vector2d u(1, 2), v(-3, 0.5);
  EXPECT_NEAR(wedge_norm(u, v), std::abs(u.x() * v.y() - u.y() * v.x()), 1e-14);
}

TEST(Kernel, CircumradiusOfEquilateralTriangle) {
  const double side = 0.7;
  const Vector3d x(0, 0, 0), y(side, 0, 0), z(side / 2, side * std::sqrt(3.0) / 2, 0);
  EXPECT_NEAR(circumradius(x, y, z), side / std::sqrt(3.0), 1e-14);
}

TEST(Kernel, KernelIsInverseRadiusPowerWhenPEqualsQ) {
  // |b ^ c|^q / (abc)^p = (2R)^{-p} for p = q
  const Vector3d x(0.1, 0.2, 0), y(1.0, -0.3, 0.5), z(-0.4, 0.9, 0.2);
  const double R = circumradius(x, y, z);
  EXPECT_NEAR(rpq_kernel(x, y, z, EnergyParams::make(2, 2)), std::pow(2 * R, -2.0), 1e-12);
}

TEST(Kernel, CollinearAndCoincident) {
  const Vector3d x(0, 0, 0), y(1, 0, 0), z(2, 0, 0);
  EXPECT_EQ(rpq_kernel(x, y, z, EnergyParams::make(2.5, 2)), 0.0);
  EXPECT_MENGER_ERROR(rpq_kernel(x, x, z, EnergyParams::make(2.5, 2)), ErrorKind::DegenerateTriple);
}

TEST(Segments, Distances) {
  const Vector3d o(0, 0, 0), ex(1, 0, 0);
  EXPECT_NEAR(segment_distance<double>(o, ex, Vector3d(0.5, -1, 1), Vector3d(0.5, 1, 1)), 1.0, 1e-14);
  EXPECT_NEAR(segment_distance<double>(o, ex, Vector3d(0.5, -1, 0), Vector3d(0.5, 1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(segment_distance<double>(o, ex, Vector3d(2, 0, 0), Vector3d(3, 0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(segment_distance<double>(o, ex, Vector3d(0, 0.5, 0), Vector3d(1, 0.5, 0)), 0.5, 1e-14);
}

TEST(Curve, Validation) {
  Eigen::MatrixXd two(3, 2);
  two.setRandom();
  EXPECT_MENGER_ERROR(Curve{two}, ErrorKind::BadInput);
  Eigen::MatrixXd dup(2, 3);
  dup << 0, 0, 1, 0, 0, 1;
  EXPECT_MENGER_ERROR(Curve{dup}, ErrorKind::BadInput);
  Eigen::MatrixXd four(4, 3);
  four.setRandom();
  EXPECT_MENGER_ERROR(Curve{four}, ErrorKind::BadInput);
}

TEST(Curve, FigureEightIsRejected) {
  const int N = 40;
  Eigen::MatrixXd P(2, N);
  for (int i = 0; i < N; ++i) {
    const double t = 2 * std::numbers::pi * i / N;
    P.col(i) << std::sin(t), std::sin(t) * std::cos(t);
  }
  P.col(0).setZero();
  P.col(N / 2).setZero();  // the crossing sits on two vertices
  EXPECT_MENGER_ERROR(check_embedded(Curve{P}), ErrorKind::SelfIntersection);
}

TEST(Curve, ResampleGivesEqualEdgesAndKeepsLength) {
  const int N = 50;
  Eigen::MatrixXd P(2, N);
  for (int i = 0; i < N; ++i) {
    const double t = 2 * std::numbers::pi * std::pow(double(i) / N, 1.3);
    P.col(i) << 2 * std::cos(t), std::sin(t);
  }
  const Curve c{P};
  ASSERT_FALSE(c.is_arclength());
  const Curve r = resample_arclength(c, 64);
  EXPECT_TRUE(r.is_arclength());
  EXPECT_EQ(r.size(), 64);
  EXPECT_NEAR(r.length(), c.length(), 1e-12);
}

TEST(Curve, CircleBilipschitzAndDistances) {
  const Curve c = make_preset("circle", 200, 2);
  // chord of the unit-length circle is sin(pi d)/pi, ratio max at d = 1/2
  EXPECT_NEAR(bilipschitz_constant(c), std::numbers::pi / 2, 1e-3);
  EXPECT_GT(min_segment_distance(c), 0.0);
  EXPECT_TRUE(std::isinf(min_segment_distance(make_preset("circle", 3, 2))));
}

class Presets : public ::testing::TestWithParam<const char*> {};

TEST_P(Presets, UnitLengthArclengthEmbedded) {
  for (int dim : {2, 3}) {
    const std::string name = GetParam();
    if ((name.rfind("torus_knot", 0) == 0 || name == "trefoil") && dim == 2) continue;
    const Curve c = make_preset(name, 96, dim);
    EXPECT_EQ(c.dim(), dim);
    EXPECT_TRUE(c.is_arclength());
    EXPECT_NEAR(c.length(), 1.0, 1e-12);
    EXPECT_NO_THROW(check_embedded(c));
  }
}

INSTANTIATE_TEST_SUITE_P(All, Presets,
                         ::testing::Values("circle", "ellipse(3)", "torus_knot(2,3)", "polygon(5)",
                                           "perturbed_circle(0.1,4)", "trefoil", "square"));

TEST(Presets, BadSpecs) {
  EXPECT_MENGER_ERROR(PresetSpec::parse("hexagram"), ErrorKind::BadPreset);
  EXPECT_MENGER_ERROR(PresetSpec::parse("ellipse(abc)"), ErrorKind::BadPreset);
  EXPECT_MENGER_ERROR(make_preset("perturbed_circle(0.7,1)", 64, 2), ErrorKind::BadPreset);
  EXPECT_MENGER_ERROR(make_preset("torus_knot(2,3)", 64, 2), ErrorKind::BadPreset);
}

TEST(Presets, PerturbedCircleIsSeeded) {
  const Curve a = make_preset("perturbed_circle(0.1,9)", 64, 3);
  const Curve b = make_preset("perturbed_circle(0.1,9)", 64, 3);
  const Curve c = make_preset("perturbed_circle(0.1,10)", 64, 3);
  EXPECT_EQ(a.vertices(), b.vertices());
  EXPECT_GT((a.vertices() - c.vertices()).norm(), 1e-3);
}

TEST(CurveIo, RoundTrips) {
  const Curve c = make_preset("perturbed_circle(0.1,2)", 32, 3);
  const Curve j = curve_from_json(curve_to_json(c));
  EXPECT_LT((j.vertices() - c.vertices()).cwiseAbs().maxCoeff(), 1e-15);
  const Curve s = curve_from_csv(curve_to_csv(c));
  EXPECT_LT((s.vertices() - c.vertices()).cwiseAbs().maxCoeff(), 1e-15);

  const auto path = std::filesystem::temp_directory_path() / "menger_io_test.json";
  write_curve(c, path.string());
  EXPECT_EQ(read_curve(path.string()).size(), 32);
  std::filesystem::remove(path);
}

TEST(CurveIo, RejectsBrokenInput) {
  EXPECT_MENGER_ERROR(curve_from_json("{\"dim\": 3}"), ErrorKind::BadInput);
  EXPECT_MENGER_ERROR(curve_from_csv("0,0\n1,0\n"), ErrorKind::BadInput);
  EXPECT_MENGER_ERROR(curve_from_csv("0,0\n1,x\n0,1\n"), ErrorKind::BadInput);
  EXPECT_MENGER_ERROR(read_curve("/nonexistent/curve.json"), ErrorKind::BadInput);
}
