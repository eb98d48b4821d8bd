#include <gtest/gtest.h>

#include <cmath>

#include "expect_error.hpp"
#include "menger/params.hpp"

using namespace menger;

TEST(Params, RejectsNonPositiveExponents) {
  EXPECT_MENGER_ERROR(EnergyParams::make(0.0, 2.0), ErrorKind::BadParams);
  EXPECT_MENGER_ERROR(EnergyParams::make(2.5, -1.0), ErrorKind::BadParams);
  EXPECT_MENGER_ERROR(EnergyParams::make(std::nan(""), 2.0), ErrorKind::BadParams);
  EXPECT_NO_THROW(EnergyParams::make(2.5, 2.0));
}

TEST(Params, DerivedExponents) {
  const EnergyParams e = EnergyParams::make(2.5, 2.0);
  EXPECT_DOUBLE_EQ(e.s(), 0.75);
  EXPECT_DOUBLE_EQ(e.kernel_exponent(), 2.5);
  EXPECT_DOUBLE_EQ(e.alpha(), 0.25);
  EXPECT_DOUBLE_EQ(e.scaling_exponent(), -0.5);
  // p = 7/3, q = 2 is scale invariant
  EXPECT_NEAR(EnergyParams::make(7.0 / 3.0, 2.0).scaling_exponent(), 0.0, 1e-15);
}

struct LabelCase {
  double p, q;
  RangeLabel label;
};

class ClassifyTable : public ::testing::TestWithParam<LabelCase> {};

TEST_P(ClassifyTable, Label) {
  const auto c = GetParam();
  const RangeClass rc = classify(c.p, c.q);
  EXPECT_EQ(rc.label, c.label) << "(" << c.p << "," << c.q << ") -> " << to_string(rc.label) << ": " << rc.detail;
  EXPECT_FALSE(rc.detail.empty());
}

INSTANTIATE_TEST_SUITE_P(
    Regimes, ClassifyTable,
    ::testing::Values(LabelCase{2.5, 2, RangeLabel::NondegenerateSubcritical}, LabelCase{2, 2, RangeLabel::NonRepulsive},
                      LabelCase{3, 2, RangeLabel::Singular}, LabelCase{8.0 / 3.0, 2, RangeLabel::Singular},
                      LabelCase{7.0 / 3.0, 2, RangeLabel::Boundary}, LabelCase{1.58, 0.9, RangeLabel::Strange},
                      LabelCase{2.4, 2, RangeLabel::NondegenerateSubcritical},
                      LabelCase{2.6, 2, RangeLabel::NondegenerateSubcritical},
                      LabelCase{2.1, 1.5, RangeLabel::SubcriticalKnotEnergy},
                      LabelCase{3.2, 3, RangeLabel::SubcriticalKnotEnergy}, LabelCase{1.7, 1, RangeLabel::Boundary},
                      LabelCase{1.0, 0.5, RangeLabel::NonRepulsive}));

TEST(Params, SubcriticalPredicate) {
  EXPECT_TRUE(is_subcritical(RangeLabel::NondegenerateSubcritical));
  EXPECT_TRUE(is_subcritical(RangeLabel::SubcriticalKnotEnergy));
  EXPECT_FALSE(is_subcritical(RangeLabel::Singular));
  EXPECT_FALSE(is_subcritical(RangeLabel::Boundary));
  EXPECT_STREQ(to_string(RangeLabel::Strange), "Strange");
}
