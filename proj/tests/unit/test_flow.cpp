#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "menger/menger.hpp"

using namespace menger;

namespace {
FlowConfig config(int steps) {
  FlowConfig cfg;
  cfg.params = EnergyParams::make(2.5, 2.0);
  cfg.max_steps = steps;
  return cfg;
}
}  // namespace

TEST(Flow, ConfigValidation) {
  FlowConfig cfg = config(10);
  cfg.armijo_c = 1.5;
  EXPECT_MENGER_ERROR(cfg.validate(), ErrorKind::BadParams);
  cfg = config(10);
  cfg.initial_step = 0;
  EXPECT_MENGER_ERROR(cfg.validate(), ErrorKind::BadParams);
  cfg = config(10);
  cfg.backtrack_factor = 1.0;
  EXPECT_MENGER_ERROR(cfg.validate(), ErrorKind::BadParams);
  cfg = config(-1);
  EXPECT_MENGER_ERROR(cfg.validate(), ErrorKind::BadParams);
  EXPECT_NO_THROW(config(10).validate());
}

TEST(Flow, StepDecreasesEnergyAndKeepsLength) {
  const FlowConfig cfg = config(1);
  const FlowState s0 = initial_state(make_preset("perturbed_circle(0.1,3)", 48, 3), cfg);
  const FlowState s1 = flow_step(s0, cfg);
  EXPECT_EQ(s1.step_index, 1);
  EXPECT_LT(s1.energy, s0.energy);
  EXPECT_NEAR(s1.curve.length(), s0.curve.length(), 1e-12);
  EXPECT_GT(s1.min_distance, 0.0);
  EXPECT_TRUE(s1.gradient.has_value());
}

TEST(Flow, RoundCircleIsStationary) {
  FlowConfig cfg = config(5);
  cfg.residual_tol = 1e-6;
  const FlowResult r = run_flow(make_preset("circle", 32, 2), cfg);
  EXPECT_TRUE(r.state.converged);
  EXPECT_EQ(r.state.step_index, 0);
  EXPECT_EQ(r.history.size(), 1u);
}

TEST(Flow, MonotoneHistoryAndSnapshots) {
  FlowConfig cfg = config(30);
  cfg.snapshot_every = 10;
  const FlowResult r = run_flow(make_preset("ellipse(1.5)", 40, 3), cfg);
  ASSERT_FALSE(r.failure.has_value()) << *r.failure;
  ASSERT_EQ(r.history.size(), 31u);
  for (size_t i = 1; i < r.history.size(); ++i) {
    EXPECT_LE(r.history[i].energy, r.history[i - 1].energy);
    EXPECT_EQ(r.history[i].step, int(i));
  }
  ASSERT_EQ(r.snapshots.size(), 4u);
  EXPECT_EQ(r.snapshots.back().first, 30);
  for (const auto& [k, c] : r.snapshots) EXPECT_GT(min_segment_distance(c), 0.0);
  // the ellipse rounds up
  EXPECT_LT(r.state.energy, r.history.front().energy);
}

TEST(Flow, UnpreconditionedAlsoDescends) {
  FlowConfig cfg = config(10);
  cfg.preconditioner = Preconditioner::none;
  const FlowResult r = run_flow(make_preset("perturbed_circle(0.1,1)", 32, 2), cfg);
  EXPECT_FALSE(r.failure.has_value());
  EXPECT_LT(r.state.energy, r.history.front().energy);
}
