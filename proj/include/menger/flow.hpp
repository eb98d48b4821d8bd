#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "energy.hpp"
#include "variation.hpp"

namespace menger {

enum class Preconditioner {
  none,     // plain L2 projected gradient
  spectral, // descent direction smoothed by the Fourier multiplier 1/(1 + (k/k0)^(3p-4))
};

struct FlowConfig {
  EnergyParams params;
  int max_steps = 500;
  double initial_step = 1e-3;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int resample_every = 10;
  double guard_distance_factor = 0.25;
  double residual_tol = 1e-6;
  int snapshot_every = 0;  // 0: no snapshots
  QuadratureSpec quad{DegeneratePolicy::zeta_corrected, true};
  Preconditioner preconditioner = Preconditioner::spectral;

  void validate() const;  // throws BadParams
};

struct FlowState {
  Curve curve;
  int step_index = 0;
  double energy = 0;
  double residual = 0;
  double lambda = 0;
  int guard_trips = 0;
  double step_size = 0;      // tau of the last accepted step, next trial starts from it
  double target_length = 1;  // rescale target
  double min_distance = 0;
  bool converged = false;
  int resamples_rejected = 0;  // resampling skipped because it raised the energy
  double resample_energy_change = 0;  // accumulated change from accepted resamples
  // projected gradient at `curve`, filled by initial_state and flow_step
  std::optional<ProjectedGradient<double>> gradient;
};

struct HistoryRow {
  int step = 0;
  double energy = 0;
  double residual = 0;
  double lambda = 0;
  double step_size = 0;
  double min_dist = 0;
};

struct FlowResult {
  FlowState state;
  std::vector<HistoryRow> history;
  std::vector<std::pair<int, Curve>> snapshots;
  std::optional<std::string> failure;  // StepFailure message, history kept
};

// state with energy, residual and distance filled in for the curve
FlowState initial_state(const Curve& curve, const FlowConfig& config);

FlowState flow_step(const FlowState& state, const FlowConfig& config);

FlowResult run_flow(const Curve& curve, const FlowConfig& config);

}  // namespace menger
