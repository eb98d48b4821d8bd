#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curve.hpp"
#include "params.hpp"
#include "presets.hpp"

namespace menger {

enum class DegeneratePolicy {
  // plain lattice sum over pairwise distinct indices
  skip_coincident,
  // lattice sum plus the zeta-function correction for the three planes
  // where two indices coincide (needs p - q < 1)
  zeta_corrected,
};

struct QuadratureSpec {
  DegeneratePolicy degenerate_policy = DegeneratePolicy::skip_coincident;
  bool deterministic_reduction = true;
};

struct EnergyReport {
  double value = 0;
  Eigen::Index N = 0;
  EnergyParams params;
  bool decomposition_used = false;
  std::int64_t kernel_evaluations = 0;
  double diagonal_correction = 0;  // part of value coming from the zeta term
};

// Sum over ordered triples of pairwise distinct vertices of w_i w_j w_k K,
// w = dual edge lengths. Requires an arc-length curve.
template <typename Scalar>
EnergyReport energy_full(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                         const QuadratureSpec& quad = {});

// Same sum restricted to the fundamental domain of the permutation group, times 6.
template <typename Scalar>
EnergyReport energy_decomposed(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                               const QuadratureSpec& quad = {});

// The same discrete energy on any embedded polygon (no arc-length requirement).
// This is the objective differentiated by discrete_gradient.
template <typename Scalar>
Scalar discrete_energy(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                       const QuadratureSpec& quad = {});

// Correction term alone (0 for skip_coincident)
template <typename Scalar>
Scalar diagonal_correction(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                           const QuadratureSpec& quad);

struct ConvergenceRow {
  Eigen::Index N = 0;
  double value = 0;  // with the requested policy
  double raw = 0;    // plain lattice sum
};

struct ConvergenceTable {
  PresetSpec preset;
  EnergyParams params;
  DegeneratePolicy policy = DegeneratePolicy::zeta_corrected;
  std::vector<ConvergenceRow> rows;
  double slope = 0;                          // least squares slope of log E vs log N
  std::vector<double> differences;           // E_{N_{i+1}} - E_{N_i}
  double last_relative_change() const;
};

// zeta_corrected is used when p - q < 1, skip_coincident otherwise
ConvergenceTable energy_convergence(const PresetSpec& preset, int dim, const EnergyParams& params,
                                    std::span<const Eigen::Index> Ns);
ConvergenceTable energy_convergence(const PresetSpec& preset, int dim, const EnergyParams& params,
                                    std::span<const Eigen::Index> Ns, DegeneratePolicy policy);

// Two straight strands u -> (u,0,0), u -> (0,u,delta), u in [-1,1], with N
// graded cells each. Returns the energy of the mixed triples (two points on one
// strand, one on the other, both ways round).
double strand_pair_experiment(double delta, const EnergyParams& params, int N);

// Riemann zeta for real s != 1
double riemann_zeta(double s);

}  // namespace menger
