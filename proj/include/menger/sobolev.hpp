#pragma once

#include <utility>

#include "curve.hpp"
#include "energy.hpp"
#include "params.hpp"

namespace menger {

enum class SeminormVariant { first_difference, second_difference };

struct SeminormSpec {
  double s = 0.5;
  double rho = 2.0;
  SeminormVariant variant = SeminormVariant::first_difference;

  void validate() const;  // s in (0,1), rho >= 1
};

// Sample-level versions. Columns are periodic samples on the u-grid unless
// periodic == false, in which case only offsets staying inside the sample
// range contribute (open-arc harness).
double seminorm_first_samples(const Eigen::MatrixXd& tangents, const SeminormSpec& spec,
                              bool periodic = true);
double seminorm_second_samples(const Eigen::MatrixXd& samples, const SeminormSpec& spec,
                               bool periodic = true);

// first differences of unit edge tangents, offsets up to 1/2
double seminorm_first(const Curve& curve, const SeminormSpec& spec);
// second differences of vertex positions, offsets up to 1/4
double seminorm_second(const Curve& curve, const SeminormSpec& spec);

struct EquivalenceReport {
  double first = 0;
  double second = 0;
  double ratio = 0;
  double lower = 0;
  double upper = 0;
  double slack = 0.1;
  bool within = false;
};

// ratio = second / (L * first); L * first is the seminorm of gamma' itself
EquivalenceReport equivalence_check(const Curve& curve, const SeminormSpec& spec);
std::pair<double, double> equivalence_interval(double s, double rho);

struct HoelderReport {
  double alpha = 0;
  double seminorm = 0;
  std::pair<Eigen::Index, Eigen::Index> pair{0, 0};  // edge indices of the maximizer
};

HoelderReport hoelder_estimate(const Curve& curve, double alpha);

struct EnergySpaceReport {
  double energy = 0;
  double s = 0;
  double seminorm = 0;  // of gamma'
  double norm = 0;      // seminorm + sup |gamma'|
  double energy_over_norm = 0;      // E / norm^q
  double seminorm_over_energy = 0;  // seminorm^q / E
};

EnergySpaceReport energy_space_ratios(const Curve& curve, const EnergyParams& params,
                                      const QuadratureSpec& quad = {});

}  // namespace menger
