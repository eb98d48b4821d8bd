#pragma once

#include <string>

namespace menger {

// (p,q) with the exponents derived from them
struct EnergyParams {
  double p = 2.5;
  double q = 2.0;

  // throws BadParams unless p, q > 0
  static EnergyParams make(double p, double q);

  double s() const { return (3.0 * p - 2.0 * q - 2.0) / q; }
  double kernel_exponent() const { return 3.0 * p - 2.0 * q - 1.0; }
  double alpha() const { return 3.0 * (p - 1.0) / q - 2.0; }
  // dilation exponent of the energy: E(lambda*gamma) = lambda^d E(gamma)
  double scaling_exponent() const { return 3.0 + 2.0 * q - 3.0 * p; }
};

enum class RangeLabel {
  NonRepulsive,
  SubcriticalKnotEnergy,
  NondegenerateSubcritical,
  Singular,
  Strange,
  Boundary,
};

struct RangeClass {
  RangeLabel label;
  std::string detail;
};

const char* to_string(RangeLabel label);

RangeClass classify(double p, double q);

inline bool is_subcritical(RangeLabel l) {
  return l == RangeLabel::SubcriticalKnotEnergy || l == RangeLabel::NondegenerateSubcritical;
}

}  // namespace menger
