#include "menger/params.hpp"

#include <cmath>
#include <sstream>

#include "menger/error.hpp"

namespace menger {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::BadPreset: return "BadPreset";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::BadRegime: return "BadRegime";
    case ErrorKind::DegenerateTriple: return "DegenerateTriple";
    case ErrorKind::SelfIntersection: return "SelfIntersection";
    case ErrorKind::NotArclength: return "NotArclength";
    case ErrorKind::DegenerateConstraint: return "DegenerateConstraint";
    case ErrorKind::ZeroSeminorm: return "ZeroSeminorm";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
  }
  return "Error";
}

const char* to_string(RangeLabel label) {
  switch (label) {
    case RangeLabel::NonRepulsive: return "NonRepulsive";
    case RangeLabel::SubcriticalKnotEnergy: return "SubcriticalKnotEnergy";
    case RangeLabel::NondegenerateSubcritical: return "NondegenerateSubcritical";
    case RangeLabel::Singular: return "Singular";
    case RangeLabel::Strange: return "Strange";
    case RangeLabel::Boundary: return "Boundary";
  }
  return "?";
}

EnergyParams EnergyParams::make(double p, double q) {
  if (!(p > 0) || !(q > 0) || !std::isfinite(p) || !std::isfinite(q))
    throw Error(ErrorKind::BadParams, "p and q must be positive and finite");
  return EnergyParams{p, q};
}

namespace {
// boundary values like 7/3 arrive rounded, compare with a little room
bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }
}  // namespace

RangeClass classify(double p, double q) {
  EnergyParams::make(p, q);
  const double repulsive = 2.0 * q / 3.0 + 1.0;  // self-repulsive iff p >= this
  const double finite = q + 2.0 / 3.0;           // finite on closed curves iff p < this
  std::ostringstream d;
  d.precision(6);
  d << "p=" << p << ", q=" << q << "; 2q/3+1=" << repulsive << ", q+2/3=" << finite << ". ";

  if (same(q, 1.0)) {
    d << "q=1: the two thresholds meet at p=5/3, boundary line";
    return {RangeLabel::Boundary, d.str()};
  }
  if (q > 1.0 && same(p, repulsive)) {
    d << "p=2q/3+1: edge of self-repulsiveness";
    return {RangeLabel::Boundary, d.str()};
  }
  if (q > 1.0 && same(p, finite)) {
    // p = q+2/3 is already infinite on closed curves
    d << "p=q+2/3: finite only on curves with constant tangent, no closed curve";
    return {RangeLabel::Singular, d.str()};
  }
  if (q < 1.0) {
    if (p >= repulsive || same(p, repulsive)) {
      d << "p>=2q/3+1 and p>=q+2/3: every closed curve has infinite energy";
      return {RangeLabel::Singular, d.str()};
    }
    if (p >= finite || same(p, finite)) {
      d << "q<1, q+2/3<=p<2q/3+1: infinite on closed C^3 curves, finite on polygons";
      return {RangeLabel::Strange, d.str()};
    }
    d << "p<2q/3+1: not self-repulsive";
    return {RangeLabel::NonRepulsive, d.str()};
  }
  if (p < repulsive) {
    d << "p<2q/3+1: not self-repulsive";
    return {RangeLabel::NonRepulsive, d.str()};
  }
  if (p >= finite) {
    d << "p>=q+2/3: infinite on every closed curve";
    return {RangeLabel::Singular, d.str()};
  }
  if (same(q, 2.0)) {
    d << "q=2, 7/3<p<8/3: sub-critical with non-degenerate leading term";
    return {RangeLabel::NondegenerateSubcritical, d.str()};
  }
  d << "2q/3+1<p<q+2/3: sub-critical knot energy";
  return {RangeLabel::SubcriticalKnotEnergy, d.str()};
}

}  // namespace menger
