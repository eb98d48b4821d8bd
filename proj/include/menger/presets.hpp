#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curve.hpp"

namespace menger {

enum class PresetKind { Circle, Ellipse, TorusKnot, Polygon, PerturbedCircle };

struct PresetSpec {
  PresetKind kind = PresetKind::Circle;
  double aspect = 2.0;          // ellipse
  int a = 2, b = 3;             // torus knot
  int sides = 4;                // polygon
  double epsilon = 0.05;        // perturbed circle
  std::uint64_t seed = 1;       // perturbed circle

  // "circle", "ellipse", "ellipse(3)", "torus_knot(2,3)", "polygon(4)",
  // "perturbed_circle(0.05,7)"; ':' works as a separator too
  static PresetSpec parse(const std::string& text);
  std::string name() const;
};

// unit-length curve with N arc-length vertices
Curve make_preset(const PresetSpec& spec, Eigen::Index N, int dim);
Curve make_preset(const std::string& spec, Eigen::Index N, int dim);

// the smooth embedded curves used for family-level tests
std::vector<PresetSpec> smooth_family();

}  // namespace menger
