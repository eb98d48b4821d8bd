#pragma once

#include <iosfwd>
#include <string>

#include "curve.hpp"

namespace menger {

// {"dim": int, "vertices": [[x,y(,z)],...], "is_arclength": bool}
std::string curve_to_json(const Curve& curve);
Curve curve_from_json(const std::string& text);

// one vertex per row, comma separated; '#' lines are comments
std::string curve_to_csv(const Curve& curve);
Curve curve_from_csv(const std::string& text);

// format chosen by extension (.json, otherwise csv)
Curve read_curve(const std::string& path);
void write_curve(const Curve& curve, const std::string& path);

}  // namespace menger
