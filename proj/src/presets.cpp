#include "menger/presets.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "menger/error.hpp"
#include "menger/geometry.hpp"

namespace menger {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::string> split_args(const std::string& text, std::string& name) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  std::vector<std::string> args;
  const auto open = t.find_first_of("(:");
  name = t.substr(0, open);
  if (open == std::string::npos) return args;
  std::string rest = t.substr(open + 1);
  if (t[open] == '(') {
    if (rest.empty() || rest.back() != ')') throw Error(ErrorKind::BadPreset, "unbalanced parentheses in '" + text + "'");
    rest.pop_back();
  }
  std::string cur;
  for (char c : rest) {
    if (c == ',' || c == ':') {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  args.push_back(cur);
  return args;
}

double to_double(const std::string& s, const std::string& ctx) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::BadPreset, "bad number '" + s + "' in " + ctx);
  }
}

int to_int(const std::string& s, const std::string& ctx) {
  const double v = to_double(s, ctx);
  if (v != std::floor(v)) throw Error(ErrorKind::BadPreset, "expected an integer in " + ctx);
  return static_cast<int>(v);
}

// Position on the preset curve at parameter t in [0,1)
Eigen::Vector3d evaluate(const PresetSpec& spec, double t, const Eigen::VectorXd& coef) {
  const double th = kTwoPi * t;
  switch (spec.kind) {
    case PresetKind::Circle:
      return {std::cos(th), std::sin(th), 0.0};
    case PresetKind::Ellipse:
      return {spec.aspect * std::cos(th), std::sin(th), 0.0};
    case PresetKind::TorusKnot: {
      const double r = 2.0 + std::cos(spec.b * th);
      return {r * std::cos(spec.a * th), r * std::sin(spec.a * th), std::sin(spec.b * th)};
    }
    case PresetKind::Polygon: {
      const double x = t * spec.sides;
      const int side = std::min(static_cast<int>(std::floor(x)), spec.sides - 1);
      const double f = x - side;
      const double a0 = kTwoPi * side / spec.sides, a1 = kTwoPi * (side + 1) / spec.sides;
      const Eigen::Vector3d c0(std::cos(a0), std::sin(a0), 0), c1(std::cos(a1), std::sin(a1), 0);
      return (1 - f) * c0 + f * c1;
    }
    case PresetKind::PerturbedCircle: {
      // radial modes 2..5 in coef(0..7), vertical modes 1..3 in coef(8..13)
      double r = 1.0, z = 0.0;
      for (int m = 2; m <= 5; ++m)
        r += spec.epsilon * (coef(2 * (m - 2)) * std::cos(m * th) + coef(2 * (m - 2) + 1) * std::sin(m * th));
      for (int m = 1; m <= 3; ++m)
        z += spec.epsilon * (coef(8 + 2 * (m - 1)) * std::cos(m * th) + coef(9 + 2 * (m - 1)) * std::sin(m * th));
      return {r * std::cos(th), r * std::sin(th), z};
    }
  }
  return Eigen::Vector3d::Zero();
}

}  // namespace

PresetSpec PresetSpec::parse(const std::string& text) {
  std::string name;
  const auto args = split_args(text, name);
  PresetSpec s;
  auto want = [&](size_t lo, size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw Error(ErrorKind::BadPreset, "wrong number of arguments for preset '" + name + "'");
  };
  if (name == "circle") {
    want(0, 0);
    s.kind = PresetKind::Circle;
  } else if (name == "ellipse") {
    want(0, 1);
    s.kind = PresetKind::Ellipse;
    if (!args.empty()) s.aspect = to_double(args[0], text);
    if (!(s.aspect > 0)) throw Error(ErrorKind::BadPreset, "ellipse aspect must be positive");
  } else if (name == "torus_knot" || name == "trefoil") {
    s.kind = PresetKind::TorusKnot;
    if (name == "trefoil") {
      want(0, 0);
    } else {
      want(2, 2);
      s.a = to_int(args[0], text);
      s.b = to_int(args[1], text);
    }
    if (s.a < 1 || s.b < 1 || std::gcd(s.a, s.b) != 1)
      throw Error(ErrorKind::BadPreset, "torus_knot(a,b) needs coprime a,b >= 1");
  } else if (name == "polygon" || name == "square") {
    s.kind = PresetKind::Polygon;
    if (name == "square") {
      want(0, 0);
      s.sides = 4;
    } else {
      want(1, 1);
      s.sides = to_int(args[0], text);
    }
    if (s.sides < 3) throw Error(ErrorKind::BadPreset, "polygon needs at least 3 sides");
  } else if (name == "perturbed_circle") {
    want(0, 2);
    s.kind = PresetKind::PerturbedCircle;
    if (args.size() > 0) s.epsilon = to_double(args[0], text);
    if (args.size() > 1) s.seed = static_cast<std::uint64_t>(to_int(args[1], text));
    if (!(s.epsilon >= 0) || s.epsilon >= 0.5) throw Error(ErrorKind::BadPreset, "perturbation must lie in [0, 0.5)");
  } else {
    throw Error(ErrorKind::BadPreset, "unknown preset '" + name + "'");
  }
  return s;
}

std::string PresetSpec::name() const {
  std::ostringstream o;
  switch (kind) {
    case PresetKind::Circle: o << "circle"; break;
    case PresetKind::Ellipse: o << "ellipse(" << aspect << ")"; break;
    case PresetKind::TorusKnot: o << "torus_knot(" << a << "," << b << ")"; break;
    case PresetKind::Polygon: o << "polygon(" << sides << ")"; break;
    case PresetKind::PerturbedCircle: o << "perturbed_circle(" << epsilon << "," << seed << ")"; break;
  }
  return o.str();
}

Curve make_preset(const PresetSpec& spec, Eigen::Index N, int dim) {
  if (N < 3) throw Error(ErrorKind::BadPreset, "N must be at least 3");
  if (dim != 2 && dim != 3) throw Error(ErrorKind::BadPreset, "dim must be 2 or 3");
  if (spec.kind == PresetKind::TorusKnot && dim != 3) throw Error(ErrorKind::BadPreset, "torus knots need dim 3");

  Eigen::VectorXd coef = Eigen::VectorXd::Zero(14);
  if (spec.kind == PresetKind::PerturbedCircle) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 14; ++i) coef(i) = u(rng);
    // keep the radial perturbation bounded by epsilon
    coef.head(8) /= coef.head(8).cwiseAbs().sum();
    coef.tail(6) /= coef.tail(6).cwiseAbs().sum();
    if (dim == 2) coef.tail(6).setZero();
  }

  Eigen::MatrixXd P;
  if (spec.kind == PresetKind::Circle) {
    // regular N-gon, already equilateral
    P.resize(dim, N);
    for (Eigen::Index i = 0; i < N; ++i) P.col(i) = evaluate(spec, double(i) / N, coef).head(dim);
    Curve c{P};
    return c.scaled(1.0 / c.length());
  }

  // dense sampling, then equal chords on the fine polygon
  Eigen::Index fine = std::max<Eigen::Index>(64 * N, 2048);
  if (spec.kind == PresetKind::Polygon) fine = spec.sides * std::max<Eigen::Index>(64, (64 * N) / spec.sides);
  P.resize(dim, fine);
  for (Eigen::Index i = 0; i < fine; ++i) P.col(i) = evaluate(spec, double(i) / fine, coef).head(dim);
  Curve dense{P};
  Curve out = resample_arclength(dense, N);
  out = out.scaled(1.0 / out.length());
  if (N >= 4 && !(min_segment_distance(out) > 0))
    throw Error(ErrorKind::BadPreset, spec.name() + " is not embedded at N=" + std::to_string(N));
  return out;
}

Curve make_preset(const std::string& spec, Eigen::Index N, int dim) {
  return make_preset(PresetSpec::parse(spec), N, dim);
}

std::vector<PresetSpec> smooth_family() {
  std::vector<PresetSpec> f;
  f.push_back(PresetSpec::parse("circle"));
  f.push_back(PresetSpec::parse("ellipse(1.5)"));
  f.push_back(PresetSpec::parse("ellipse(2)"));
  f.push_back(PresetSpec::parse("perturbed_circle(0.05,1)"));
  f.push_back(PresetSpec::parse("perturbed_circle(0.1,2)"));
  f.push_back(PresetSpec::parse("torus_knot(2,3)"));
  return f;
}

}  // namespace menger
