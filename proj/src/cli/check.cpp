#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "menger/cli.hpp"
#include "menger/menger.hpp"

namespace menger::cli {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << std::scientific << v;
  return s.str();
}

Outcome decomposition(bool fast) {
  const EnergyParams e = EnergyParams::make(2.5, 2.0);
  const Curve c = make_preset("perturbed_circle(0.1,3)", fast ? 16 : 24, 3);
  const double full = energy_full(c, e).value;
  const double dec = energy_decomposed(c, e).value;
  const double rel = std::abs(full - dec) / std::abs(full);
  return {rel <= 1e-12, "relative difference " + fmt(rel)};
}

Outcome gradient_fd(bool fast) {
  const EnergyParams e = EnergyParams::make(2.5, 2.0);
  const QuadratureSpec quad{DegeneratePolicy::zeta_corrected, true};
  const Curve c = make_preset("perturbed_circle(0.1,2)", fast ? 12 : 16, 3);
  const auto g = discrete_gradient(c, e, quad);
  const double scale = g.sup_norm() / double(c.size());
  const double h = 1e-5;
  double worst = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    for (int d = 0; d < 3; ++d) {
      Eigen::MatrixXd P = c.vertices();
      P(d, i) += h;
      const double ep = discrete_energy(Curve{P}, e, quad);
      P(d, i) -= 2 * h;
      const double em = discrete_energy(Curve{P}, e, quad);
      worst = std::max(worst, std::abs((ep - em) / (2 * h) - g.vectors(d, i) / double(c.size())));
    }
  const double rel = worst / scale;
  return {rel <= 1e-6, "max error / sup gradient " + fmt(rel)};
}

Outcome circle_critical(bool fast) {
  const EnergyParams e = EnergyParams::make(2.5, 2.0);
  const Curve c = make_preset("circle", fast ? 32 : 64, 2);
  const auto pg = projected_gradient(c, e, QuadratureSpec{DegeneratePolicy::zeta_corrected, true});
  // the unconstrained gradient must be radial and uniform
  const Eigen::Vector2d center = c.vertices().rowwise().mean();
  double tangential = 0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const Eigen::Vector2d r = (c.vertices().col(i) - center).normalized();
    const Eigen::Vector2d g = pg.energy_gradient.vectors.col(i);
    tangential = std::max(tangential, std::abs(r.x() * g.y() - r.y() * g.x()));
  }
  const double sup = pg.energy_gradient.sup_norm();
  const bool ok = pg.residual <= 1e-3 * sup && tangential <= 1e-8 * sup;
  return {ok, "residual / sup gradient " + fmt(pg.residual / sup) + ", tangential " + fmt(tangential / sup)};
}

Outcome seminorm_interval(bool fast) {
  const Curve c = make_preset("circle", fast ? 128 : 256, 2);
  const EquivalenceReport r = equivalence_check(c, SeminormSpec{0.5, 2.0, SeminormVariant::first_difference});
  return {r.within, "ratio " + fmt(r.ratio) + " in [" + fmt(r.lower) + ", " + fmt(r.upper) + "]"};
}

Outcome symbol_slope(bool fast) {
  const std::vector<int> ks = fast ? std::vector<int>{4, 8, 16} : std::vector<int>{8, 16, 32};
  const SymbolTable t = rho_asymptotic(2.5, ks);
  return {std::abs(t.slope - 3.5) <= 0.05, "slope " + fmt(t.slope) + ", expected 3.5"};
}

Outcome scaling(bool fast) {
  const EnergyParams e = EnergyParams::make(2.5, 2.0);
  const Curve c = make_preset("ellipse(2)", fast ? 24 : 40, 2);
  const double lam = 1.7;
  const double a = energy_decomposed(c, e).value;
  const double b = energy_decomposed(c.scaled(lam), e).value;
  const double rel = std::abs(b - std::pow(lam, e.scaling_exponent()) * a) / std::abs(b);
  return {rel <= 1e-12, "relative error " + fmt(rel)};
}

Outcome regimes(bool) {
  struct Case {
    double p, q;
    RangeLabel want;
  };
  const Case cases[] = {{2.5, 2.0, RangeLabel::NondegenerateSubcritical},
                        {3.0, 2.0, RangeLabel::Singular},
                        {1.0, 2.0, RangeLabel::NonRepulsive},
                        {2.1, 1.5, RangeLabel::SubcriticalKnotEnergy}};
  for (const auto& c : cases)
    if (classify(c.p, c.q).label != c.want)
      return {false, "(" + fmt(c.p) + "," + fmt(c.q) + ") classified as " + to_string(classify(c.p, c.q).label)};
  return {true, "spot checks agree"};
}

}  // namespace

int check_suite(bool fast, std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<Outcome(bool)>>> checks = {
      {"decomposition", decomposition}, {"gradient_fd", gradient_fd}, {"circle_critical", circle_critical},
      {"seminorm_interval", seminorm_interval}, {"symbol_slope", symbol_slope}, {"scaling", scaling},
      {"regimes", regimes}};
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    Outcome r;
    try {
      r = fn(fast);
    } catch (const std::exception& ex) {
      r = {false, std::string("threw: ") + ex.what()};
    }
    out << (r.pass ? "PASS " : "FAIL ") << name << ": " << r.detail << "\n";
    failed += !r.pass;
  }
  out << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << "\n";
  return failed ? kNumeric : kOk;
}

}  // namespace menger::cli
