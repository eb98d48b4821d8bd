#include "menger/sobolev.hpp"

#include <cmath>
#include <limits>

#include "menger/error.hpp"

namespace menger {

void SeminormSpec::validate() const {
  if (!(s > 0 && s < 1)) throw Error(ErrorKind::BadParams, "s must lie in (0,1)");
  if (!(rho >= 1) || !std::isfinite(rho)) throw Error(ErrorKind::BadParams, "rho must be >= 1");
}

namespace {

// Offset m contributes to both signs; an offset that sits exactly on the end
// of the w-range gets half weight (the two signs are the same point of R/Z
// for the first-difference range, the open end of (-1/4,1/4) for the second).
double end_weight(Eigen::Index m, Eigen::Index M, int divisor) {
  return (M % divisor == 0 && m * divisor == M) ? 0.5 : 1.0;
}

Eigen::MatrixXd unit_tangents(const Curve& c) {
  Eigen::MatrixXd t = c.edges();
  t.colwise().normalize();
  return t;
}

}  // namespace

double seminorm_first_samples(const Eigen::MatrixXd& t, const SeminormSpec& spec, bool periodic) {
  spec.validate();
  const Eigen::Index M = t.cols();
  if (M < 2) throw Error(ErrorKind::BadInput, "need at least two samples");
  const double expo = 1.0 + spec.rho * spec.s;
  double sum = 0;
  for (Eigen::Index m = 1; 2 * m <= M; ++m) {
    const double scale = end_weight(m, M, 2) / std::pow(double(m) / M, expo);
    double acc = 0;
    for (Eigen::Index u = 0; u < M; ++u)
      for (int sign : {-1, 1}) {
        Eigen::Index v = u + sign * m;
        if (periodic) {
          v = (v % M + M) % M;
        } else if (v < 0 || v >= M) {
          continue;
        }
        acc += std::pow((t.col(v) - t.col(u)).norm(), spec.rho);
      }
    sum += scale * acc;
  }
  return std::pow(sum / (double(M) * M), 1.0 / spec.rho);
}

double seminorm_second_samples(const Eigen::MatrixXd& f, const SeminormSpec& spec, bool periodic) {
  spec.validate();
  const Eigen::Index M = f.cols();
  if (M < 4) throw Error(ErrorKind::BadInput, "need at least four samples");
  const double expo = 1.0 + spec.rho * (1.0 + spec.s);
  double sum = 0;
  for (Eigen::Index m = 1; 4 * m <= M; ++m) {
    const double scale = end_weight(m, M, 4) / std::pow(double(m) / M, expo);
    double acc = 0;
    for (Eigen::Index u = 0; u < M; ++u) {
      Eigen::Index a = u + m, b = u - m;
      if (periodic) {
        a = (a % M + M) % M;
        b = (b % M + M) % M;
      } else if (b < 0 || a >= M) {
        continue;
      }
      acc += std::pow((f.col(a) - 2.0 * f.col(u) + f.col(b)).norm(), spec.rho);
    }
    sum += 2.0 * scale * acc;  // +m and -m give the same second difference
  }
  return std::pow(sum / (double(M) * M), 1.0 / spec.rho);
}

double seminorm_first(const Curve& curve, const SeminormSpec& spec) {
  if (!curve.is_arclength()) throw Error(ErrorKind::NotArclength, "tangent seminorm needs an arc-length curve");
  return seminorm_first_samples(unit_tangents(curve), spec, true);
}

double seminorm_second(const Curve& curve, const SeminormSpec& spec) {
  return seminorm_second_samples(curve.vertices(), spec, true);
}

std::pair<double, double> equivalence_interval(double s, double rho) {
  return {std::pow(2.0, -1.0 - 2.0 / s), 2.0 / (1.0 + s * rho)};
}

EquivalenceReport equivalence_check(const Curve& curve, const SeminormSpec& spec) {
  EquivalenceReport r;
  r.first = curve.length() * seminorm_first(curve, spec);
  r.second = seminorm_second(curve, spec);
  const double tiny = 1e-300;
  if (!(r.first > tiny) || !(r.second > tiny))
    throw Error(ErrorKind::ZeroSeminorm, "a seminorm vanishes, the ratio is undefined");
  r.ratio = r.second / r.first;
  std::tie(r.lower, r.upper) = equivalence_interval(spec.s, spec.rho);
  r.within = r.ratio >= r.lower * (1.0 - r.slack) && r.ratio <= r.upper * (1.0 + r.slack);
  return r;
}

HoelderReport hoelder_estimate(const Curve& curve, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorKind::BadParams, "alpha must lie in (0,1)");
  const Eigen::MatrixXd t = unit_tangents(curve);
  const Eigen::Index N = t.cols();
  HoelderReport r;
  r.alpha = alpha;
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = a + 1; b < N; ++b) {
      const double v = (t.col(a) - t.col(b)).norm() / std::pow(periodic_distance(a, b, N), alpha);
      if (v > r.seminorm) {
        r.seminorm = v;
        r.pair = {a, b};
      }
    }
  return r;
}

EnergySpaceReport energy_space_ratios(const Curve& curve, const EnergyParams& params, const QuadratureSpec& quad) {
  const RangeClass rc = classify(params.p, params.q);
  if (!is_subcritical(rc.label))
    throw Error(ErrorKind::BadRegime, std::string("energy space ratios need sub-critical (p,q), got ") + to_string(rc.label));
  EnergySpaceReport r;
  r.energy = energy_decomposed(curve, params, quad).value;
  r.s = params.s();
  const double L = curve.length();
  r.seminorm = L * seminorm_first(curve, SeminormSpec{r.s, params.q, SeminormVariant::first_difference});
  r.norm = r.seminorm + L;
  r.energy_over_norm = r.energy / std::pow(r.norm, params.q);
  r.seminorm_over_energy = std::pow(r.seminorm, params.q) / r.energy;
  return r;
}

}  // namespace menger
