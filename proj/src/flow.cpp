#include "menger/flow.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "menger/error.hpp"
#include "menger/geometry.hpp"

namespace menger {

void FlowConfig::validate() const {
  EnergyParams::make(params.p, params.q);
  auto bad = [](const char* what) { throw Error(ErrorKind::BadParams, what); };
  if (max_steps < 0) bad("max_steps must be >= 0");
  if (!(initial_step > 0)) bad("initial_step must be positive");
  if (!(armijo_c > 0 && armijo_c < 1)) bad("armijo_c must lie in (0,1)");
  if (!(backtrack_factor > 0 && backtrack_factor < 1)) bad("backtrack_factor must lie in (0,1)");
  if (resample_every < 0) bad("resample_every must be >= 0 (0 disables resampling)");
  if (!(guard_distance_factor > 0)) bad("guard_distance_factor must be positive");
  if (!(residual_tol > 0)) bad("residual_tol must be positive");
  if (snapshot_every < 0) bad("snapshot_every must be >= 0");
}

namespace {

Curve rescaled(const Curve& c, double target) {
  const Eigen::VectorXd m = c.centroid();
  Eigen::MatrixXd P = c.vertices();
  P = ((P.colwise() - m) * (target / c.length())).colwise() + m;
  return Curve{P};
}

// Fourier multiplier 1/(1 + (|k|/2)^e) applied to each coordinate row
Eigen::MatrixXd smooth(const Eigen::MatrixXd& field, double exponent) {
  const Eigen::Index N = field.cols();
  Eigen::FFT<double> fft;
  Eigen::MatrixXd out(field.rows(), N);
  std::vector<double> row(N), back(N);
  std::vector<std::complex<double>> spec;
  for (Eigen::Index r = 0; r < field.rows(); ++r) {
    for (Eigen::Index i = 0; i < N; ++i) row[i] = field(r, i);
    fft.fwd(spec, row);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(spec.size()); ++k) {
      const double f = static_cast<double>(std::min(k, N - k));
      spec[k] /= 1.0 + std::pow(f / 2.0, exponent);
    }
    fft.inv(back, spec);
    for (Eigen::Index i = 0; i < N; ++i) out(r, i) = back[i];
  }
  return out;
}

// removes the component along the central-difference tangent at each vertex;
// tangential motion only reparametrizes the curve
Eigen::MatrixXd normal_part(const Curve& c, const Eigen::MatrixXd& field) {
  const Eigen::Index N = c.size();
  Eigen::MatrixXd out = field;
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::VectorXd t = (c.vertex((i + 1) % N) - c.vertex((i + N - 1) % N)).normalized();
    out.col(i) -= t.dot(field.col(i)) * t;
  }
  return out;
}

struct Direction {
  Eigen::MatrixXd d;  // step is -tau * d
  double slope = 0;   // <g_E, d> in the discrete pairing, > 0
  ProjectedGradient<double> pg;
};

Direction descent_direction(const Curve& curve, const FlowConfig& cfg, const ProjectedGradient<double>* known) {
  Direction dir;
  dir.pg = known ? *known : projected_gradient(curve, cfg.params, cfg.quad);
  const auto& gE = dir.pg.energy_gradient;
  const auto& gL = dir.pg.length_gradient;
  // d = A gE + mu A gL with A = Pn S Pn symmetric semidefinite, mu chosen so
  // that <gL, d> = 0: the step keeps the length to first order and <gE, d> >= 0
  auto apply = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
    const Eigen::MatrixXd n = normal_part(curve, v);
    if (cfg.preconditioner == Preconditioner::none) return n;
    return normal_part(curve, smooth(n, std::max(3.0 * cfg.params.p - 4.0, 1.0)));
  };
  const Eigen::MatrixXd d0 = apply(gE.vectors), d1 = apply(gL.vectors);
  const double mu = -gL.pairing(d0) / gL.pairing(d1);
  dir.d = d0 + mu * d1;
  dir.slope = gE.pairing(dir.d);
  return dir;
}

double energy_of(const Curve& c, const FlowConfig& cfg) { return discrete_energy(c, cfg.params, cfg.quad); }

}  // namespace

FlowState initial_state(const Curve& curve, const FlowConfig& config) {
  config.validate();
  FlowState s;
  s.curve = curve;
  s.target_length = curve.length();
  s.energy = energy_of(curve, config);
  s.gradient = projected_gradient(curve, config.params, config.quad);
  s.residual = s.gradient->residual;
  s.lambda = s.gradient->lambda;
  s.min_distance = min_segment_distance(curve);
  s.step_size = config.initial_step;
  s.converged = s.residual < config.residual_tol;
  return s;
}

FlowState flow_step(const FlowState& state, const FlowConfig& config) {
  config.validate();
  const Curve& c = state.curve;
  const Direction dir = descent_direction(c, config, state.gradient ? &*state.gradient : nullptr);
  FlowState next = state;
  next.residual = dir.pg.residual;
  next.lambda = dir.pg.lambda;
  if (dir.pg.residual < config.residual_tol) {
    next.converged = true;
    return next;
  }
  if (!(dir.slope > 0)) {
    std::ostringstream o;
    o << "no descent direction at step " << state.step_index << " (slope " << dir.slope << ", residual "
      << dir.pg.residual << ")";
    throw Error(ErrorKind::StepFailure, o.str());
  }

  const Eigen::Index N = c.size();
  const double mean_edge = c.length() / double(N);
  const double guard = config.guard_distance_factor * mean_edge;
  // If no vertex moves by more than half the current segment distance, the
  // straight-line path between old and new polygon stays embedded.
  const double dmin = min_segment_distance(c);
  const double dmax = dir.d.colwise().norm().maxCoeff();
  double tau = std::min(state.step_size > 0 ? state.step_size : config.initial_step, config.initial_step);
  if (std::isfinite(dmin) && dmax > 0) tau = std::min(tau, 0.45 * dmin / dmax);

  while (tau >= 1e-14) {
    Curve trial;
    try {
      trial = rescaled(Curve{Eigen::MatrixXd(c.vertices() - tau * dir.d)}, state.target_length);
    } catch (const Error&) {
      tau *= config.backtrack_factor;
      continue;
    }
    const double dist = min_segment_distance(trial);
    if (dist < guard) {
      ++next.guard_trips;
      tau *= 0.5;
      continue;
    }
    double e_trial;
    try {
      e_trial = energy_of(trial, config);
    } catch (const Error&) {
      tau *= config.backtrack_factor;
      continue;
    }
    if (!(e_trial <= state.energy - config.armijo_c * tau * dir.slope)) {
      tau *= config.backtrack_factor;
      continue;
    }

    next.curve = trial;
    next.energy = e_trial;
    next.min_distance = dist;
    next.step_index = state.step_index + 1;
    next.step_size = tau;
    if (config.resample_every > 0 && next.step_index % config.resample_every == 0) {
      // keep the resampled curve only when it does not raise the energy
      try {
        const Curve r = rescaled(resample_arclength(trial, N), state.target_length);
        const double dr = min_segment_distance(r);
        const double er = dr >= guard ? energy_of(r, config) : e_trial + 1.0;
        if (er <= e_trial) {
          next.resample_energy_change += er - e_trial;
          next.curve = r;
          next.energy = er;
          next.min_distance = dr;
        } else {
          ++next.resamples_rejected;
        }
      } catch (const Error&) {
        ++next.resamples_rejected;
      }
    }
    // give the next step room to grow again
    next.step_size = std::min(tau / config.backtrack_factor, config.initial_step);
    next.gradient = projected_gradient(next.curve, config.params, config.quad);
    next.residual = next.gradient->residual;
    next.lambda = next.gradient->lambda;
    next.converged = next.residual < config.residual_tol;
    return next;
  }
  std::ostringstream o;
  o << "step size underflow at step " << state.step_index << ": energy " << state.energy << ", residual "
    << dir.pg.residual << ", slope " << dir.slope << ", guard trips " << next.guard_trips;
  throw Error(ErrorKind::StepFailure, o.str());
}

FlowResult run_flow(const Curve& curve, const FlowConfig& config) {
  FlowResult res;
  res.state = initial_state(curve, config);
  auto row = [&](const FlowState& s) {
    res.history.push_back({s.step_index, s.energy, s.residual, s.lambda, s.step_index ? s.step_size : 0.0,
                           s.min_distance});
  };
  row(res.state);
  if (config.snapshot_every > 0) res.snapshots.emplace_back(0, res.state.curve);
  for (int it = 0; it < config.max_steps && !res.state.converged; ++it) {
    try {
      FlowState next = flow_step(res.state, config);
      if (next.step_index == res.state.step_index) {
        res.state = next;
        break;
      }
      res.state = next;
      row(res.state);
      if (config.snapshot_every > 0 && res.state.step_index % config.snapshot_every == 0)
        res.snapshots.emplace_back(res.state.step_index, res.state.curve);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::StepFailure) throw;
      res.failure = e.what();
      break;
    }
  }
  return res;
}

}  // namespace menger
