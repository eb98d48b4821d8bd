#include "menger/energy.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "menger/detail/energy_terms.hpp"
#include "menger/detail/kernel.hpp"
#include "menger/error.hpp"
#include "menger/geometry.hpp"
#include "menger/parallel.hpp"

namespace menger {

double riemann_zeta(double s) {
  if (s == 1.0) throw Error(ErrorKind::BadParams, "zeta has a pole at 1");
  return std::riemann_zeta(s);
}

namespace detail {

void require_correction_params(const EnergyParams& params) {
  if (!(params.p - params.q < 1.0))
    throw Error(ErrorKind::BadParams, "the diagonal correction needs p - q < 1 (integrable plane singularity)");
}

template <typename Scalar>
Scalar zeta_correction(const Points3<Scalar>& P, const VecX<Scalar>& w, const EnergyParams& params,
                       Points3<Scalar>* grad, VecX<Scalar>* dw) {
  require_correction_params(params);
  const Eigen::Index N = P.cols();
  const Scalar a = Scalar(params.p - params.q);
  const Scalar c0 = Scalar(-6.0 * riemann_zeta(params.p - params.q));
  const Scalar beta = Scalar(2) - a;
  const Scalar half_q = Scalar(0.5 * params.q), p = Scalar(params.p);
  const bool q_is_two = params.q == 2.0;
  auto wrap = [N](Eigen::Index i) { return (i % N + N) % N; };

  Points3<Scalar> T(3, N);
  VecX<Scalar> mnorm(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const Vec3<Scalar> m = P.col(wrap(i + 1)) - P.col(wrap(i - 1));
    mnorm(i) = m.norm();
    T.col(i) = m / mnorm(i);
  }

  const int blocks = default_blocks(N);
  std::vector<Scalar> partial(blocks, Scalar(0));
  std::vector<Points3<Scalar>> gbuf;
  std::vector<VecX<Scalar>> wbuf;
  if (grad) {
    gbuf.assign(blocks, Points3<Scalar>::Zero(3, N));
    wbuf.assign(blocks, VecX<Scalar>::Zero(N));
  }

  for_blocks(N, blocks, [&](int blk, long begin, long end) {
    Scalar acc = 0;
    for (Eigen::Index i = begin; i < end; ++i) {
      const Vec3<Scalar> Ti = T.col(i);
      const Vec3<Scalar> Pi = P.col(i);
      const Scalar wb = std::pow(w(i), beta);
      Scalar Gi = 0;
      Vec3<Scalar> gT = Vec3<Scalar>::Zero();
      for (Eigen::Index k = 0; k < N; ++k) {
        if (k == i) continue;
        const Vec3<Scalar> d = P.col(k) - Pi;
        const Vec3<Scalar> n = Ti.cross(d);
        const Scalar W = n.squaredNorm();
        if (W == Scalar(0)) continue;
        const Scalar D = d.squaredNorm();
        const Scalar Dp = std::pow(D, -p);
        Scalar g, fW;
        if (q_is_two) {
          g = W * Dp;
          fW = Dp;
        } else if (W > Scalar(1e-28) * D) {
          const Scalar Wq = std::pow(W, half_q - Scalar(1));
          g = Wq * W * Dp;
          fW = half_q * Wq * Dp;
        } else {
          g = std::pow(W, half_q) * Dp;
          fW = 0;
        }
        Gi += w(k) * g;
        if (grad) {
          const Vec3<Scalar> dgd = Scalar(2) * fW * n.cross(Ti) - Scalar(2) * p * g / D * d;
          const Scalar coef = c0 * wb * w(k);
          gbuf[blk].col(k) += coef * dgd;
          gbuf[blk].col(i) -= coef * dgd;
          gT += w(k) * (Scalar(2) * fW * d.cross(n));
          wbuf[blk](k) += c0 * wb * g;
        }
      }
      acc += wb * Gi;
      if (grad) {
        wbuf[blk](i) += c0 * beta * std::pow(w(i), beta - Scalar(1)) * Gi;
        const Vec3<Scalar> gm = c0 * wb * (gT - Ti * Ti.dot(gT)) / mnorm(i);
        gbuf[blk].col(wrap(i + 1)) += gm;
        gbuf[blk].col(wrap(i - 1)) -= gm;
      }
    }
    partial[blk] = acc;
  });

  Scalar total = 0;
  for (int b = 0; b < blocks; ++b) {
    total += partial[b];
    if (grad) {
      *grad += gbuf[b];
      *dw += wbuf[b];
    }
  }
  return c0 * total;
}

template <typename Scalar>
void weights_to_vertices(const Points3<Scalar>& P, const VecX<Scalar>& dw, Points3<Scalar>& grad) {
  const Eigen::Index N = P.cols();
  for (Eigen::Index e = 0; e < N; ++e) {
    const Eigen::Index f = (e + 1) % N;
    const Vec3<Scalar> edge = P.col(f) - P.col(e);
    const Vec3<Scalar> t = edge / edge.norm();
    const Scalar dl = Scalar(0.5) * (dw(e) + dw(f));
    grad.col(f) += dl * t;
    grad.col(e) -= dl * t;
  }
}

template double zeta_correction<double>(const Points3<double>&, const VecX<double>&, const EnergyParams&,
                                        Points3<double>*, VecX<double>*);
template void weights_to_vertices<double>(const Points3<double>&, const VecX<double>&, Points3<double>&);

}  // namespace detail

namespace {

using detail::KernelExponents;
using detail::Points3;
using detail::VecX;

template <typename Scalar>
void require_arclength(const ClosedCurve<Scalar>& curve) {
  if (!curve.is_arclength())
    throw Error(ErrorKind::NotArclength, "curve is not arc-length parametrized, resample it first");
}

template <typename Scalar>
Scalar merge(const std::vector<Scalar>& partial) {
  Scalar s = 0;
  for (Scalar v : partial) s += v;
  return s;
}

int blocks_for(Eigen::Index N, const QuadratureSpec& quad) {
  return quad.deterministic_reduction ? default_blocks(N) : std::max(1, num_threads());
}

template <typename Scalar>
Scalar full_sum(const Points3<Scalar>& P, const VecX<Scalar>& w, const EnergyParams& params,
                const QuadratureSpec& quad) {
  const Eigen::Index N = P.cols();
  const KernelExponents ex(params);
  const int blocks = blocks_for(N, quad);
  std::vector<Scalar> partial(blocks, Scalar(0));
  for_blocks(N, blocks, [&](int blk, long begin, long end) {
    Scalar acc = 0;
    for (Eigen::Index i = begin; i < end; ++i) {
      const detail::Vec3<Scalar> x = P.col(i);
      Scalar inner = 0;
      for (Eigen::Index j = 0; j < N; ++j) {
        if (j == i) continue;
        const detail::Vec3<Scalar> y = P.col(j);
        Scalar row = 0;
        for (Eigen::Index k = 0; k < N; ++k) {
          if (k == i || k == j) continue;
          row += w(k) * detail::kernel_value<Scalar>(x, y, P.col(k), ex);
        }
        inner += w(j) * row;
      }
      acc += w(i) * inner;
    }
    partial[blk] = acc;
  });
  return merge(partial);
}

// Base vertex i, partners j = i - n1 and k = i + n3. The gaps around the
// circle are n1, n3 and the rest N - n1 - n3; a triple is kept when the rest
// gap is the largest one (w <= 1+2v and v >= -1+2w in offset terms), ties
// broken so that each unordered triple is visited once.
template <typename Scalar>
Scalar decomposed_sum(const Points3<Scalar>& P, const VecX<Scalar>& w, const EnergyParams& params,
                      const QuadratureSpec& quad, std::int64_t* count) {
  const Eigen::Index N = P.cols();
  const KernelExponents ex(params);
  const int blocks = blocks_for(N, quad);
  std::vector<Scalar> partial(blocks, Scalar(0));
  std::vector<std::int64_t> counts(blocks, 0);
  for_blocks(N, blocks, [&](int blk, long begin, long end) {
    Scalar acc = 0;
    std::int64_t cnt = 0;
    for (Eigen::Index i = begin; i < end; ++i) {
      const detail::Vec3<Scalar> x = P.col(i);
      Scalar inner = 0;
      for (Eigen::Index n1 = 1; N - 2 * n1 >= 1; ++n1) {
        const Eigen::Index j = (i - n1 + N) % N;
        const detail::Vec3<Scalar> y = P.col(j);
        const Eigen::Index n3max = std::min((N - n1) / 2, N - 2 * n1);
        Scalar row = 0;
        for (Eigen::Index n3 = 1; n3 <= n3max; ++n3) {
          const Eigen::Index rest = N - n1 - n3;
          if (rest == n1 && !(n3 == n1 && 3 * i < N)) continue;
          const Eigen::Index k = (i + n3) % N;
          row += w(k) * detail::kernel_value<Scalar>(x, y, P.col(k), ex);
          ++cnt;
        }
        inner += w(j) * row;
      }
      acc += w(i) * inner;
    }
    partial[blk] = acc;
    counts[blk] = cnt;
  });
  if (count) *count = std::accumulate(counts.begin(), counts.end(), std::int64_t(0));
  return Scalar(6) * merge(partial);
}

template <typename Scalar>
Scalar correction_for(const Points3<Scalar>& P, const VecX<Scalar>& w, const EnergyParams& params,
                      const QuadratureSpec& quad) {
  if (quad.degenerate_policy != DegeneratePolicy::zeta_corrected) return Scalar(0);
  return detail::zeta_correction<Scalar>(P, w, params, nullptr, nullptr);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

template <typename Scalar>
EnergyReport energy_full(const ClosedCurve<Scalar>& curve, const EnergyParams& params, const QuadratureSpec& quad) {
  EnergyParams::make(params.p, params.q);
  require_arclength(curve);
  check_embedded(curve);
  const Points3<Scalar> P = curve.embedded3();
  const VecX<Scalar> w = curve.vertex_weights();
  EnergyReport r;
  r.N = curve.size();
  r.params = params;
  r.decomposition_used = false;
  r.diagonal_correction = static_cast<double>(correction_for(P, w, params, quad));
  r.value = static_cast<double>(full_sum(P, w, params, quad)) + r.diagonal_correction;
  const std::int64_t n = r.N;
  r.kernel_evaluations = n * (n - 1) * (n - 2);
  return r;
}

template <typename Scalar>
EnergyReport energy_decomposed(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                               const QuadratureSpec& quad) {
  EnergyParams::make(params.p, params.q);
  require_arclength(curve);
  check_embedded(curve);
  const Points3<Scalar> P = curve.embedded3();
  const VecX<Scalar> w = curve.vertex_weights();
  EnergyReport r;
  r.N = curve.size();
  r.params = params;
  r.decomposition_used = true;
  r.diagonal_correction = static_cast<double>(correction_for(P, w, params, quad));
  r.value = static_cast<double>(decomposed_sum(P, w, params, quad, &r.kernel_evaluations)) + r.diagonal_correction;
  return r;
}

template <typename Scalar>
Scalar discrete_energy(const ClosedCurve<Scalar>& curve, const EnergyParams& params, const QuadratureSpec& quad) {
  EnergyParams::make(params.p, params.q);
  check_embedded(curve);
  const Points3<Scalar> P = curve.embedded3();
  const VecX<Scalar> w = curve.vertex_weights();
  return decomposed_sum(P, w, params, quad, nullptr) + correction_for(P, w, params, quad);
}

template <typename Scalar>
Scalar diagonal_correction(const ClosedCurve<Scalar>& curve, const EnergyParams& params, const QuadratureSpec& quad) {
  return correction_for<Scalar>(curve.embedded3(), curve.vertex_weights(), params, quad);
}

template EnergyReport energy_full<double>(const Curve&, const EnergyParams&, const QuadratureSpec&);
template EnergyReport energy_decomposed<double>(const Curve&, const EnergyParams&, const QuadratureSpec&);
template double discrete_energy<double>(const Curve&, const EnergyParams&, const QuadratureSpec&);
template double diagonal_correction<double>(const Curve&, const EnergyParams&, const QuadratureSpec&);

double ConvergenceTable::last_relative_change() const {
  if (rows.size() < 2) return 0.0;
  const double a = rows[rows.size() - 2].value, b = rows.back().value;
  return std::abs(b - a) / std::abs(b);
}

ConvergenceTable energy_convergence(const PresetSpec& preset, int dim, const EnergyParams& params,
                                    std::span<const Eigen::Index> Ns) {
  const auto policy = params.p - params.q < 1.0 ? DegeneratePolicy::zeta_corrected : DegeneratePolicy::skip_coincident;
  return energy_convergence(preset, dim, params, Ns, policy);
}

ConvergenceTable energy_convergence(const PresetSpec& preset, int dim, const EnergyParams& params,
                                    std::span<const Eigen::Index> Ns, DegeneratePolicy policy) {
  EnergyParams::make(params.p, params.q);
  if (Ns.empty()) throw Error(ErrorKind::BadParams, "no grid sizes given");
  for (size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 4) throw Error(ErrorKind::BadParams, "grid sizes must be at least 4");
    if (i > 0 && Ns[i] <= Ns[i - 1]) throw Error(ErrorKind::BadParams, "grid sizes must increase");
  }
  if (policy == DegeneratePolicy::zeta_corrected) detail::require_correction_params(params);

  ConvergenceTable t;
  t.preset = preset;
  t.params = params;
  t.policy = policy;
  std::vector<double> xs, ys;
  for (Eigen::Index N : Ns) {
    const Curve c = make_preset(preset, N, dim);
    const EnergyReport raw = energy_decomposed(c, params, {DegeneratePolicy::skip_coincident, true});
    ConvergenceRow row;
    row.N = N;
    row.raw = raw.value;
    row.value = raw.value + diagonal_correction(c, params, QuadratureSpec{policy, true});
    t.rows.push_back(row);
    xs.push_back(double(N));
    ys.push_back(row.value);
  }
  t.slope = xs.size() > 1 ? fit_slope(xs, ys) : 0.0;
  for (size_t i = 1; i < t.rows.size(); ++i) t.differences.push_back(t.rows[i].value - t.rows[i - 1].value);
  return t;
}

}  // namespace menger
