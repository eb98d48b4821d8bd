#include "menger/variation.hpp"

#include <vector>

#include "menger/detail/energy_terms.hpp"
#include "menger/detail/kernel.hpp"
#include "menger/error.hpp"
#include "menger/geometry.hpp"
#include "menger/parallel.hpp"

namespace menger {

namespace {

using detail::Points3;
using detail::Vec3;
using detail::VecX;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
GradientField<Scalar> to_field(const Points3<Scalar>& partials, int dim) {
  GradientField<Scalar> g;
  g.vectors = partials.topRows(dim) * Scalar(partials.cols());
  return g;
}

template <typename Scalar>
void require_arclength(const ClosedCurve<Scalar>& curve) {
  if (!curve.is_arclength())
    throw Error(ErrorKind::NotArclength, "the variation formula needs an arc-length curve");
}

// Terms of the variation integrand for the ordered triple (i,j,k) with
// A = g_j - g_i, B = g_k - g_i, C = g_j - g_k: the wedge term acts on
// h_k - h_i, the chord term on h_j - h_k.
template <typename Scalar>
struct TripleTerms {
  Scalar K;
  Vec3<Scalar> wedge;  // coefficient of h_k - h_i
  Vec3<Scalar> chord;  // coefficient of h_j - h_k
};

template <typename Scalar>
TripleTerms<Scalar> triple_terms(const Vec3<Scalar>& xi, const Vec3<Scalar>& xj, const Vec3<Scalar>& xk,
                                 const EnergyParams& params) {
  const Vec3<Scalar> A = xj - xi, B = xk - xi, C = xj - xk;
  const Vec3<Scalar> n = A.cross(B);
  const Scalar W = n.squaredNorm();
  const Scalar AA = A.squaredNorm(), BB = B.squaredNorm(), CC = C.squaredNorm();
  const Scalar inv = std::pow(AA * BB * CC, Scalar(-0.5 * params.p));
  TripleTerms<Scalar> t;
  Scalar f1;
  if (params.q == 2.0) {
    t.K = W * inv;
    f1 = inv;
  } else if (W > Scalar(1e-28) * AA * BB) {
    const Scalar Wq = std::pow(W, Scalar(0.5 * params.q) - Scalar(1));
    t.K = Wq * W * inv;
    f1 = Wq * inv;
  } else {
    t.K = W == Scalar(0) ? Scalar(0) : std::pow(W, Scalar(0.5 * params.q)) * inv;
    f1 = 0;
  }
  // <A^B, A^H> = <(A x B) x A, H>
  t.wedge = Scalar(2 * params.q) * f1 * n.cross(A);
  t.chord = Scalar(-3 * params.p) * t.K / CC * C;
  return t;
}

}  // namespace

template <typename Scalar>
Scalar first_variation(const ClosedCurve<Scalar>& curve, const Matrix<Scalar>& h, const EnergyParams& params) {
  EnergyParams::make(params.p, params.q);
  require_arclength(curve);
  check_embedded(curve);
  if (h.rows() != curve.dim() || h.cols() != curve.size())
    throw Error(ErrorKind::BadInput, "direction field does not match the curve");
  const Eigen::Index N = curve.size();
  const Points3<Scalar> P = curve.embedded3();
  Points3<Scalar> H = Points3<Scalar>::Zero(3, N);
  H.topRows(curve.dim()) = h;
  const Scalar L = curve.length();
  const Scalar n = Scalar(N);

  // <gamma', h'> at vertex i: average over the two adjacent edges
  VecX<Scalar> tau(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Index ip = (i + 1) % N, im = (i + N - 1) % N;
    tau(i) = Scalar(0.5) * n * n *
             ((P.col(i) - P.col(im)).dot(H.col(i) - H.col(im)) + (P.col(ip) - P.col(i)).dot(H.col(ip) - H.col(i)));
  }

  const int blocks = default_blocks(N);
  std::vector<Scalar> partial(blocks, Scalar(0));
  for_blocks(N, blocks, [&](int blk, long begin, long end) {
    Scalar acc = 0;
    for (Eigen::Index i = begin; i < end; ++i)
      for (Eigen::Index j = 0; j < N; ++j) {
        if (j == i) continue;
        for (Eigen::Index k = 0; k < N; ++k) {
          if (k == i || k == j) continue;
          const auto t = triple_terms<Scalar>(P.col(i), P.col(j), P.col(k), params);
          acc += L * L * L * (t.wedge.dot(H.col(k) - H.col(i)) + t.chord.dot(H.col(j) - H.col(k))) +
                 Scalar(3) * L * t.K * tau(i);
        }
      }
    partial[blk] = acc;
  });
  Scalar total = 0;
  for (Scalar v : partial) total += v;
  return total / (n * n * n);
}

template <typename Scalar>
Matrix<Scalar> first_variation_coefficients(const ClosedCurve<Scalar>& curve, const EnergyParams& params) {
  EnergyParams::make(params.p, params.q);
  require_arclength(curve);
  check_embedded(curve);
  const Eigen::Index N = curve.size();
  const Points3<Scalar> P = curve.embedded3();
  const Scalar L = curve.length();
  const Scalar n = Scalar(N);

  const int blocks = default_blocks(N);
  std::vector<Points3<Scalar>> buf(blocks, Points3<Scalar>::Zero(3, N));
  VecX<Scalar> Ksum = VecX<Scalar>::Zero(N);
  for_blocks(N, blocks, [&](int blk, long begin, long end) {
    Points3<Scalar>& F = buf[blk];
    for (Eigen::Index i = begin; i < end; ++i) {
      Scalar ks = 0;
      for (Eigen::Index j = 0; j < N; ++j) {
        if (j == i) continue;
        for (Eigen::Index k = 0; k < N; ++k) {
          if (k == i || k == j) continue;
          const auto t = triple_terms<Scalar>(P.col(i), P.col(j), P.col(k), params);
          F.col(k) += t.wedge - t.chord;
          F.col(i) -= t.wedge;
          F.col(j) += t.chord;
          ks += t.K;
        }
      }
      Ksum(i) = ks;
    }
  });
  Points3<Scalar> F = Points3<Scalar>::Zero(3, N);
  for (const auto& b : buf) F += b;
  F *= L * L * L;
  // measure term 3 L K tau_i
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Index ip = (i + 1) % N, im = (i + N - 1) % N;
    const Scalar c = Scalar(3) * L * Ksum(i) * Scalar(0.5) * n * n;
    const Vec3<Scalar> ein = P.col(i) - P.col(im), eout = P.col(ip) - P.col(i);
    F.col(i) += c * (ein - eout);
    F.col(im) -= c * ein;
    F.col(ip) += c * eout;
  }
  F /= n * n * n;
  return F.topRows(curve.dim());
}

template <typename Scalar>
GradientField<Scalar> discrete_gradient(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                                        const QuadratureSpec& quad) {
  EnergyParams::make(params.p, params.q);
  check_embedded(curve);
  const Eigen::Index N = curve.size();
  const Points3<Scalar> P = curve.embedded3();
  const VecX<Scalar> w = curve.vertex_weights();
  const detail::KernelExponents ex(params);

  // unordered triples i<j<k, each standing for its 6 orderings
  const int blocks = quad.deterministic_reduction ? default_blocks(N) : std::max(1, num_threads());
  std::vector<Points3<Scalar>> gbuf(blocks, Points3<Scalar>::Zero(3, N));
  std::vector<VecX<Scalar>> sbuf(blocks, VecX<Scalar>::Zero(N));
  for_blocks(N, blocks, [&](int blk, long begin, long end) {
    Points3<Scalar>& G = gbuf[blk];
    VecX<Scalar>& S = sbuf[blk];
    Vec3<Scalar> gx, gy, gz;
    for (Eigen::Index i = begin; i < end; ++i) {
      const Vec3<Scalar> x = P.col(i);
      Vec3<Scalar> Gi = Vec3<Scalar>::Zero();
      Scalar Si = 0;
      for (Eigen::Index j = i + 1; j < N; ++j) {
        const Vec3<Scalar> y = P.col(j);
        Vec3<Scalar> Gj = Vec3<Scalar>::Zero();
        Scalar Sj = 0;
        for (Eigen::Index k = j + 1; k < N; ++k) {
          const Scalar K = detail::kernel_gradient<Scalar>(x, y, P.col(k), ex, gx, gy, gz);
          const Scalar wk = w(k);
          Gi += (w(j) * wk) * gx;
          Gj += wk * gy;
          G.col(k) += (w(i) * w(j)) * gz;
          Si += w(j) * wk * K;
          Sj += wk * K;
          S(k) += w(i) * w(j) * K;
        }
        G.col(j) += w(i) * Gj;
        S(j) += w(i) * Sj;
      }
      G.col(i) += Gi;
      S(i) += Si;
    }
  });
  Points3<Scalar> G = Points3<Scalar>::Zero(3, N);
  VecX<Scalar> S = VecX<Scalar>::Zero(N);
  for (int b = 0; b < blocks; ++b) {
    G += gbuf[b];
    S += sbuf[b];
  }
  // w_i * dK/dx etc: the remaining weight factor of the triple
  for (Eigen::Index i = 0; i < N; ++i) G.col(i) *= w(i);
  G *= Scalar(6);
  S *= Scalar(6);
  if (quad.degenerate_policy == DegeneratePolicy::zeta_corrected)
    detail::zeta_correction<Scalar>(P, w, params, &G, &S);
  detail::weights_to_vertices<Scalar>(P, S, G);
  return to_field<Scalar>(G, curve.dim());
}

template <typename Scalar>
GradientField<Scalar> length_gradient(const ClosedCurve<Scalar>& curve) {
  const Eigen::Index N = curve.size();
  const Points3<Scalar> P = curve.embedded3();
  Points3<Scalar> G = Points3<Scalar>::Zero(3, N);
  for (Eigen::Index e = 0; e < N; ++e) {
    const Eigen::Index f = (e + 1) % N;
    const Vec3<Scalar> t = (P.col(f) - P.col(e)).normalized();
    G.col(f) += t;
    G.col(e) -= t;
  }
  return to_field<Scalar>(G, curve.dim());
}

template <typename Scalar>
ProjectedGradient<Scalar> projected_gradient(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                                             const QuadratureSpec& quad) {
  ProjectedGradient<Scalar> pg;
  pg.energy_gradient = discrete_gradient(curve, params, quad);
  pg.length_gradient = length_gradient(curve);
  const Scalar ll = pg.length_gradient.pairing(pg.length_gradient);
  if (!(ll > Scalar(0))) throw Error(ErrorKind::DegenerateConstraint, "length gradient vanishes");
  pg.lambda = -pg.energy_gradient.pairing(pg.length_gradient) / ll;
  pg.field.vectors = pg.energy_gradient.vectors + pg.lambda * pg.length_gradient.vectors;
  pg.residual = pg.field.sup_norm();
  return pg;
}

template <typename Scalar>
Scalar cross_check_variation(const ClosedCurve<Scalar>& curve, const EnergyParams& params) {
  const Matrix<Scalar> F = first_variation_coefficients(curve, params);
  const GradientField<Scalar> g = discrete_gradient(curve, params, QuadratureSpec{});
  // pairing of g with the hat direction e_{i,axis} is g(axis,i)/N
  const Matrix<Scalar> pair = g.vectors / Scalar(curve.size());
  return ((F - pair).cwiseAbs().array() / (Scalar(1) + pair.cwiseAbs().array())).maxCoeff();
}

template double first_variation<double>(const Curve&, const Eigen::MatrixXd&, const EnergyParams&);
template Eigen::MatrixXd first_variation_coefficients<double>(const Curve&, const EnergyParams&);
template GradientField<double> discrete_gradient<double>(const Curve&, const EnergyParams&, const QuadratureSpec&);
template GradientField<double> length_gradient<double>(const Curve&);
template ProjectedGradient<double> projected_gradient<double>(const Curve&, const EnergyParams&, const QuadratureSpec&);
template double cross_check_variation<double>(const Curve&, const EnergyParams&);

}  // namespace menger
