#include "menger/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace menger {

template <typename Scalar>
Scalar segment_distance(const Eigen::Matrix<Scalar, 3, 1>& p0, const Eigen::Matrix<Scalar, 3, 1>& p1,
                        const Eigen::Matrix<Scalar, 3, 1>& q0, const Eigen::Matrix<Scalar, 3, 1>& q1) {
  // closest points of two segments, clamped parameter search
  const Eigen::Matrix<Scalar, 3, 1> d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
  const Scalar a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  const Scalar tiny = std::numeric_limits<Scalar>::min();
  Scalar s, t;
  if (a <= tiny && e <= tiny) return r.norm();
  if (a <= tiny) {
    s = 0;
    t = std::clamp(f / e, Scalar(0), Scalar(1));
  } else {
    const Scalar c = d1.dot(r);
    if (e <= tiny) {
      t = 0;
      s = std::clamp(-c / a, Scalar(0), Scalar(1));
    } else {
      const Scalar b = d1.dot(d2);
      const Scalar denom = a * e - b * b;
      s = denom > Scalar(0) ? std::clamp((b * f - c * e) / denom, Scalar(0), Scalar(1)) : Scalar(0);
      t = (b * s + f) / e;
      if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, Scalar(0), Scalar(1));
      } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, Scalar(0), Scalar(1));
      }
    }
  }
  return ((p0 + s * d1) - (q0 + t * d2)).norm();
}

namespace {

// Walk M chords of length ell along the polygon starting at vertex 0; each new
// point is the first point ahead of the previous one at distance ell. Returns
// the unwrapped arc-length position of the M-th point (+inf if the walk dies).
template <typename Scalar>
Scalar chord_walk(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& P,
                  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& cum, Scalar L, Scalar ell,
                  Eigen::Index M, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>* out) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index N = P.cols();
  Eigen::Index seg = 0;  // unwrapped segment index
  Scalar t = 0;
  Vec X = P.col(0);
  if (out) out->col(0) = X;
  for (Eigen::Index m = 1; m <= M; ++m) {
    bool found = false;
    for (Eigen::Index tries = 0; tries <= 2 * N + 1; ++tries) {
      const Vec A = P.col(seg % N);
      const Vec D = P.col((seg + 1) % N) - A;
      const Vec AX = A - X;
      const Scalar a = D.squaredNorm();
      const Scalar b = Scalar(2) * D.dot(AX);
      const Scalar c = AX.squaredNorm() - ell * ell;
      const Scalar disc = b * b - Scalar(4) * a * c;
      if (disc >= 0) {
        // larger root: where the segment leaves the ball around X
        const Scalar root = (-b + std::sqrt(disc)) / (Scalar(2) * a);
        if (root >= t && root <= Scalar(1)) {
          t = root;
          found = true;
          break;
        }
      }
      ++seg;
      t = 0;
    }
    if (!found) return std::numeric_limits<Scalar>::infinity();
    X = P.col(seg % N) + t * (P.col((seg + 1) % N) - P.col(seg % N));
    if (out && m < M) out->col(m) = X;
  }
  const Eigen::Index wraps = seg / N;
  const Eigen::Index s = seg % N;
  return Scalar(wraps) * L + cum(s) + t * (cum(s + 1) - cum(s));
}

}  // namespace

template <typename Scalar>
ClosedCurve<Scalar> resample_arclength(const ClosedCurve<Scalar>& curve, Eigen::Index M) {
  using Matrix = typename ClosedCurve<Scalar>::Matrix;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (M < 3) throw Error(ErrorKind::BadInput, "resampling needs M >= 3");
  const Matrix& P = curve.vertices();
  const Eigen::Index N = curve.size();
  const Vec e = curve.edge_lengths();
  Vec cum(N + 1);
  cum(0) = 0;
  for (Eigen::Index i = 0; i < N; ++i) cum(i + 1) = cum(i) + e(i);
  const Scalar L = cum(N);

  // equal chords: the M-th chord has to land back on the start. The landing
  // position grows with the chord length; chords never exceed arcs, so L/M
  // is an upper bracket.
  Scalar lo = 0, hi = L / Scalar(M);
  for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<Scalar>::epsilon() * hi; ++it) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    if (chord_walk(P, cum, L, mid, M, static_cast<Matrix*>(nullptr)) < L)
      lo = mid;
    else
      hi = mid;
  }
  const Scalar lo_pos = chord_walk(P, cum, L, lo, M, static_cast<Matrix*>(nullptr));
  const Scalar hi_pos = chord_walk(P, cum, L, hi, M, static_cast<Matrix*>(nullptr));
  const Scalar ell = std::abs(lo_pos - L) < std::abs(hi_pos - L) ? lo : hi;
  Matrix X(P.rows(), M);
  chord_walk(P, cum, L, ell, M, &X);

  // the chord polygon is shorter than the input; dilate about its centroid to
  // give back the original length
  Scalar chord_len = 0;
  for (Eigen::Index i = 0; i < M; ++i) chord_len += (X.col((i + 1) % M) - X.col(i)).norm();
  const Vec c = X.rowwise().mean();
  X = ((X.colwise() - c) * (L / chord_len)).colwise() + c;
  ClosedCurve<Scalar> out{Matrix(X)};
  if (!out.is_arclength())
    throw Error(ErrorKind::BadInput, "could not equalize chord lengths (curve too coarse for M points?)");
  return out;
}

template <typename Scalar>
Scalar check_embedded(const ClosedCurve<Scalar>& curve) {
  const auto& P = curve.vertices();
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 0; i < curve.size(); ++i)
    for (Eigen::Index j = i + 1; j < curve.size(); ++j) {
      const Scalar d = (P.col(i) - P.col(j)).norm();
      if (d == Scalar(0)) throw Error(ErrorKind::SelfIntersection, "two distinct vertices coincide");
      best = std::min(best, d);
    }
  return best;
}

template <typename Scalar>
Scalar bilipschitz_constant(const ClosedCurve<Scalar>& curve) {
  const auto& P = curve.vertices();
  const Eigen::Index N = curve.size();
  Scalar best = 0;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const Scalar d = (P.col(i) - P.col(j)).norm();
      if (d == Scalar(0)) throw Error(ErrorKind::SelfIntersection, "two distinct vertices coincide");
      best = std::max(best, Scalar(periodic_distance(i, j, N)) / d);
    }
  return best;
}

template <typename Scalar>
Scalar min_segment_distance(const ClosedCurve<Scalar>& curve) {
  const auto P = curve.embedded3();
  const Eigen::Index N = curve.size();
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 0; i < N; ++i) {
    const Eigen::Matrix<Scalar, 3, 1> a0 = P.col(i), a1 = P.col((i + 1) % N);
    for (Eigen::Index j = i + 2; j < N; ++j) {
      if (i == 0 && j == N - 1) continue;  // edges N-1 and 0 share vertex 0
      const Eigen::Matrix<Scalar, 3, 1> b0 = P.col(j), b1 = P.col((j + 1) % N);
      best = std::min(best, segment_distance<Scalar>(a0, a1, b0, b1));
    }
  }
  return best;
}

template double segment_distance<double>(const Eigen::Vector3d&, const Eigen::Vector3d&,
                                         const Eigen::Vector3d&, const Eigen::Vector3d&);
template ClosedCurve<double> resample_arclength<double>(const ClosedCurve<double>&, Eigen::Index);
template double check_embedded<double>(const ClosedCurve<double>&);
template double bilipschitz_constant<double>(const ClosedCurve<double>&);
template double min_segment_distance<double>(const ClosedCurve<double>&);

}  // namespace menger
