#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "curve.hpp"
#include "error.hpp"
#include "params.hpp"

namespace menger {

// |a ^ b| as the root of the summed squared 2x2 minors. Same value as
// sqrt(|a|^2|b|^2 - <a,b>^2) but without the cancellation for nearly
// parallel vectors.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar wedge_norm(const Eigen::MatrixBase<DerivedA>& a,
                                     const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  eigen_assert(a.size() == b.size());
  Scalar sum(0);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j) {
      const Scalar m = a(i) * b(j) - a(j) * b(i);
      sum += m * m;
    }
  return std::sqrt(std::max(sum, Scalar(0)));
}

namespace detail {
template <typename DX, typename DY, typename DZ>
void check_distinct(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                    const Eigen::MatrixBase<DZ>& z) {
  if (x == y || y == z || x == z)
    throw Error(ErrorKind::DegenerateTriple, "two of the three points coincide");
}
}  // namespace detail

template <typename DX, typename DY, typename DZ>
typename DX::Scalar circumradius(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                                 const Eigen::MatrixBase<DZ>& z) {
  using Scalar = typename DX::Scalar;
  detail::check_distinct(x, y, z);
  const Scalar wedge = wedge_norm(y - x, z - x);
  if (wedge == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return (y - z).norm() * (y - x).norm() * (z - x).norm() / (Scalar(2) * wedge);
}

// 1/R^{p,q} = |(y-x)^(z-x)|^q / (|y-z||y-x||z-x|)^p
template <typename DX, typename DY, typename DZ>
typename DX::Scalar rpq_kernel(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                               const Eigen::MatrixBase<DZ>& z, const EnergyParams& params) {
  using Scalar = typename DX::Scalar;
  detail::check_distinct(x, y, z);
  const Scalar wedge = wedge_norm(y - x, z - x);
  if (wedge == Scalar(0)) return Scalar(0);
  const Scalar abc = (y - z).norm() * (y - x).norm() * (z - x).norm();
  return std::pow(wedge, Scalar(params.q)) / std::pow(abc, Scalar(params.p));
}

// closest distance between segments [p0,p1] and [q0,q1]
template <typename Scalar>
Scalar segment_distance(const Eigen::Matrix<Scalar, 3, 1>& p0, const Eigen::Matrix<Scalar, 3, 1>& p1,
                        const Eigen::Matrix<Scalar, 3, 1>& q0, const Eigen::Matrix<Scalar, 3, 1>& q1);

template <typename Scalar>
ClosedCurve<Scalar> resample_arclength(const ClosedCurve<Scalar>& curve, Eigen::Index M);

template <typename Scalar>
Scalar bilipschitz_constant(const ClosedCurve<Scalar>& curve);

// +inf when there is no pair of non-adjacent edges (N = 3)
template <typename Scalar>
Scalar min_segment_distance(const ClosedCurve<Scalar>& curve);

// smallest distance between two distinct vertices, throws SelfIntersection when 0
template <typename Scalar>
Scalar check_embedded(const ClosedCurve<Scalar>& curve);

}  // namespace menger
