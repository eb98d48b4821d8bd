#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "../params.hpp"

namespace menger::detail {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

struct KernelExponents {
  double half_p;
  double half_q;
  bool q_is_two;
  explicit KernelExponents(const EnergyParams& e) : half_p(0.5 * e.p), half_q(0.5 * e.q), q_is_two(e.q == 2.0) {}
};

// wedge^q / (abc)^p from the three pairwise differences, all in R^3
template <typename Scalar>
inline Scalar kernel_value(const Vec3<Scalar>& x, const Vec3<Scalar>& y, const Vec3<Scalar>& z,
                           const KernelExponents& e) {
  const Vec3<Scalar> b = y - x, c = z - x, d = z - y;
  const Scalar W = b.cross(c).squaredNorm();
  if (W == Scalar(0)) return Scalar(0);
  const Scalar prod = b.squaredNorm() * c.squaredNorm() * d.squaredNorm();
  if (e.q_is_two) return W * std::pow(prod, Scalar(-e.half_p));
  return std::exp(Scalar(e.half_q) * std::log(W) - Scalar(e.half_p) * std::log(prod));
}

// value plus derivatives with respect to x, y, z
template <typename Scalar>
inline Scalar kernel_gradient(const Vec3<Scalar>& x, const Vec3<Scalar>& y, const Vec3<Scalar>& z,
                              const KernelExponents& e, Vec3<Scalar>& gx, Vec3<Scalar>& gy,
                              Vec3<Scalar>& gz) {
  const Vec3<Scalar> b = y - x, c = z - x, d = z - y;
  const Vec3<Scalar> n = b.cross(c);
  const Scalar W = n.squaredNorm();
  const Scalar bb = b.squaredNorm(), cc = c.squaredNorm(), dd = d.squaredNorm();
  const Scalar prod = bb * cc * dd;
  const Scalar inv = std::pow(prod, Scalar(-e.half_p));
  Scalar K, f;  // f multiplies dW
  if (e.q_is_two) {
    K = W * inv;
    f = inv;
  } else if (W > Scalar(1e-28) * bb * cc) {
    const Scalar Wq = std::pow(W, Scalar(e.half_q) - Scalar(1));
    K = Wq * W * inv;
    f = Scalar(e.half_q) * Wq * inv;
  } else {
    // numerically collinear: the wedge factor is not differentiable for q < 2
    // and negligible for q > 2
    gx.setZero();
    gy.setZero();
    gz.setZero();
    return W == Scalar(0) ? Scalar(0) : std::pow(W, Scalar(e.half_q)) * inv;
  }
  const Scalar two_p = Scalar(2) * Scalar(e.half_p);
  // dW/db = 2 c x n, dW/dc = 2 n x b
  const Vec3<Scalar> db = Scalar(2) * f * c.cross(n) - two_p * K / bb * b;
  const Vec3<Scalar> dc = Scalar(2) * f * n.cross(b) - two_p * K / cc * c;
  const Vec3<Scalar> dd_ = -two_p * K / dd * d;
  gx = -db - dc;
  gy = db - dd_;
  gz = dc + dd_;
  return K;
}

}  // namespace menger::detail
