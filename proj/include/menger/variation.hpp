#pragma once

#include "curve.hpp"
#include "energy.hpp"
#include "params.hpp"

namespace menger {

// Discrete L2 field: one vector per vertex, paired with h by (1/N) sum <g_i, h_i>.
// For a gradient, vectors = N * dE/dgamma_i.
template <typename Scalar>
struct GradientField {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix vectors;  // dim x N

  Eigen::Index size() const { return vectors.cols(); }
  Scalar pairing(const Matrix& h) const {
    eigen_assert(h.rows() == vectors.rows() && h.cols() == vectors.cols());
    return vectors.cwiseProduct(h).sum() / Scalar(vectors.cols());
  }
  Scalar pairing(const GradientField& other) const { return pairing(other.vectors); }
  Scalar sup_norm() const { return vectors.colwise().norm().maxCoeff(); }
};

template <typename Scalar>
struct ProjectedGradient {
  GradientField<Scalar> field;
  GradientField<Scalar> energy_gradient;
  GradientField<Scalar> length_gradient;
  Scalar lambda = 0;
  Scalar residual = 0;
};

// Quadrature of the three-term variation formula over ordered distinct triples.
// h is dim x N, extended piecewise linearly.
template <typename Scalar>
Scalar first_variation(const ClosedCurve<Scalar>& curve,
                       const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& h,
                       const EnergyParams& params);

// Coefficients c with first_variation(h) = sum_i <c_i, h_i>, assembled in one pass.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> first_variation_coefficients(
    const ClosedCurve<Scalar>& curve, const EnergyParams& params);

// exact gradient of discrete_energy
template <typename Scalar>
GradientField<Scalar> discrete_gradient(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                                        const QuadratureSpec& quad = {});

template <typename Scalar>
GradientField<Scalar> length_gradient(const ClosedCurve<Scalar>& curve);

template <typename Scalar>
ProjectedGradient<Scalar> projected_gradient(const ClosedCurve<Scalar>& curve, const EnergyParams& params,
                                             const QuadratureSpec& quad = {});

// max over hat directions e_{i,axis} of |dE(e) - <grad, e>| / (1 + |<grad, e>|)
template <typename Scalar>
Scalar cross_check_variation(const ClosedCurve<Scalar>& curve, const EnergyParams& params);

}  // namespace menger
