#pragma once

#include <Eigen/Dense>

#include "../energy.hpp"
#include "../params.hpp"

namespace menger::detail {

template <typename Scalar>
using Points3 = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;
template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Zeta correction of the coincident-index planes. When grad/dw are given the
// derivatives with respect to vertex positions (through the tangents) and to
// the vertex weights are added to them.
template <typename Scalar>
Scalar zeta_correction(const Points3<Scalar>& P, const VecX<Scalar>& w, const EnergyParams& params,
                       Points3<Scalar>* grad, VecX<Scalar>* dw);

// adds the chain rule through w_i = (|e_{i-1}| + |e_i|)/2 to grad
template <typename Scalar>
void weights_to_vertices(const Points3<Scalar>& P, const VecX<Scalar>& dw, Points3<Scalar>& grad);

void require_correction_params(const EnergyParams& params);

}  // namespace menger::detail
