#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "error.hpp"

namespace menger {

// relative edge-length spread accepted as "arc length"
inline constexpr double kArclengthTol = 1e-8;

// Closed polygon in R^2 or R^3; vertex i sits at parameter i/N on R/Z.
// Vertices are stored column-wise (dim x N).
template <typename Scalar>
class ClosedCurve {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Index = Eigen::Index;

  ClosedCurve() = default;

  explicit ClosedCurve(Matrix vertices) : v_(std::move(vertices)) {
    if (v_.rows() != 2 && v_.rows() != 3)
      throw Error(ErrorKind::BadInput, "curve dimension must be 2 or 3");
    if (v_.cols() < 3) throw Error(ErrorKind::BadInput, "a closed curve needs at least 3 vertices");
    if (!v_.allFinite()) throw Error(ErrorKind::BadInput, "non-finite vertex coordinate");
    const Vector e = edge_lengths();
    if (e.minCoeff() <= Scalar(0))
      throw Error(ErrorKind::BadInput, "consecutive vertices coincide");
    arclength_ = e.maxCoeff() / e.minCoeff() <= Scalar(1 + kArclengthTol);
  }

  int dim() const { return static_cast<int>(v_.rows()); }
  Index size() const { return v_.cols(); }
  const Matrix& vertices() const { return v_; }
  bool is_arclength() const { return arclength_; }

  Index wrap(Index i) const {
    const Index n = size();
    i %= n;
    return i < 0 ? i + n : i;
  }
  auto vertex(Index i) const { return v_.col(wrap(i)); }

  // edge i runs from vertex i to vertex i+1
  Matrix edges() const {
    Matrix e(v_.rows(), v_.cols());
    for (Index i = 0; i < size(); ++i) e.col(i) = v_.col(wrap(i + 1)) - v_.col(i);
    return e;
  }
  Vector edge_lengths() const { return edges().colwise().norm().transpose(); }
  Scalar length() const { return edge_lengths().sum(); }

  // dual edge lengths (|e_{i-1}| + |e_i|)/2, the quadrature weight of vertex i
  Vector vertex_weights() const {
    const Vector e = edge_lengths();
    Vector w(size());
    for (Index i = 0; i < size(); ++i) w(i) = Scalar(0.5) * (e(wrap(i - 1)) + e(i));
    return w;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> centroid() const { return v_.rowwise().mean(); }

  // 3 x N copy, planar curves get z = 0
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> embedded3() const {
    Eigen::Matrix<Scalar, 3, Eigen::Dynamic> out = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>::Zero(3, size());
    out.topRows(v_.rows()) = v_;
    return out;
  }

  ClosedCurve scaled(Scalar lambda) const { return ClosedCurve(Matrix(v_ * lambda)); }

 private:
  Matrix v_;
  bool arclength_ = false;
};

using Curve = ClosedCurve<double>;

// d_{R/Z} between i/N and j/N
inline double periodic_distance(Eigen::Index i, Eigen::Index j, Eigen::Index n) {
  Eigen::Index d = (i - j) % n;
  if (d < 0) d += n;
  return static_cast<double>(std::min(d, n - d)) / static_cast<double>(n);
}

}  // namespace menger
