#pragma once

// Distance primitives over N x 2 center matrices. Templated on the Eigen
// expression so they accept blocks, maps and any floating scalar.

#include <algorithm>

#include <Eigen/Dense>

namespace swingcount {

template <typename Scalar>
using CenterMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

using Centers = CenterMatrix<double>;

/// Euclidean distance between row i and row i - lag, for every i >= lag.
/// The result has rows() - lag entries (empty when lag >= rows()).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> lagged_distances(const Eigen::MatrixBase<Derived>& centers,
                                                                             Eigen::Index lag) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = centers.rows() - lag;
  if (lag < 0 || n <= 0) return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>();
  return (centers.bottomRows(n) - centers.topRows(n)).rowwise().norm();
}

/// Largest distance between any two rows; zero for fewer than two rows.
template <typename Derived>
typename Derived::Scalar max_pairwise_distance(const Eigen::MatrixBase<Derived>& centers) {
  using Scalar = typename Derived::Scalar;
  Scalar best(0);
  const Eigen::Index n = centers.rows();
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const auto later = centers.bottomRows(n - i - 1);
    best = std::max(best, (later.rowwise() - centers.row(i)).rowwise().norm().maxCoeff());
  }
  return best;
}

/// Displacement over `window` frames rescaled to the 10-frame basis used by
/// every speed threshold.
template <typename Scalar>
Scalar per_ten_frames(Scalar displacement, int window) {
  return displacement * Scalar(10) / Scalar(window);
}

}  // namespace swingcount
