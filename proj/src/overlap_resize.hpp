#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

namespace graphon::detail {

// Resamples a step function with cell widths `widths` onto new_K uniform
// cells: target value = overlap-area-weighted average of source values.
// Output is symmetrized and clamped to [0,1].
inline Eigen::MatrixXd overlap_resize(const Eigen::MatrixXd& values,
                                      const Eigen::VectorXd& widths,
                                      int new_K) {
  const int K = static_cast<int>(values.rows());
  std::vector<double> bounds(K + 1, 0.0);
  for (int i = 0; i < K; ++i) bounds[i + 1] = bounds[i] + widths[i];
  bounds[K] = 1.0;

  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(new_K, K);
  const double width = 1.0 / new_K;
  for (int a = 0; a < new_K; ++a) {
    const double lo = a * width, hi = (a + 1) * width;
    for (int i = 0; i < K; ++i) {
      const double len =
          std::min(hi, bounds[i + 1]) - std::max(lo, bounds[i]);
      if (len > 0.0) overlap(a, i) = len;
    }
  }

  Eigen::MatrixXd out = overlap * values * overlap.transpose();
  out /= width * width;
  out = ((out + out.transpose()) / 2.0).eval();
  return out.cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace graphon::detail
