#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "graphon/graph.hpp"

namespace graphon {

// Coupling with prescribed marginals. Row i sums to row_marginal[i] and
// column j to col_marginal[j], each within marginal_tolerance.
struct TransportPlan {
  Eigen::MatrixXd matrix;
  ProbabilityVector row_marginal;
  ProbabilityVector col_marginal;

  static constexpr double kMarginalTolerance = 1e-6;

  // Largest deviation of a row or column sum from its prescribed marginal.
  double marginal_violation() const;
  bool is_feasible(double tolerance = kMarginalTolerance) const;
};

enum class GwOrder { one, two };

struct GwParams {
  GwOrder order = GwOrder::two;
  double epsilon = 0.05;          // proximal/entropic strength
  int outer_iterations = 50;
  int sinkhorn_iterations = 300;
  double tolerance = 1e-7;        // stop when objective decrease falls below
  std::uint64_t seed = 0;         // drives the symmetry-breaking jitter
};

// Symmetric matrix with entries in [0,1]: a step function or an adjacency
// matrix viewed as one.
struct SymmetricKernelMatrix {
  Eigen::MatrixXd values;

  SymmetricKernelMatrix() = default;
  explicit SymmetricKernelMatrix(Eigen::MatrixXd values);

  int size() const { return static_cast<int>(values.rows()); }
};

// Entropic projection: scales `kernel` to diag(a) * kernel * diag(b) with the
// requested marginals, alternating the scaling vectors until the largest
// marginal violation drops below `tolerance` or the budget is exhausted.
// Entries below 1e-300 are floored before scaling.
TransportPlan sinkhorn_plan(const Eigen::MatrixXd& kernel,
                            const ProbabilityVector& mu,
                            const ProbabilityVector& nu, int iterations,
                            double tolerance);

// Linearized GW cost C_{ii'} = sum_{j,j'} |w1_ij - w2_i'j'|^p T_{jj'}.
// order two uses the squared-loss decomposition (two marginal terms plus the
// bilinear term -2 W1 T W2); order one evaluates the sum directly.
Eigen::MatrixXd gw_cost_matrix(const SymmetricKernelMatrix& w1,
                               const SymmetricKernelMatrix& w2,
                               const TransportPlan& plan, GwOrder order);

// Unregularized objective sum |w1_ij - w2_i'j'|^p T_ii' T_jj' at a plan.
double gw_objective(const SymmetricKernelMatrix& w1,
                    const SymmetricKernelMatrix& w2,
                    const TransportPlan& plan, GwOrder order);

struct GwResult {
  double value = 0.0;
  TransportPlan plan;
};

// Proximal-point Gromov-Wasserstein solver. The returned value is the
// unregularized objective at the final plan; for order two this is the
// squared 2-order GW distance.
GwResult gw_distance(const SymmetricKernelMatrix& w1,
                     const ProbabilityVector& mu1,
                     const SymmetricKernelMatrix& w2,
                     const ProbabilityVector& mu2, const GwParams& params);

struct BarycenterResult {
  SymmetricKernelMatrix barycenter;
  std::vector<double> objective_trace;  // non-increasing
};

// Fixed-point iteration for the weighted GW barycenter at resolution K with
// a uniform barycenter measure: alternates per-input plan refinement with the
// closed-form update W <- sum_m weight_m (T_m' A_m T_m) / (nu nu').
// Empty `weights` means uniform 1/M.
BarycenterResult gw_barycenter(const std::vector<SymmetricKernelMatrix>& matrices,
                               const std::vector<ProbabilityVector>& measures,
                               int K, const std::vector<double>& weights,
                               const GwParams& params);

}  // namespace graphon
