#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphon/graph.hpp"
#include "graphon/ot.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

enum class EstimatorMethod { GB, SGB, SAS, SBA, LG, MC, ORACLE };

EstimatorMethod parse_estimator_method(const std::string& name);
std::string estimator_method_name(EstimatorMethod method);

struct EstimatorConfig {
  EstimatorMethod method = EstimatorMethod::GB;
  // Output resolution; unset means min(median node count of inputs, 64).
  std::optional<int> resolution;
  GwParams gw;
  int smoothing_window = 3;       // SGB/SAS box filter side, odd
  double sba_threshold = 0.2;     // max normalized neighborhood difference
  // Number of degree groups; unset means ceil(log2 N) + 1 per graph.
  std::optional<int> lg_groups;
  double mc_threshold_scale = 2.02;  // singular value cutoff factor
};

// Dispatches on config.method. Output resolution follows config.resolution
// (or the median rule). Deterministic given the inputs and config.
StepGraphon estimate(const std::vector<Graph>& graphs,
                     const EstimatorConfig& config);

// Gromov-Wasserstein barycenter of the adjacency matrices with degree node
// measures.
StepGraphon estimate_gb(const std::vector<Graph>& graphs,
                        const EstimatorConfig& config);
// GB followed by a normalized box filter of side smoothing_window.
StepGraphon estimate_sgb(const std::vector<Graph>& graphs,
                         const EstimatorConfig& config);
// Sorting-and-smoothing: average of degree-sorted adjacencies, box-filtered.
StepGraphon estimate_sas(const std::vector<Graph>& graphs,
                         const EstimatorConfig& config);
// Greedy pivot blocking of degree-sorted adjacencies.
StepGraphon estimate_sba(const std::vector<Graph>& graphs,
                         const EstimatorConfig& config);
// Degree-gap grouping into lg_groups blocks.
StepGraphon estimate_lg(const std::vector<Graph>& graphs,
                        const EstimatorConfig& config);
// Low-rank reconstruction via singular value thresholding.
StepGraphon estimate_mc(const std::vector<Graph>& graphs,
                        const EstimatorConfig& config);

// Degree-descending node order with ties by index ascending: the shared
// alignment rule of the sorting-based estimators.
std::vector<int> degree_sort_permutation(const Graph& graph);

// Normalized box filter of side `window` with truncated (renormalized)
// windows at the boundary. window must be odd and >= 1.
Eigen::MatrixXd box_filter(const Eigen::MatrixXd& values, int window);

}  // namespace graphon
