#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "graphon/graph.hpp"

namespace graphon {

// Piecewise-constant graphon: a symmetric K x K matrix of connection
// probabilities over a partition of [0,1] whose cell widths are given by
// partition_weights (uniform by default).
struct StepGraphon {
  Eigen::MatrixXd values;
  ProbabilityVector partition_weights;

  StepGraphon() = default;
  // Validates symmetry, the [0,1] range, and weight length.
  StepGraphon(Eigen::MatrixXd values, ProbabilityVector partition_weights);
  // Uniform partition weights.
  explicit StepGraphon(Eigen::MatrixXd values);

  int resolution() const { return static_cast<int>(values.rows()); }
  // Weighted mean cell value: sum_ij w_i w_j values(i,j).
  double mean_value() const;
};

// Adjacency matrix viewed as a step function on N uniform cells.
StepGraphon step_function_of_graph(const Graph& graph);

// Pointwise mean of the inputs after resizing each to resolution K. Inputs
// are assumed node-aligned by the caller.
StepGraphon oracle_estimator(const std::vector<StepGraphon>& step_functions,
                             int K);

// Overlap-area-weighted resampling onto new_K uniform cells. Mean-preserving.
StepGraphon resize_step_graphon(const StepGraphon& graphon, int new_K);

// Draws latent positions v_i ~ Uniform[0,1] and edges a_ij ~
// Bernoulli(W(v_i, v_j)) for i < j. Deterministic for a fixed seed.
Graph sample_graph(const StepGraphon& graphon, int num_nodes,
                   std::uint64_t seed, const std::string& id = "sample");

// Like sample_graph but with latent positions sorted ascending before edges
// are drawn, so node order follows the partition axis ("aligned" samples).
Graph sample_aligned_graph(const StepGraphon& graphon, int num_nodes,
                           std::uint64_t seed,
                           const std::string& id = "sample");

// GMX text format: "GMX1 K" header line, then K rows of K decimal values.
void save_graphon(const StepGraphon& graphon,
                  const std::filesystem::path& path);
StepGraphon load_graphon(const std::filesystem::path& path);

// ASCII PGM (P2) heatmap, maxval 255, pixel = round(value * 255) with ties
// rounded up; higher probability renders lighter.
void graphon_heatmap(const StepGraphon& graphon,
                     const std::filesystem::path& path);

}  // namespace graphon
