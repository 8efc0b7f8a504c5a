#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graphon {

// Probability vector over partition cells or nodes: nonnegative entries
// summing to 1 within 1e-9.
struct ProbabilityVector {
  Eigen::VectorXd weights;

  ProbabilityVector() = default;
  explicit ProbabilityVector(Eigen::VectorXd w);

  static ProbabilityVector uniform(int n);

  int size() const { return static_cast<int>(weights.size()); }
  double operator[](int i) const { return weights[i]; }
};

// Finite simple undirected graph with an optional class label. Edges are kept
// in canonical form: (u, v) with u < v, sorted lexicographically, no
// duplicates, no self-loops.
struct Graph {
  std::string id;
  int node_count = 1;
  std::vector<std::pair<int, int>> edges;
  std::optional<int> label;

  Graph() = default;
  // Canonicalizes edge order and validates invariants.
  Graph(std::string id, int node_count,
        std::vector<std::pair<int, int>> edges,
        std::optional<int> label = std::nullopt);

  int edge_count() const { return static_cast<int>(edges.size()); }
  std::vector<int> degrees() const;
  Eigen::MatrixXd adjacency_matrix() const;

  bool operator==(const Graph& other) const = default;
};

// Ordered graph collection; class_labels is the sorted list of distinct
// labels present.
struct GraphDataset {
  std::vector<Graph> graphs;
  std::vector<int> class_labels;

  GraphDataset() = default;
  // Validates id uniqueness and computes class_labels.
  explicit GraphDataset(std::vector<Graph> graphs);

  int size() const { return static_cast<int>(graphs.size()); }
  // Indices of graphs carrying the given label.
  std::vector<int> indices_of_class(int label) const;
};

enum class DatasetFormat { jsonl };
enum class NodeMeasurePolicy { degree, uniform };

GraphDataset load_dataset(const std::filesystem::path& path,
                          DatasetFormat format = DatasetFormat::jsonl);
void save_dataset(const GraphDataset& dataset,
                  const std::filesystem::path& path);

// Serialized JSONL line for one graph, canonical key order id,label,n,edges.
std::string graph_to_json_line(const Graph& graph);

// degree policy: weight_i = degree_i / (2 |E|), uniform fallback when the
// graph has no edges. uniform policy: 1/N each.
ProbabilityVector node_measure(const Graph& graph, NodeMeasurePolicy policy);

// Stratified split: per class, shuffle with a generator seeded from
// (seed, class index) and move round(test_fraction * count) graphs to the
// test side, clamped so both sides keep at least one graph per class.
// Original dataset order is preserved within each side.
std::pair<GraphDataset, GraphDataset> split_dataset(const GraphDataset& dataset,
                                                    double test_fraction,
                                                    std::uint64_t seed);

// permutation[old_index] = new_index; must be a bijection on {0..N-1}.
Graph permute_graph(const Graph& graph, const std::vector<int>& permutation);

}  // namespace graphon
