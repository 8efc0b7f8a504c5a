#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "graphon/augmentation.hpp"
#include "graphon/estimators.hpp"
#include "graphon/graph.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

using FeatureVector = Eigen::VectorXd;

// Weisfeiler-Lehman feature histogram with degree-based initial labels:
// every label observed at every refinement round (including round 0) is
// hashed (FNV-1a 64) into one of `dim` buckets; counts are divided by the
// node count. Invariant under node relabeling.
FeatureVector wl_features(const Graph& graph, int iterations = 2,
                          int dim = 256);

// One-hidden-layer rectifier MLP with softmax output.
struct Classifier {
  Eigen::MatrixXd w1;  // input_dim x hidden_dim
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;  // hidden_dim x class_count
  Eigen::VectorXd b2;

  int input_dim() const { return static_cast<int>(w1.rows()); }
  int hidden_dim() const { return static_cast<int>(w1.cols()); }
  int class_count() const { return static_cast<int>(w2.cols()); }

  // Row-wise class probabilities for a feature matrix (rows = examples).
  Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& features) const;
};

struct TrainParams {
  int hidden_dim = 64;
  int epochs = 200;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
};

struct ClassifierGradients {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;
};

// Mean cross-entropy of the true classes.
double classifier_loss(const Classifier& classifier,
                       const Eigen::MatrixXd& features,
                       const std::vector<int>& class_indices);

// Analytic full-batch gradients of classifier_loss.
ClassifierGradients classifier_gradients(const Classifier& classifier,
                                         const Eigen::MatrixXd& features,
                                         const std::vector<int>& class_indices);

// Full-batch gradient descent with a fixed step; weights start from the
// seeded scaled-uniform fan-in rule, biases from zero.
Classifier train_classifier(const Eigen::MatrixXd& features,
                            const std::vector<int>& class_indices,
                            const TrainParams& params);

// Fraction of argmax-correct predictions; ties break to the lower class.
double accuracy(const Classifier& classifier, const Eigen::MatrixXd& features,
                const std::vector<int>& class_indices);

struct BenchmarkClassSpec {
  int label = 0;
  int count = 0;
  int min_nodes = 1;
  int max_nodes = 1;
  StepGraphon graphon;
};

struct BenchmarkResult {
  GraphDataset dataset;
  std::map<int, StepGraphon> truths;
};

// Samples a labeled dataset from per-class ground-truth graphons; graph j of
// class entry c uses the seed derived from (seed, c, j) and a node count
// uniform in [min_nodes, max_nodes].
BenchmarkResult synthetic_benchmark(
    const std::vector<BenchmarkClassSpec>& classes, std::uint64_t seed);

// JSON benchmark spec: {"classes": [{"label", "count", "nodes": [lo, hi],
// "graphon": {"type": "constant"|"sbm"|"matrix", ...}}]}.
std::vector<BenchmarkClassSpec> parse_benchmark_spec_file(
    const std::filesystem::path& path);

struct ExperimentConfig {
  std::vector<std::filesystem::path> dataset_paths;
  std::vector<EstimatorMethod> methods;
  std::vector<double> rates{0.01, 0.05, 0.10, 0.25};
  std::vector<std::uint64_t> seeds{0};
  double split_fraction = 0.2;
  EstimatorConfig estimator;  // method is overridden per experiment cell
  TrainParams classifier;     // seed is overridden per experiment cell
  int wl_iterations = 2;
  int wl_dim = 256;
};

ExperimentConfig parse_experiment_config_file(
    const std::filesystem::path& path);

struct ExperimentRow {
  std::string dataset;
  EstimatorMethod method;
  double rate = 0.0;
  std::uint64_t seed = 0;
  double base_accuracy = 0.0;  // percent
  double aug_accuracy = 0.0;   // percent
  double delta = 0.0;          // aug - base, percentage points
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
};

// For each (dataset, seed): stratified split, base accuracy, then one row
// per (method, rate) with the train set augmented and the classifier
// retrained under the same seed. Rows come out in canonical
// (dataset, method, rate, seed) order.
ExperimentReport run_experiment(const ExperimentConfig& config);

// CSV with header dataset,method,rate,seed,base_accuracy,aug_accuracy,delta;
// accuracies as percentages with 2 decimals.
void write_report_csv(const ExperimentReport& report,
                      const std::filesystem::path& path);

}  // namespace graphon
