#include "graphon/step_graphon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"
#include "overlap_resize.hpp"

namespace graphon {

namespace {

void check_values(const Eigen::MatrixXd& values) {
  if (values.rows() < 1 || values.rows() != values.cols())
    throw ValidationError("step graphon values must be a square K x K matrix");
  for (int i = 0; i < values.rows(); ++i)
    for (int j = 0; j <= i; ++j) {
      if (values(i, j) != values(j, i))
        throw ValidationError("step graphon values must be symmetric");
      if (!(values(i, j) >= 0.0 && values(i, j) <= 1.0))
        throw ValidationError("step graphon values must lie in [0, 1]");
    }
}

// Cumulative cell boundaries [0, w0, w0+w1, ..., 1].
std::vector<double> boundaries(const ProbabilityVector& weights) {
  std::vector<double> b(weights.size() + 1, 0.0);
  for (int i = 0; i < weights.size(); ++i) b[i + 1] = b[i] + weights[i];
  b.back() = 1.0;
  return b;
}

int cell_of(const std::vector<double>& bounds, double x) {
  int lo = 0, hi = static_cast<int>(bounds.size()) - 2;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (x >= bounds[mid])
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

StepGraphon::StepGraphon(Eigen::MatrixXd values_, ProbabilityVector weights_)
    : values(std::move(values_)), partition_weights(std::move(weights_)) {
  check_values(values);
  if (partition_weights.size() != resolution())
    throw ValidationError("partition weight length differs from resolution");
}

StepGraphon::StepGraphon(Eigen::MatrixXd values_) : values(std::move(values_)) {
  check_values(values);
  partition_weights = ProbabilityVector::uniform(resolution());
}

double StepGraphon::mean_value() const {
  const Eigen::VectorXd& w = partition_weights.weights;
  return w.dot(values * w);
}

StepGraphon step_function_of_graph(const Graph& graph) {
  return StepGraphon(graph.adjacency_matrix(),
                     ProbabilityVector::uniform(graph.node_count));
}

StepGraphon oracle_estimator(const std::vector<StepGraphon>& step_functions,
                             int K) {
  if (step_functions.empty())
    throw ValidationError("oracle estimator needs at least one step function");
  if (K < 1) throw ValidationError("oracle estimator needs K >= 1");
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(K, K);
  for (const auto& sf : step_functions)
    mean += resize_step_graphon(sf, K).values;
  mean /= static_cast<double>(step_functions.size());
  return StepGraphon(std::move(mean));
}

StepGraphon resize_step_graphon(const StepGraphon& graphon, int new_K) {
  if (new_K < 1) throw ValidationError("resize needs new_K >= 1");
  return StepGraphon(detail::overlap_resize(
      graphon.values, graphon.partition_weights.weights, new_K));
}

namespace {

Graph sample_from_latents(const StepGraphon& graphon,
                          const std::vector<double>& latents, Rng& rng,
                          const std::string& id) {
  const int n = static_cast<int>(latents.size());
  const auto bounds = boundaries(graphon.partition_weights);
  std::vector<int> cell(n);
  for (int i = 0; i < n; ++i) cell[i] = cell_of(bounds, latents[i]);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(graphon.values(cell[i], cell[j])))
        edges.emplace_back(i, j);
  return Graph(id, n, std::move(edges));
}

}  // namespace

Graph sample_graph(const StepGraphon& graphon, int num_nodes,
                   std::uint64_t seed, const std::string& id) {
  if (num_nodes < 1) throw ValidationError("sample_graph needs num_nodes >= 1");
  Rng rng(seed);
  std::vector<double> latents(num_nodes);
  for (auto& v : latents) v = rng.uniform();
  return sample_from_latents(graphon, latents, rng, id);
}

Graph sample_aligned_graph(const StepGraphon& graphon, int num_nodes,
                           std::uint64_t seed, const std::string& id) {
  if (num_nodes < 1) throw ValidationError("sample_graph needs num_nodes >= 1");
  Rng rng(seed);
  std::vector<double> latents(num_nodes);
  for (auto& v : latents) v = rng.uniform();
  std::sort(latents.begin(), latents.end());
  return sample_from_latents(graphon, latents, rng, id);
}

void save_graphon(const StepGraphon& graphon,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write graphon file: " + path.string());
  const int K = graphon.resolution();
  out << "GMX1 " << K << '\n';
  char buf[64];
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", graphon.values(i, j));
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

StepGraphon load_graphon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graphon file: " + path.string());
  std::string magic;
  int K = 0;
  if (!(in >> magic >> K) || magic != "GMX1" || K < 1)
    throw FormatError("malformed GMX header in " + path.string());
  Eigen::MatrixXd values(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      double v;
      if (!(in >> v))
        throw FormatError("truncated GMX matrix in " + path.string());
      if (!(v >= 0.0 && v <= 1.0))
        throw FormatError("GMX value out of [0, 1] at row " +
                          std::to_string(i + 1) + " in " + path.string());
      values(i, j) = v;
    }
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < i; ++j) {
      if (std::abs(values(i, j) - values(j, i)) > 1e-9)
        throw FormatError("GMX matrix asymmetric beyond 1e-9 in " +
                          path.string());
      // Force exact symmetry after the tolerance check.
      const double v = (values(i, j) + values(j, i)) / 2.0;
      values(i, j) = v;
      values(j, i) = v;
    }
  return StepGraphon(std::move(values));
}

void graphon_heatmap(const StepGraphon& graphon,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write heatmap file: " + path.string());
  const int K = graphon.resolution();
  out << "P2\n" << K << ' ' << K << "\n255\n";
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      const int pixel =
          static_cast<int>(std::floor(graphon.values(i, j) * 255.0 + 0.5));
      out << (j ? " " : "") << pixel;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace graphon
