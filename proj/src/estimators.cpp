#include "graphon/estimators.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphon/errors.hpp"
#include "overlap_resize.hpp"

namespace graphon {

EstimatorMethod parse_estimator_method(const std::string& name) {
  if (name == "GB") return EstimatorMethod::GB;
  if (name == "SGB") return EstimatorMethod::SGB;
  if (name == "SAS") return EstimatorMethod::SAS;
  if (name == "SBA") return EstimatorMethod::SBA;
  if (name == "LG") return EstimatorMethod::LG;
  if (name == "MC") return EstimatorMethod::MC;
  if (name == "ORACLE") return EstimatorMethod::ORACLE;
  throw ValidationError("unknown estimator method '" + name +
                        "' (valid: GB, SGB, SAS, SBA, LG, MC, ORACLE)");
}

std::string estimator_method_name(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::GB: return "GB";
    case EstimatorMethod::SGB: return "SGB";
    case EstimatorMethod::SAS: return "SAS";
    case EstimatorMethod::SBA: return "SBA";
    case EstimatorMethod::LG: return "LG";
    case EstimatorMethod::MC: return "MC";
    case EstimatorMethod::ORACLE: return "ORACLE";
  }
  throw ValidationError("invalid estimator method");
}

std::vector<int> degree_sort_permutation(const Graph& graph) {
  const auto deg = graph.degrees();
  std::vector<int> order(graph.node_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&deg](int a, int b) { return deg[a] > deg[b]; });
  return order;
}

Eigen::MatrixXd box_filter(const Eigen::MatrixXd& values, int window) {
  if (window < 1 || window % 2 == 0)
    throw ValidationError("smoothing window must be odd and >= 1");
  if (window == 1) return values;
  const int K = static_cast<int>(values.rows());
  const int h = (window - 1) / 2;
  Eigen::MatrixXd out(K, K);
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < K; ++j) {
      const int ilo = std::max(0, i - h), ihi = std::min(K - 1, i + h);
      const int jlo = std::max(0, j - h), jhi = std::min(K - 1, j + h);
      const double sum =
          values.block(ilo, jlo, ihi - ilo + 1, jhi - jlo + 1).sum();
      out(i, j) = sum / ((ihi - ilo + 1) * (jhi - jlo + 1));
    }
  return out;
}

namespace {

int resolve_resolution(const std::vector<Graph>& graphs,
                       const EstimatorConfig& config) {
  if (config.resolution) {
    if (*config.resolution < 1)
      throw ValidationError("estimator resolution must be >= 1");
    return *config.resolution;
  }
  std::vector<int> sizes;
  sizes.reserve(graphs.size());
  for (const auto& g : graphs) sizes.push_back(g.node_count);
  std::sort(sizes.begin(), sizes.end());
  const int median = sizes[(sizes.size() - 1) / 2];  // lower median
  return std::min(median, 64);
}

void check_common(const std::vector<Graph>& graphs,
                  const EstimatorConfig& config) {
  if (graphs.empty())
    throw ValidationError("estimator needs at least one graph");
  if (config.smoothing_window < 1 || config.smoothing_window % 2 == 0)
    throw ValidationError("smoothing window must be odd and >= 1");
  if (!(config.sba_threshold > 0.0))
    throw ValidationError("sba_threshold must be > 0");
  if (config.lg_groups && *config.lg_groups < 1)
    throw ValidationError("lg_groups must be >= 1");
  if (!(config.mc_threshold_scale > 0.0))
    throw ValidationError("mc_threshold_scale must be > 0");
}

Eigen::MatrixXd sorted_adjacency(const Graph& graph) {
  const auto order = degree_sort_permutation(graph);
  const Eigen::MatrixXd a = graph.adjacency_matrix();
  const int n = graph.node_count;
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a(order[i], order[j]);
  return out;
}

// Average of the degree-sorted adjacencies after resizing each to K.
Eigen::MatrixXd mean_sorted_resized(const std::vector<Graph>& graphs, int K) {
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(K, K);
  for (const auto& g : graphs) {
    const Eigen::MatrixXd a = sorted_adjacency(g);
    const Eigen::VectorXd widths =
        Eigen::VectorXd::Constant(g.node_count, 1.0 / g.node_count);
    mean += detail::overlap_resize(a, widths, K);
  }
  return mean / static_cast<double>(graphs.size());
}

// Block-pair edge means; within-block pairs exclude the diagonal.
Eigen::MatrixXd block_means(const Eigen::MatrixXd& a,
                            const std::vector<int>& block_of, int blocks) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(blocks, blocks);
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(blocks, blocks);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      sum(block_of[i], block_of[j]) += a(i, j);
      count(block_of[i], block_of[j]) += 1.0;
    }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(blocks, blocks);
  for (int b = 0; b < blocks; ++b)
    for (int c = 0; c < blocks; ++c)
      if (count(b, c) > 0.0) out(b, c) = sum(b, c) / count(b, c);
  return out;
}

StepGraphon block_step_function(const Eigen::MatrixXd& means,
                                const std::vector<int>& block_sizes, int n) {
  Eigen::VectorXd weights(block_sizes.size());
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    weights[static_cast<int>(b)] = static_cast<double>(block_sizes[b]) / n;
  Eigen::MatrixXd sym = ((means + means.transpose()) / 2.0).eval();
  sym = sym.cwiseMax(0.0).cwiseMin(1.0);
  return StepGraphon(std::move(sym), ProbabilityVector(std::move(weights)));
}

}  // namespace

StepGraphon estimate_gb(const std::vector<Graph>& graphs,
                        const EstimatorConfig& config) {
  check_common(graphs, config);
  const int K = resolve_resolution(graphs, config);
  std::vector<SymmetricKernelMatrix> mats;
  std::vector<ProbabilityVector> measures;
  mats.reserve(graphs.size());
  measures.reserve(graphs.size());
  for (const auto& g : graphs) {
    mats.emplace_back(g.adjacency_matrix());
    measures.push_back(node_measure(g, NodeMeasurePolicy::degree));
  }
  auto result = gw_barycenter(mats, measures, K, {}, config.gw);
  return StepGraphon(std::move(result.barycenter.values));
}

StepGraphon estimate_sgb(const std::vector<Graph>& graphs,
                         const EstimatorConfig& config) {
  StepGraphon gb = estimate_gb(graphs, config);
  return StepGraphon(box_filter(gb.values, config.smoothing_window));
}

StepGraphon estimate_sas(const std::vector<Graph>& graphs,
                         const EstimatorConfig& config) {
  check_common(graphs, config);
  const int K = resolve_resolution(graphs, config);
  return StepGraphon(
      box_filter(mean_sorted_resized(graphs, K), config.smoothing_window));
}

StepGraphon estimate_sba(const std::vector<Graph>& graphs,
                         const EstimatorConfig& config) {
  check_common(graphs, config);
  const int K = resolve_resolution(graphs, config);
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(K, K);
  for (const auto& g : graphs) {
    const Eigen::MatrixXd a = sorted_adjacency(g);
    const int n = g.node_count;

    // Greedy pivot clustering in sorted order: a node joins the first block
    // whose pivot row differs in at most threshold * (N - 2) positions
    // (positions u and u' of the two diagonal entries are skipped).
    std::vector<int> pivots;
    std::vector<int> block_of(n, -1);
    std::vector<int> block_sizes;
    for (int u = 0; u < n; ++u) {
      for (std::size_t b = 0; b < pivots.size(); ++b) {
        const int v = pivots[b];
        int diff = 0;
        for (int x = 0; x < n; ++x) {
          if (x == u || x == v) continue;
          if (a(u, x) != a(v, x)) ++diff;
        }
        const double normalized = n > 2 ? diff / static_cast<double>(n - 2) : 0.0;
        if (normalized <= config.sba_threshold) {
          block_of[u] = static_cast<int>(b);
          ++block_sizes[b];
          break;
        }
      }
      if (block_of[u] < 0) {
        block_of[u] = static_cast<int>(pivots.size());
        pivots.push_back(u);
        block_sizes.push_back(1);
      }
    }

    const Eigen::MatrixXd means =
        block_means(a, block_of, static_cast<int>(pivots.size()));
    StepGraphon sf = block_step_function(means, block_sizes, n);
    mean += resize_step_graphon(sf, K).values;
  }
  mean /= static_cast<double>(graphs.size());
  return StepGraphon(std::move(mean));
}

StepGraphon estimate_lg(const std::vector<Graph>& graphs,
                        const EstimatorConfig& config) {
  check_common(graphs, config);
  const int K = resolve_resolution(graphs, config);
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(K, K);
  for (const auto& g : graphs) {
    const Eigen::MatrixXd a = sorted_adjacency(g);
    const int n = g.node_count;
    const auto order = degree_sort_permutation(g);
    const auto deg = g.degrees();

    int groups = config.lg_groups
                     ? *config.lg_groups
                     : static_cast<int>(std::ceil(std::log2(n))) + 1;
    groups = std::clamp(groups, 1, n);

    // Cut at the groups-1 largest consecutive gaps of the sorted normalized
    // degrees, ties to the earliest position.
    std::vector<double> norm_deg(n);
    for (int i = 0; i < n; ++i)
      norm_deg[i] = n > 1 ? deg[order[i]] / static_cast<double>(n - 1) : 0.0;
    std::vector<int> gap_positions(std::max(0, n - 1));
    std::iota(gap_positions.begin(), gap_positions.end(), 0);
    std::stable_sort(gap_positions.begin(), gap_positions.end(),
                     [&norm_deg](int p, int q) {
                       return norm_deg[p] - norm_deg[p + 1] >
                              norm_deg[q] - norm_deg[q + 1];
                     });
    std::vector<int> cuts(gap_positions.begin(),
                          gap_positions.begin() + (groups - 1));
    std::sort(cuts.begin(), cuts.end());

    std::vector<int> block_of(n, 0);
    std::vector<int> block_sizes(groups, 0);
    int block = 0;
    std::size_t next_cut = 0;
    for (int i = 0; i < n; ++i) {
      block_of[i] = block;
      ++block_sizes[block];
      if (next_cut < cuts.size() && i == cuts[next_cut]) {
        ++block;
        ++next_cut;
      }
    }

    const Eigen::MatrixXd means = block_means(a, block_of, groups);
    StepGraphon sf = block_step_function(means, block_sizes, n);
    mean += resize_step_graphon(sf, K).values;
  }
  mean /= static_cast<double>(graphs.size());
  return StepGraphon(std::move(mean));
}

StepGraphon estimate_mc(const std::vector<Graph>& graphs,
                        const EstimatorConfig& config) {
  check_common(graphs, config);
  const int K = resolve_resolution(graphs, config);
  const Eigen::MatrixXd mean = mean_sorted_resized(graphs, K);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      mean, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double threshold = config.mc_threshold_scale * std::sqrt(K) /
                           std::sqrt(static_cast<double>(graphs.size()));
  Eigen::VectorXd kept = svd.singularValues();
  for (int i = 0; i < kept.size(); ++i)
    if (kept[i] < threshold) kept[i] = 0.0;
  Eigen::MatrixXd rec =
      svd.matrixU() * kept.asDiagonal() * svd.matrixV().transpose();
  rec = ((rec + rec.transpose()) / 2.0).eval();
  rec = rec.cwiseMax(0.0).cwiseMin(1.0);
  return StepGraphon(std::move(rec));
}

StepGraphon estimate(const std::vector<Graph>& graphs,
                     const EstimatorConfig& config) {
  check_common(graphs, config);
  switch (config.method) {
    case EstimatorMethod::GB: return estimate_gb(graphs, config);
    case EstimatorMethod::SGB: return estimate_sgb(graphs, config);
    case EstimatorMethod::SAS: return estimate_sas(graphs, config);
    case EstimatorMethod::SBA: return estimate_sba(graphs, config);
    case EstimatorMethod::LG: return estimate_lg(graphs, config);
    case EstimatorMethod::MC: return estimate_mc(graphs, config);
    case EstimatorMethod::ORACLE: {
      std::vector<StepGraphon> sfs;
      sfs.reserve(graphs.size());
      for (const auto& g : graphs) sfs.push_back(step_function_of_graph(g));
      return oracle_estimator(sfs, resolve_resolution(graphs, config));
    }
  }
  throw ValidationError("invalid estimator method");
}

}  // namespace graphon
