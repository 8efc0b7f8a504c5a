// Scratch probe for solver behavior; not part of the test suite.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "graphon/graph.hpp"
#include "graphon/ot.hpp"
#include "graphon/rng.hpp"
#include "graphon/step_graphon.hpp"

using namespace graphon;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
  return Graph("g" + std::to_string(seed), n, std::move(edges));
}

std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rng rng(seed);
  rng.shuffle(perm);
  return perm;
}

double quad_sum(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
                const Eigen::MatrixXd& t, int p) {
  double acc = 0.0;
  for (int i = 0; i < w1.rows(); ++i)
    for (int ip = 0; ip < w2.rows(); ++ip)
      for (int j = 0; j < w1.rows(); ++j)
        for (int jp = 0; jp < w2.rows(); ++jp) {
          double d = std::abs(w1(i, j) - w2(ip, jp));
          acc += (p == 2 ? d * d : d) * t(i, ip) * t(j, jp);
        }
  return acc;
}

}  // namespace

int main() {
  GwParams params;

  // 1. Self-distance on random graphs (incl. regular shapes).
  printf("== self-distance ==\n");
  double worst_self = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(trial % 11);
    double p = 0.2 + 0.6 * ((trial * 7) % 10) / 10.0;
    Graph g = random_graph(n, p, 1000 + trial);
    SymmetricKernelMatrix a(g.adjacency_matrix());
    ProbabilityVector mu = node_measure(g, NodeMeasurePolicy::degree);
    auto res = gw_distance(a, mu, a, mu, params);
    worst_self = std::max(worst_self, res.value);
    if (res.value > 1e-6)
      printf("  trial %d n=%d p=%.2f  self=%.3e\n", trial, n, p, res.value);
  }
  printf("  worst self-distance: %.3e\n", worst_self);

  // Complete graph, 2-node edge graph, cycle: regular-instance saddles.
  for (int n : {2, 3, 6, 12}) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    Graph g("k", n, edges);
    SymmetricKernelMatrix a(g.adjacency_matrix());
    ProbabilityVector mu = node_measure(g, NodeMeasurePolicy::degree);
    auto res = gw_distance(a, mu, a, mu, params);
    printf("  K_%d self=%.3e\n", n, res.value);
  }
  for (int n : {4, 8, 12}) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    Graph g("c", n, edges);
    SymmetricKernelMatrix a(g.adjacency_matrix());
    ProbabilityVector mu = node_measure(g, NodeMeasurePolicy::degree);
    auto res = gw_distance(a, mu, a, mu, params);
    printf("  C_%d self=%.3e\n", n, res.value);
  }

  // 2. Permutation invariance.
  printf("== permutation invariance ==\n");
  double worst_perm = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    int n = 4 + trial % 7;
    Graph g = random_graph(n, 0.4, 2000 + trial);
    Graph h = permute_graph(g, random_permutation(n, 3000 + trial));
    SymmetricKernelMatrix a(g.adjacency_matrix());
    SymmetricKernelMatrix b(h.adjacency_matrix());
    ProbabilityVector mu = node_measure(g, NodeMeasurePolicy::degree);
    ProbabilityVector nu = node_measure(h, NodeMeasurePolicy::degree);
    auto res = gw_distance(a, mu, b, nu, params);
    worst_perm = std::max(worst_perm, res.value);
    if (res.value > 1e-3)
      printf("  trial %d n=%d  d2=%.3e\n", trial, n, res.value);
  }
  printf("  worst permuted distance: %.3e\n", worst_perm);

  // 3. 2x2 grid oracle.
  printf("== 2x2 oracle ==\n");
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_gap = -1.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd w1(2, 2), w2(2, 2);
    w1 << unif(eng), 0, 0, unif(eng);
    w1(0, 1) = w1(1, 0) = unif(eng);
    w2 << unif(eng), 0, 0, unif(eng);
    w2(0, 1) = w2(1, 0) = unif(eng);
    ProbabilityVector u = ProbabilityVector::uniform(2);
    auto res = gw_distance(SymmetricKernelMatrix(w1), u,
                           SymmetricKernelMatrix(w2), u, params);
    double best = 1e100;
    for (int k = 0; k <= 50000; ++k) {
      double t = 0.5 * k / 50000.0;
      Eigen::MatrixXd tp(2, 2);
      tp << t, 0.5 - t, 0.5 - t, t;
      best = std::min(best, quad_sum(w1, w2, tp, 2));
    }
    worst_gap = std::max(worst_gap, res.value - best);
  }
  printf("  worst solver-minus-oracle gap: %.3e\n", worst_gap);

  // 4. Single-input barycenter at K=N.
  printf("== single-input barycenter ==\n");
  {
    auto t0 = std::chrono::steady_clock::now();
    Graph g = random_graph(10, 0.4, 42);
    SymmetricKernelMatrix a(g.adjacency_matrix());
    auto res = gw_barycenter({a}, {ProbabilityVector::uniform(10)}, 10, {},
                             params);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    printf("  random n=10 uniform: final obj=%.3e steps=%zu (%.2fs)\n",
           res.objective_trace.back(), res.objective_trace.size(), dt);
    for (size_t i = 1; i < res.objective_trace.size(); ++i)
      if (res.objective_trace[i] > res.objective_trace[i - 1] + 1e-8)
        printf("  TRACE INCREASE at %zu\n", i);
  }
  {
    // cycle with degree measure (= uniform)
    int n = 8;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    Graph g("c", n, edges);
    SymmetricKernelMatrix a(g.adjacency_matrix());
    auto res = gw_barycenter({a}, {node_measure(g, NodeMeasurePolicy::degree)},
                             n, {}, params);
    printf("  C_8 degree measure: final obj=%.3e steps=%zu\n",
           res.objective_trace.back(), res.objective_trace.size());
  }

  // 5. SBM recovery sketch: does the barycenter develop block structure?
  printf("== SBM barycenter ==\n");
  {
    auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd truth(2, 2);
    truth << 0.8, 0.1, 0.1, 0.8;
    StepGraphon gt(truth);
    std::vector<SymmetricKernelMatrix> mats;
    std::vector<ProbabilityVector> meas;
    for (int m = 0; m < 20; ++m) {
      Graph s = sample_graph(gt, 40, 500 + m);
      Graph sp = permute_graph(s, random_permutation(40, 900 + m));
      mats.emplace_back(sp.adjacency_matrix());
      meas.push_back(node_measure(sp, NodeMeasurePolicy::degree));
    }
    auto res = gw_barycenter(mats, meas, 10, {}, params);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    printf("  final obj=%.4f steps=%zu (%.2fs)\n", res.objective_trace.back(),
           res.objective_trace.size(), dt);
    // distance of barycenter to truth
    auto d = gw_distance(res.barycenter, ProbabilityVector::uniform(10),
                         SymmetricKernelMatrix(truth),
                         ProbabilityVector(Eigen::Vector2d(0.5, 0.5)), params);
    printf("  d2(bary, truth)=%.4f\n", d.value);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) printf("%5.2f ", res.barycenter.values(i, j));
      printf("\n");
    }
  }
  return 0;
}
