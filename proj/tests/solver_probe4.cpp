// Barycenter fixtures and budget exploration.
#include <chrono>
#include <cstdio>
#include <vector>

#include "graphon/graph.hpp"
#include "graphon/ot.hpp"
#include "graphon/rng.hpp"
#include "graphon/step_graphon.hpp"

using namespace graphon;

namespace {
Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return Graph("c", n, e);
}
Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = a; j < a + b; ++j) e.emplace_back(i, j);
  return Graph("kb", a + b, e);
}
std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rng rng(seed);
  rng.shuffle(perm);
  return perm;
}

void probe_single(const char* name, const Graph& g, const GwParams& params) {
  SymmetricKernelMatrix a(g.adjacency_matrix());
  auto res = gw_barycenter({a}, {node_measure(g, NodeMeasurePolicy::degree)},
                           g.node_count, {}, params);
  printf("  %-10s obj=%.3e steps=%zu\n", name, res.objective_trace.back(),
         res.objective_trace.size());
}
}  // namespace

int main() {
  GwParams params;
  printf("== single-input regular fixtures (default params) ==\n");
  probe_single("C_4", cycle(4), params);
  probe_single("C_6", cycle(6), params);
  probe_single("C_8", cycle(8), params);
  probe_single("K_3,3", complete_bipartite(3, 3), params);
  probe_single("K_4,4", complete_bipartite(4, 4), params);

  printf("== with outer=150 ==\n");
  GwParams longp = params;
  longp.outer_iterations = 150;
  probe_single("C_8", cycle(8), longp);
  probe_single("K_3,3", complete_bipartite(3, 3), longp);

  printf("== different seeds on C_8 ==\n");
  for (std::uint64_t s = 0; s < 6; ++s) {
    GwParams p = params;
    p.seed = s;
    probe_single("C_8", cycle(8), p);
  }

  printf("== SBM K=20 criterion-6 scale ==\n");
  {
    Eigen::MatrixXd truth(2, 2);
    truth << 0.8, 0.1, 0.1, 0.8;
    StepGraphon gt(truth);
    std::vector<SymmetricKernelMatrix> mats;
    std::vector<ProbabilityVector> meas;
    Rng sizes(99);
    for (int m = 0; m < 50; ++m) {
      int n = 60 + static_cast<int>(sizes.below(21));
      Graph s = sample_graph(gt, n, 500 + m);
      Graph sp = permute_graph(s, random_permutation(n, 900 + m));
      mats.emplace_back(sp.adjacency_matrix());
      meas.push_back(node_measure(sp, NodeMeasurePolicy::degree));
    }
    for (int outer : {50, 100}) {
      GwParams p = params;
      p.outer_iterations = outer;
      auto t0 = std::chrono::steady_clock::now();
      auto res = gw_barycenter(mats, meas, 20, {}, p);
      auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      auto d = gw_distance(res.barycenter, ProbabilityVector::uniform(20),
                           SymmetricKernelMatrix(truth),
                           ProbabilityVector(Eigen::Vector2d(0.5, 0.5)), p);
      printf("  outer=%d: obj=%.4f steps=%zu d2(truth)=%.4f (%.1fs)\n", outer,
             res.objective_trace.back(), res.objective_trace.size(), d.value, dt);
    }
  }
  return 0;
}
