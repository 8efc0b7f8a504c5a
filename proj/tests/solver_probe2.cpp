// Focused debugging of stalled instances.
#include <cstdio>
#include <vector>

#include "graphon/graph.hpp"
#include "graphon/ot.hpp"
#include "graphon/rng.hpp"

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
}  // namespace

int main() {
  // trial 13 from the first probe: n=4, p=0.26, seed 1013
  Graph g = random_graph(4, 0.26, 1013);
  printf("n=%d edges:", g.node_count);
  for (auto [u, v] : g.edges) printf(" (%d,%d)", u, v);
  printf("\n");
  auto deg = g.degrees();
  printf("degrees:");
  for (int d : deg) printf(" %d", d);
  printf("\n");
  ProbabilityVector mu = node_measure(g, NodeMeasurePolicy::degree);
  printf("mu:");
  for (int i = 0; i < mu.size(); ++i) printf(" %.3f", mu[i]);
  printf("\n");

  SymmetricKernelMatrix a(g.adjacency_matrix());
  GwParams params;
  for (int r = 0; r < 5; ++r) {
    params.seed = r;
    auto res = gw_distance(a, mu, a, mu, params);
    printf("seed %d: self=%.6e\n", r, res.value);
  }
  return 0;
}
