#include "graphon/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

ProbabilityVector::ProbabilityVector(Eigen::VectorXd w) : weights(std::move(w)) {
  if (weights.size() == 0) throw ValidationError("probability vector is empty");
  if ((weights.array() < 0.0).any())
    throw ValidationError("probability vector has negative entries");
  if (std::abs(weights.sum() - 1.0) > 1e-9)
    throw ValidationError("probability vector does not sum to 1");
}

ProbabilityVector ProbabilityVector::uniform(int n) {
  if (n < 1) throw ValidationError("probability vector needs n >= 1");
  return ProbabilityVector(Eigen::VectorXd::Constant(n, 1.0 / n));
}

Graph::Graph(std::string id_, int node_count_,
             std::vector<std::pair<int, int>> edges_, std::optional<int> label_)
    : id(std::move(id_)),
      node_count(node_count_),
      edges(std::move(edges_)),
      label(label_) {
  if (node_count < 1)
    throw ValidationError("graph '" + id + "': node_count must be >= 1");
  if (label && *label < 0)
    throw ValidationError("graph '" + id + "': label must be nonnegative");
  for (auto& [u, v] : edges) {
    if (u == v)
      throw ValidationError("graph '" + id + "': self-loop at node " +
                            std::to_string(u));
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= node_count)
      throw ValidationError("graph '" + id + "': edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ValidationError("graph '" + id + "': duplicate edge");
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(node_count, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(node_count, node_count);
  for (const auto& [u, v] : edges) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

GraphDataset::GraphDataset(std::vector<Graph> graphs_)
    : graphs(std::move(graphs_)) {
  std::set<std::string> ids;
  std::set<int> labels;
  for (const auto& g : graphs) {
    if (!ids.insert(g.id).second)
      throw ValidationError("duplicate graph id '" + g.id + "'");
    if (g.label) labels.insert(*g.label);
  }
  class_labels.assign(labels.begin(), labels.end());
}

std::vector<int> GraphDataset::indices_of_class(int label) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (graphs[i].label && *graphs[i].label == label) out.push_back(i);
  return out;
}

namespace {

Graph graph_from_json_line(const std::string& line, int line_number) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("line " + std::to_string(line_number) +
                      ": invalid JSON: " + e.what());
  }
  auto fail = [line_number](const std::string& what) -> FormatError {
    return FormatError("line " + std::to_string(line_number) + ": " + what);
  };
  if (!obj.is_object()) throw fail("expected a JSON object");
  for (const auto& key : {"id", "label", "n", "edges"})
    if (!obj.contains(key)) throw fail(std::string("missing key '") + key + "'");
  if (obj.size() != 4) throw fail("unexpected extra keys");
  if (!obj["id"].is_string()) throw fail("'id' must be a string");
  if (!obj["label"].is_null() && !obj["label"].is_number_integer())
    throw fail("'label' must be an integer or null");
  if (!obj["n"].is_number_integer()) throw fail("'n' must be an integer");
  if (!obj["edges"].is_array()) throw fail("'edges' must be an array");

  std::vector<std::pair<int, int>> edges;
  for (const auto& e : obj["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw fail("each edge must be a 2-array of integers");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  std::optional<int> label;
  if (!obj["label"].is_null()) label = obj["label"].get<int>();
  try {
    return Graph(obj["id"].get<std::string>(), obj["n"].get<int>(),
                 std::move(edges), label);
  } catch (const ValidationError& e) {
    throw ValidationError("line " + std::to_string(line_number) + ": " +
                          e.what());
  }
}

}  // namespace

GraphDataset load_dataset(const std::filesystem::path& path,
                          DatasetFormat format) {
  (void)format;  // jsonl is the only format
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path.string());
  std::vector<Graph> graphs;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    graphs.push_back(graph_from_json_line(line, line_number));
  }
  return GraphDataset(std::move(graphs));
}

std::string graph_to_json_line(const Graph& graph) {
  nlohmann::ordered_json obj;
  obj["id"] = graph.id;
  if (graph.label)
    obj["label"] = *graph.label;
  else
    obj["label"] = nullptr;
  obj["n"] = graph.node_count;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [u, v] : graph.edges)
    edges.push_back(nlohmann::ordered_json::array({u, v}));
  obj["edges"] = std::move(edges);
  return obj.dump();
}

void save_dataset(const GraphDataset& dataset,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset file: " + path.string());
  for (const auto& g : dataset.graphs) out << graph_to_json_line(g) << '\n';
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

ProbabilityVector node_measure(const Graph& graph, NodeMeasurePolicy policy) {
  const int n = graph.node_count;
  if (policy == NodeMeasurePolicy::degree && graph.edge_count() > 0) {
    auto deg = graph.degrees();
    Eigen::VectorXd w(n);
    const double total = 2.0 * graph.edge_count();
    for (int i = 0; i < n; ++i) w[i] = deg[i] / total;
    return ProbabilityVector(std::move(w));
  }
  return ProbabilityVector::uniform(n);
}

std::pair<GraphDataset, GraphDataset> split_dataset(const GraphDataset& dataset,
                                                    double test_fraction,
                                                    std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ValidationError("test_fraction must be in (0, 1)");
  for (const auto& g : dataset.graphs)
    if (!g.label)
      throw ValidationError("split_dataset requires every graph labeled");

  std::vector<bool> in_test(dataset.size(), false);
  for (std::size_t c = 0; c < dataset.class_labels.size(); ++c) {
    std::vector<int> members = dataset.indices_of_class(dataset.class_labels[c]);
    const int count = static_cast<int>(members.size());
    if (count < 2)
      throw ValidationError("class " + std::to_string(dataset.class_labels[c]) +
                            " has fewer than 2 graphs");
    int n_test = static_cast<int>(std::lround(test_fraction * count));
    n_test = std::clamp(n_test, 1, count - 1);
    Rng rng(derive_seed(seed, {c}));
    rng.shuffle(members);
    for (int i = 0; i < n_test; ++i) in_test[members[i]] = true;
  }

  std::vector<Graph> train, test;
  for (int i = 0; i < dataset.size(); ++i)
    (in_test[i] ? test : train).push_back(dataset.graphs[i]);
  return {GraphDataset(std::move(train)), GraphDataset(std::move(test))};
}

Graph permute_graph(const Graph& graph, const std::vector<int>& permutation) {
  const int n = graph.node_count;
  if (static_cast<int>(permutation.size()) != n)
    throw ValidationError("permutation length differs from node count");
  std::vector<bool> seen(n, false);
  for (int p : permutation) {
    if (p < 0 || p >= n || seen[p])
      throw ValidationError("permutation is not a bijection on node indices");
    seen[p] = true;
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(graph.edges.size());
  for (const auto& [u, v] : graph.edges)
    edges.emplace_back(permutation[u], permutation[v]);
  return Graph(graph.id, n, std::move(edges), graph.label);
}

}  // namespace graphon
