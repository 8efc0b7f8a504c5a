#include "graphon/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphon/errors.hpp"
#include "graphon/rng.hpp"

namespace graphon {

std::vector<int> apportion(int total, const std::vector<int>& class_counts) {
  if (total < 0) throw ValidationError("apportion total must be >= 0");
  long long sum = 0;
  for (int c : class_counts) {
    if (c < 0) throw ValidationError("apportion counts must be >= 0");
    sum += c;
  }
  if (sum <= 0) throw ValidationError("apportion needs a positive count sum");

  const int n = static_cast<int>(class_counts.size());
  std::vector<int> out(n, 0);
  std::vector<std::pair<double, int>> remainders;  // (-remainder, index)
  int assigned = 0;
  for (int i = 0; i < n; ++i) {
    const double quota = static_cast<double>(total) * class_counts[i] / sum;
    out[i] = static_cast<int>(std::floor(quota));
    assigned += out[i];
    remainders.emplace_back(-(quota - out[i]), i);
  }
  std::sort(remainders.begin(), remainders.end());  // ties go to lower index
  for (int k = 0; k < total - assigned; ++k) ++out[remainders[k].second];
  return out;
}

AugmentationResult augment_dataset(const GraphDataset& train,
                                   const AugmentationPlan& plan) {
  if (plan.rate < 0.0) throw ValidationError("augmentation rate must be >= 0");
  if (train.class_labels.empty())
    throw ValidationError("train set has no labeled graphs");
  for (const auto& g : train.graphs)
    if (!g.label)
      throw ValidationError("augmentation requires every train graph labeled");

  // Per-class estimation from the train graphs only.
  std::map<int, StepGraphon> graphons;
  std::vector<std::vector<int>> members;
  for (int label : train.class_labels) {
    std::vector<int> idx = train.indices_of_class(label);
    if (idx.empty())
      throw ValidationError("class " + std::to_string(label) + " is empty");
    std::vector<Graph> class_graphs;
    class_graphs.reserve(idx.size());
    for (int i : idx) class_graphs.push_back(train.graphs[i]);
    graphons.emplace(label, estimate(class_graphs, plan.method));
    members.push_back(std::move(idx));
  }

  const int total =
      static_cast<int>(std::lround(plan.rate * train.size()));
  std::vector<int> class_counts;
  class_counts.reserve(members.size());
  for (const auto& idx : members)
    class_counts.push_back(static_cast<int>(idx.size()));
  const std::vector<int> synth_counts = apportion(total, class_counts);

  std::vector<Graph> graphs = train.graphs;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const int label = train.class_labels[c];
    const StepGraphon& w = graphons.at(label);
    std::vector<int> sizes;
    sizes.reserve(members[c].size());
    for (int i : members[c]) sizes.push_back(train.graphs[i].node_count);
    for (int j = 0; j < synth_counts[c]; ++j) {
      const std::uint64_t item_seed = derive_seed(
          plan.seed, {static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(j)});
      Rng rng(item_seed);
      const int n = sizes[static_cast<std::size_t>(rng.below(sizes.size()))];
      Graph synth = sample_graph(
          w, n, rng.next(),
          "synth-" + std::to_string(label) + "-" + std::to_string(j));
      synth.label = label;
      graphs.push_back(std::move(synth));
    }
  }

  return AugmentationResult{GraphDataset(std::move(graphs)),
                            std::move(graphons)};
}

}  // namespace graphon
