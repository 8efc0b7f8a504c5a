#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "graphon/estimators.hpp"
#include "graphon/graph.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

enum class NodeCountPolicy { empirical };

struct AugmentationPlan {
  double rate = 0.10;  // synthetic count as a fraction of the train size
  EstimatorConfig method;
  NodeCountPolicy node_count_policy = NodeCountPolicy::empirical;
  std::uint64_t seed = 0;
};

// Largest-remainder apportionment of `total` proportional to class_counts;
// remainder ties go to the lower index.
std::vector<int> apportion(int total, const std::vector<int>& class_counts);

struct AugmentationResult {
  GraphDataset augmented;                // train graphs plus synthetics
  std::map<int, StepGraphon> graphons;   // per-class estimates
};

// Estimates one graphon per class from the train graphs, then samples
// round(rate * |train|) synthetic graphs apportioned across classes by
// frequency. Synthetic graph j of class i uses the seed derived from
// (plan.seed, class index, j); its node count is drawn uniformly from the
// class's observed sizes; its id is "synth-<label>-<j>".
AugmentationResult augment_dataset(const GraphDataset& train,
                                   const AugmentationPlan& plan);

}  // namespace graphon
