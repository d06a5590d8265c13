#ifndef DENDROID_MDL_LEARNER_H_
#define DENDROID_MDL_LEARNER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "dendroid/dataset.h"
#include "dendroid/dendroid_model.h"
#include "dendroid/forest.h"

namespace dendroid {

// A variable pair with its smoothed mutual information and MDL threshold.
struct ScoredPair {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double mi = 0.0;
  double theta = 0.0;
};

// Scores all n(n-1)/2 pairs and returns them in queue order: descending
// mutual information, equal values ordered by (i, j) ascending.
std::vector<ScoredPair> score_pairs(const DiscreteDataset& data);

// What the learner did with each pair of the queue.
enum class PairOutcome {
  kAccepted,        // I > theta and endpoints in different trees: edge added
  kSameTree,        // I > theta but the edge would close a cycle
  kBelowThreshold,  // the first pair failing I > theta; growth stopped here
  kUnvisited,       // never popped because growth stopped earlier
};

struct LearnTrace {
  DependencyForest forest;
  std::vector<ScoredPair> queue;
  std::vector<PairOutcome> outcomes;  // parallel to queue
  // N < 2 makes every threshold zero; callers may want to warn.
  bool degenerate_sample = false;
};

// Forest growth: pop the pair with the largest mutual information while it
// exceeds its threshold, linking it when its endpoints lie in different
// trees. The first pair that fails the threshold ends the loop.
LearnTrace learn_structure_traced(const DiscreteDataset& data);
DependencyForest learn_structure(const DiscreteDataset& data);

// learn_structure, then root_trees, then fit_parameters.
DendroidModel learn_model(const DiscreteDataset& data);

// The edgeless model with ELE-smoothed marginals.
DendroidModel independent_model(const DiscreteDataset& data);

struct DependencyReportOptions {
  // Use raw relative frequencies instead of ELE-smoothed estimates.
  bool raw_frequencies = false;
  // Score with P(X_i=1 | X_j=1) instead of the joint P(X_i=1, X_j=1).
  bool conditional = false;
};

struct DependencyReportEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string slot_i;
  std::string slot_j;
  double score = 0.0;
  bool positive = false;
};

// Slot pairs that co-occur with positive dependence, i.e.
// P(X_i=1, X_j=1) > P(X_i=1) P(X_j=1), and whose score exceeds
// score_threshold; sorted by descending score, then (i, j). Requires a
// slot-view dataset (every domain {0, 1}); DataError otherwise.
std::vector<DependencyReportEntry> dependency_report(const DiscreteDataset& data,
                                                     double score_threshold = 0.25,
                                                     const DependencyReportOptions& options = {});

}  // namespace dendroid

#endif  // DENDROID_MDL_LEARNER_H_
