#pragma once

#include <map>
#include <unordered_set>
#include <vector>

#include "knnr/dataset.hpp"

namespace knnr {

/// Multiset of labels as (label -> positive count). Zero-count entries are
/// never stored.
class LabelCounter {
public:
  LabelCounter() = default;

  void add(Label y, int m = 1);

  /// Saturating removal of up to m occurrences of y.
  LabelCounter removed(Label y, int m) const;

  int count(Label y) const;
  int total() const;
  bool empty() const { return counts_.empty(); }
  const std::map<Label, int>& counts() const { return counts_; }

  bool operator==(const LabelCounter& other) const {
    return counts_ == other.counts_;
  }

private:
  std::map<Label, int> counts_;
};

/// Most frequent label; ties broken by smallest label value. This is the
/// concrete tie-break used by every prediction path.
Label freq(const LabelCounter& c);

/// Conservative (adversarial) tie semantics: true iff some label y' != y has
/// count >= count(y), or the counter is empty. A tie counts as a possible
/// change. Used only by abstract checks, never by concrete prediction.
bool changes_from(const LabelCounter& c, Label y);

/// Euclidean distance; dimensions must match.
double distance(const FeatureVec& a, const FeatureVec& b);

/// Element IDs of a dataset ranked ascending by (distance to query, id).
/// The length-k prefix is exactly the k nearest neighbors for every k, and
/// filtering out a removal set from the ranking yields the neighbors of the
/// reduced dataset without a re-sort.
struct NeighborOrder {
  FeatureVec query;
  std::vector<ElementId> ranked;
};

NeighborOrder build_neighbor_order(const LabeledDataset& T, const FeatureVec& x);

/// Ranking of x within T minus `excluded` (ids skipped during the scan).
NeighborOrder build_neighbor_order_excluding(
    const LabeledDataset& T, const FeatureVec& x,
    const std::unordered_set<ElementId>& excluded);

/// First k ids of the ranking (k clamped to the ranking size).
std::vector<ElementId> nearest_ids(const NeighborOrder& order, std::size_t k);

/// First k ids after deleting `removed_sorted` from the ranking.
std::vector<ElementId> nearest_ids_excluding(const NeighborOrder& order,
                                             std::size_t k,
                                             const RemovalSet& removed_sorted);

/// Label counts of the listed elements; all ids must exist in T.
LabelCounter label_counter(const LabeledDataset& T,
                           const std::vector<ElementId>& ids);

/// Majority vote over the k nearest neighbors of x in T.
Label predict(const LabeledDataset& T, std::size_t k, const FeatureVec& x);

/// predict() against a precomputed ranking.
Label predict_ranked(const LabeledDataset& T, const NeighborOrder& order,
                     std::size_t k);

/// Prediction on (dataset behind `order`) minus a removal set.
Label predict_ranked_excluding(const LabeledDataset& T,
                               const NeighborOrder& order, std::size_t k,
                               const RemovalSet& removed_sorted);

}  // namespace knnr
