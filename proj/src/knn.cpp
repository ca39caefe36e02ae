#include "knnr/knn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace knnr {

void LabelCounter::add(Label y, int m) {
  if (m < 0) throw std::invalid_argument("negative count");
  if (m == 0) return;
  counts_[y] += m;
}

LabelCounter LabelCounter::removed(Label y, int m) const {
  if (m < 0) throw std::invalid_argument("negative count");
  LabelCounter out = *this;
  auto it = out.counts_.find(y);
  if (it == out.counts_.end()) return out;
  if (it->second <= m) {
    out.counts_.erase(it);
  } else {
    it->second -= m;
  }
  return out;
}

int LabelCounter::count(Label y) const {
  auto it = counts_.find(y);
  return it == counts_.end() ? 0 : it->second;
}

int LabelCounter::total() const {
  int t = 0;
  for (const auto& [_, c] : counts_) t += c;
  return t;
}

Label freq(const LabelCounter& c) {
  if (c.empty()) throw std::invalid_argument("freq of empty counter");
  Label best = 0;
  int best_count = -1;
  // Map iteration is ascending by label, so strict > keeps the smallest
  // label on ties.
  for (const auto& [label, count] : c.counts()) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return best;
}

bool changes_from(const LabelCounter& c, Label y) {
  if (c.empty()) return true;
  const int cy = c.count(y);
  for (const auto& [label, count] : c.counts()) {
    if (label != y && count >= cy) return true;
  }
  return false;
}

double distance(const FeatureVec& a, const FeatureVec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

NeighborOrder rank_elements(const LabeledDataset& T, const FeatureVec& x,
                            const std::unordered_set<ElementId>* excluded) {
  if (T.empty()) throw std::invalid_argument("empty dataset");
  if (x.size() != T.dimension()) {
    throw std::invalid_argument("query dimension mismatch");
  }
  std::vector<std::pair<double, ElementId>> dists;
  dists.reserve(T.size());
  for (const Element& e : T.elements()) {
    if (excluded && excluded->count(e.id)) continue;
    dists.emplace_back(distance(e.features, x), e.id);
  }
  // Tie on distance -> ascending id; pair comparison gives exactly that.
  std::sort(dists.begin(), dists.end());
  NeighborOrder order;
  order.query = x;
  order.ranked.reserve(dists.size());
  for (const auto& [_, id] : dists) order.ranked.push_back(id);
  return order;
}

}  // namespace

NeighborOrder build_neighbor_order(const LabeledDataset& T,
                                   const FeatureVec& x) {
  return rank_elements(T, x, nullptr);
}

NeighborOrder build_neighbor_order_excluding(
    const LabeledDataset& T, const FeatureVec& x,
    const std::unordered_set<ElementId>& excluded) {
  return rank_elements(T, x, &excluded);
}

std::vector<ElementId> nearest_ids(const NeighborOrder& order, std::size_t k) {
  k = std::min(k, order.ranked.size());
  return {order.ranked.begin(), order.ranked.begin() + k};
}

std::vector<ElementId> nearest_ids_excluding(const NeighborOrder& order,
                                             std::size_t k,
                                             const RemovalSet& removed_sorted) {
  std::vector<ElementId> out;
  out.reserve(k);
  for (ElementId id : order.ranked) {
    if (out.size() == k) break;
    if (!contains_id(removed_sorted, id)) out.push_back(id);
  }
  return out;
}

LabelCounter label_counter(const LabeledDataset& T,
                           const std::vector<ElementId>& ids) {
  LabelCounter c;
  for (ElementId id : ids) c.add(T.label_of(id));
  return c;
}

Label predict(const LabeledDataset& T, std::size_t k, const FeatureVec& x) {
  if (k < 1 || k > T.size()) {
    throw std::invalid_argument("K out of range");
  }
  return predict_ranked(T, build_neighbor_order(T, x), k);
}

Label predict_ranked(const LabeledDataset& T, const NeighborOrder& order,
                     std::size_t k) {
  return freq(label_counter(T, nearest_ids(order, k)));
}

Label predict_ranked_excluding(const LabeledDataset& T,
                               const NeighborOrder& order, std::size_t k,
                               const RemovalSet& removed_sorted) {
  return freq(label_counter(T, nearest_ids_excluding(order, k, removed_sorted)));
}

}  // namespace knnr
