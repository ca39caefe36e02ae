#include "knnr/dataset.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace knnr {

LabeledDataset::LabeledDataset(std::vector<Element> elements)
    : elements_(std::move(elements)) {
  if (!elements_.empty()) {
    dim_ = elements_.front().features.size();
    if (dim_ == 0) {
      throw std::invalid_argument("feature dimension must be >= 1");
    }
  }
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Element& e = elements_[i];
    if (e.features.size() != dim_) {
      throw std::invalid_argument("inconsistent feature dimension");
    }
    if (!index_.emplace(e.id, i).second) {
      throw std::invalid_argument("duplicate element id " +
                                  std::to_string(e.id));
    }
  }
}

const Element& LabeledDataset::element(ElementId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw std::invalid_argument("unknown element id " + std::to_string(id));
  }
  return elements_[it->second];
}

std::vector<Label> LabeledDataset::labels() const {
  std::set<Label> seen;
  for (const Element& e : elements_) seen.insert(e.label);
  return {seen.begin(), seen.end()};
}

std::vector<ElementId> LabeledDataset::ids() const {
  std::vector<ElementId> out;
  out.reserve(elements_.size());
  for (const Element& e : elements_) out.push_back(e.id);
  std::sort(out.begin(), out.end());
  return out;
}

LabeledDataset LabeledDataset::without(const RemovalSet& ids) const {
  for (ElementId id : ids) {
    if (!contains(id)) {
      throw std::invalid_argument("unknown element id " + std::to_string(id));
    }
  }
  std::vector<Element> kept;
  kept.reserve(elements_.size());
  for (const Element& e : elements_) {
    if (!contains_id(ids, e.id)) kept.push_back(e);
  }
  return LabeledDataset(std::move(kept));
}

bool contains_id(const std::vector<ElementId>& sorted_ids, ElementId id) {
  return std::binary_search(sorted_ids.begin(), sorted_ids.end(), id);
}

}  // namespace knnr
