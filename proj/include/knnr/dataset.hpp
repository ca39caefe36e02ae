#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace knnr {

using ElementId = std::int32_t;
using Label = std::int32_t;
using FeatureVec = std::vector<double>;

/// A removal set: element IDs sorted ascending, no duplicates.
using RemovalSet = std::vector<ElementId>;

struct Element {
  ElementId id;
  FeatureVec features;
  Label label;
};

/// Training set with stable element IDs. Subsets derived from a dataset keep
/// the original IDs, so removal sets stay meaningful across derived views.
class LabeledDataset {
public:
  LabeledDataset() = default;
  explicit LabeledDataset(std::vector<Element> elements);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::size_t dimension() const { return dim_; }
  const std::vector<Element>& elements() const { return elements_; }

  bool contains(ElementId id) const { return index_.count(id) != 0; }
  const Element& element(ElementId id) const;
  Label label_of(ElementId id) const { return element(id).label; }

  /// Distinct labels, ascending.
  std::vector<Label> labels() const;

  /// All element IDs, ascending.
  std::vector<ElementId> ids() const;

  /// Copy with the given ids removed; remaining IDs are preserved.
  LabeledDataset without(const RemovalSet& ids) const;

private:
  std::vector<Element> elements_;
  std::size_t dim_ = 0;
  std::unordered_map<ElementId, std::size_t> index_;
};

/// Binary search in a sorted id vector.
bool contains_id(const std::vector<ElementId>& sorted_ids, ElementId id);

}  // namespace knnr
