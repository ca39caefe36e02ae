#pragma once

#include <cstdint>

#include "knnr/dataset.hpp"

namespace knnr {

struct PoisonResult {
  LabeledDataset poisoned;
  std::vector<ElementId> injected;  // fresh ids, ascending
};

/// Draws n' uniformly from [1, n], then appends n' mutated copies of
/// randomly picked elements: each feature perturbed by uniform noise within
/// +/-10% of that feature's observed range, label reassigned uniformly over
/// the other labels. Deterministic for fixed (T, n, seed). Requires at
/// least two distinct labels.
PoisonResult inject_poison(const LabeledDataset& T, int n, std::uint64_t seed);

}  // namespace knnr
