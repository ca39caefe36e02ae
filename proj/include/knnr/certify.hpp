#pragma once

#include <optional>
#include <vector>

#include "knnr/knn.hpp"

namespace knnr {

enum class CheckKind { Direct, Indirect };

struct CertifyOutcome {
  bool certified = false;
  std::optional<int> failing_k;
  std::optional<CheckKind> failing_check;
};

/// Sound, incomplete robustness check in the label-counter domain.
///
/// For each candidate K, let y = freq of the K-neighborhood counter. The
/// direct check fails if removing n y-labeled elements from the (K+n)
/// neighborhood could change the most frequent label (adversarial ties).
/// The indirect check fails if two candidate K values predict different
/// labels. certified == true guarantees the prediction for x is n-poisoning
/// robust; false means unknown. Exits on first failing check.
CertifyOutcome quick_certify(const LabeledDataset& T, int n,
                             const FeatureVec& x,
                             const std::vector<int>& k_candidates);

/// Same check against a precomputed ranking. The ranking may cover a subset
/// of T (e.g. a cross-validation training portion); T is used for labels
/// only. K+n is clamped to the ranking size.
CertifyOutcome quick_certify_ranked(const LabeledDataset& T,
                                    const NeighborOrder& order, int n,
                                    const std::vector<int>& k_candidates);

}  // namespace knnr
