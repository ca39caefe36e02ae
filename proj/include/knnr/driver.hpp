#pragma once

#include <map>
#include <optional>
#include <string>

#include "knnr/certify.hpp"
#include "knnr/learning.hpp"
#include "knnr/search.hpp"

namespace knnr {

struct RobustnessQuery {
  FeatureVec x;
  int n = 1;
  LearnConfig cfg;
  double time_limit_secs = 1800.0;
  bool use_quick_certify = true;  // false = falsify-only pipeline
};

enum class Outcome { Certified, Falsified, Unknown };
enum class CertifiedBy { Quick, Exhausted };

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  RemovalSet evidence;  // non-empty iff Falsified
  std::optional<CertifiedBy> certified_by;
  std::optional<Label> default_label;
  std::optional<int> optimal_k;
  double elapsed_secs = 0.0;
  std::uint64_t subsets_checked = 0;
  std::map<int, int> min_rmv_profile;
  std::string note;
};

/// The full pipeline: quick certification, then incremental falsification
/// over the promising-subset stream. Every Falsified verdict is re-verified
/// with a from-scratch, partition-inherited learn before it is returned.
/// Timeout yields Unknown; the time limit is checked between subsets.
Verdict decide(const LabeledDataset& T, const RobustnessQuery& q);

/// Exhaustive enumeration of all removal sets of size 1..n, ascending size,
/// lexicographic ID order within a size, each evaluated by a from-scratch
/// partition-inherited cross validation. Independent of the certify, search
/// and incremental-learning modules; serves as the ground-truth oracle on
/// small instances.
Verdict baseline_decide(const LabeledDataset& T, const RobustnessQuery& q);

/// Plain-loop p-fold cross validation over T with the given (already
/// reduced) fold partition. Candidates too large for some fold's training
/// portion are skipped; empty folds are excluded from the mean.
int cross_validate(const LabeledDataset& T, const std::vector<Fold>& groups,
                   const std::vector<int>& k_candidates);

}  // namespace knnr
