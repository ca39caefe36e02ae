#pragma once

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "knnr/knn.hpp"

namespace knnr {

struct LearnConfig {
  int folds = 10;
  std::vector<int> k_candidates;  // strictly ascending, positive
  std::uint64_t partition_seed = 0;
};

/// Odd candidate K values 1, 1+2s, 1+4s, ... up to floor(train_size/10).
/// stride == 0 picks the smallest stride keeping the count <= 50.
std::vector<int> default_k_candidates(std::size_t train_size, int stride = 0);

/// Throws std::invalid_argument if cfg is not valid for a training set of
/// the given size (folds >= 2, every K_i usable in every fold).
void validate_config(const LearnConfig& cfg, std::size_t train_size);

using Fold = std::vector<ElementId>;

/// Seeded shuffle of the ids dealt round-robin into p groups. Deterministic
/// for fixed (T, p, seed); group sizes differ by at most 1.
std::vector<Fold> partition_folds(const LabeledDataset& T, int p,
                                  std::uint64_t seed);

/// Cross-validation state reusable across removal sets: the fold partition,
/// per-(candidate, fold) misclassified-element sets, and the per-element
/// neighbor rankings within each fold's training portion. Immutable after
/// learn_init; concurrent learn_update calls need no locks.
struct ErrorCache {
  std::vector<Fold> groups;
  // err_sets[cand_idx][fold] = ids of G_fold misclassified under that K.
  std::vector<std::vector<std::set<ElementId>>> err_sets;
  // fold_orders[fold][id] = ranking of that element within T \ G_fold.
  std::vector<std::unordered_map<ElementId, NeighborOrder>> fold_orders;
  std::unordered_map<ElementId, int> fold_of;
};

struct LearnResult {
  int k = 0;
  ErrorCache cache;
};

/// From-scratch p-fold cross validation over T. Picks the candidate K with
/// minimal mean fold error (smallest K on ties) and records the error sets
/// and fold rankings for incremental reuse.
LearnResult learn_init(const LabeledDataset& T, const LearnConfig& cfg);

/// Elements of fold j whose classification could change when R is removed:
/// (1) not in R, (2) some neighbor in the K_max prefix of their fold ranking
/// is in R, (3) quick_certify over the fold's training portion fails for
/// them at budget n. Returned ascending.
std::vector<ElementId> influenced_set(const LabeledDataset& T,
                                      const RemovalSet& R, int fold_j,
                                      const ErrorCache& cache, int n,
                                      const LearnConfig& cfg);

/// Per-(candidate, fold) error-set delta: elements dropped because they are
/// in R, elements that flipped to correct, elements that flipped to wrong.
struct ErrSetDelta {
  int cand_idx = 0;
  int fold = 0;
  std::vector<ElementId> removed;      // Case 1: in R
  std::vector<ElementId> now_correct;  // Case 2: misclassified -> correct
  std::vector<ElementId> now_wrong;    // Case 3: correct -> misclassified
};

struct UpdateResult {
  int k = 0;
  std::vector<int> skipped_candidates;   // too large for T \ R
  std::vector<ErrSetDelta> deltas;       // filled when collect_deltas
};

/// Incremental re-selection of K for T \ R: folds become G_j \ R, error
/// sets are patched only over the influenced elements. Equals a
/// from-scratch, partition-inherited cross validation on T \ R. The cache
/// is never mutated.
UpdateResult learn_update(const LabeledDataset& T, const RemovalSet& R,
                          const ErrorCache& cache, const LearnConfig& cfg,
                          int n, bool collect_deltas = false);

}  // namespace knnr
