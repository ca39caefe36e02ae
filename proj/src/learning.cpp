#include "knnr/learning.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "knnr/certify.hpp"

namespace knnr {

std::vector<int> default_k_candidates(std::size_t train_size, int stride) {
  const int k_max = std::max<int>(1, static_cast<int>(train_size / 10));
  if (stride <= 0) {
    const int count_at_one = (k_max + 1) / 2;
    stride = std::max(1, (count_at_one + 49) / 50);
  }
  std::vector<int> out;
  for (int k = 1; k <= k_max; k += 2 * stride) out.push_back(k);
  return out;
}

void validate_config(const LearnConfig& cfg, std::size_t train_size) {
  if (cfg.folds < 2) throw std::invalid_argument("folds must be >= 2");
  if (static_cast<std::size_t>(cfg.folds) > train_size) {
    throw std::invalid_argument("more folds than training elements");
  }
  if (cfg.k_candidates.empty()) {
    throw std::invalid_argument("no candidate K values");
  }
  const std::size_t max_fold =
      (train_size + cfg.folds - 1) / cfg.folds;  // ceil
  int prev = 0;
  for (int k : cfg.k_candidates) {
    if (k <= prev) {
      throw std::invalid_argument("k_candidates must be strictly ascending");
    }
    prev = k;
    if (static_cast<std::size_t>(k) > train_size - max_fold) {
      throw std::invalid_argument("candidate K " + std::to_string(k) +
                                  " too large for every fold");
    }
  }
}

std::vector<Fold> partition_folds(const LabeledDataset& T, int p,
                                  std::uint64_t seed) {
  if (p < 1 || static_cast<std::size_t>(p) > T.size()) {
    throw std::invalid_argument("fold count out of range");
  }
  std::vector<ElementId> ids = T.ids();
  // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is
  // implementation-defined, and partitions must reproduce across builds.
  std::mt19937_64 rng(seed);
  for (std::size_t i = ids.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(ids[i], ids[j]);
  }
  std::vector<Fold> groups(p);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    groups[i % p].push_back(ids[i]);
  }
  for (Fold& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

namespace {

// argmin of mean fold error, smallest candidate on ties. Folds listed in
// `fold_sizes` with size 0 are excluded from the mean.
int pick_k(const std::vector<int>& candidates,
           const std::vector<bool>& usable,
           const std::vector<std::vector<double>>& fold_errors) {
  int best_k = -1;
  double best_err = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!usable[i]) continue;
    double sum = 0.0;
    std::size_t folds = 0;
    for (double e : fold_errors[i]) {
      if (e >= 0.0) {
        sum += e;
        ++folds;
      }
    }
    const double mean = folds == 0 ? 0.0 : sum / static_cast<double>(folds);
    if (best_k < 0 || mean < best_err) {
      best_k = candidates[i];
      best_err = mean;
    }
  }
  if (best_k < 0) throw std::invalid_argument("no usable candidate K");
  return best_k;
}

}  // namespace

LearnResult learn_init(const LabeledDataset& T, const LearnConfig& cfg) {
  validate_config(cfg, T.size());
  const int p = cfg.folds;
  const std::size_t n_cand = cfg.k_candidates.size();

  LearnResult result;
  ErrorCache& cache = result.cache;
  cache.groups = partition_folds(T, p, cfg.partition_seed);
  cache.fold_orders.resize(p);
  cache.err_sets.assign(n_cand, std::vector<std::set<ElementId>>(p));

  for (int j = 0; j < p; ++j) {
    const Fold& group = cache.groups[j];
    std::unordered_set<ElementId> held_out(group.begin(), group.end());
    for (ElementId id : group) {
      cache.fold_of[id] = j;
      cache.fold_orders[j].emplace(
          id, build_neighbor_order_excluding(T, T.element(id).features,
                                             held_out));
    }
  }

  std::vector<std::vector<double>> fold_errors(
      n_cand, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < n_cand; ++i) {
    const int k = cfg.k_candidates[i];
    for (int j = 0; j < p; ++j) {
      std::set<ElementId>& errs = cache.err_sets[i][j];
      for (ElementId id : cache.groups[j]) {
        const NeighborOrder& order = cache.fold_orders[j].at(id);
        if (predict_ranked(T, order, k) != T.label_of(id)) {
          errs.insert(id);
        }
      }
      fold_errors[i][j] = static_cast<double>(errs.size()) /
                          static_cast<double>(cache.groups[j].size());
    }
  }

  result.k = pick_k(cfg.k_candidates,
                    std::vector<bool>(n_cand, true), fold_errors);
  return result;
}

std::vector<ElementId> influenced_set(const LabeledDataset& T,
                                      const RemovalSet& R, int fold_j,
                                      const ErrorCache& cache, int n,
                                      const LearnConfig& cfg) {
  const int k_max = cfg.k_candidates.back();
  std::vector<ElementId> out;
  for (ElementId id : cache.groups[fold_j]) {
    if (contains_id(R, id)) continue;
    const NeighborOrder& order = cache.fold_orders[fold_j].at(id);
    const std::size_t reach =
        std::min<std::size_t>(k_max, order.ranked.size());
    bool touched = false;
    for (std::size_t r = 0; r < reach; ++r) {
      if (contains_id(R, order.ranked[r])) {
        touched = true;
        break;
      }
    }
    if (!touched) continue;
    if (quick_certify_ranked(T, order, n, cfg.k_candidates).certified) {
      continue;
    }
    out.push_back(id);
  }
  return out;
}

UpdateResult learn_update(const LabeledDataset& T, const RemovalSet& R,
                          const ErrorCache& cache, const LearnConfig& cfg,
                          int n, bool collect_deltas) {
  if (R.empty()) throw std::invalid_argument("empty removal set");
  if (static_cast<int>(R.size()) > n) {
    throw std::invalid_argument("removal set exceeds poison budget");
  }
  const int p = cfg.folds;
  const std::size_t n_cand = cfg.k_candidates.size();

  std::vector<Fold> new_groups(p);
  std::size_t new_total = 0;
  for (int j = 0; j < p; ++j) {
    for (ElementId id : cache.groups[j]) {
      if (!contains_id(R, id)) new_groups[j].push_back(id);
    }
    new_total += new_groups[j].size();
  }

  std::vector<std::vector<ElementId>> influ(p);
  for (int j = 0; j < p; ++j) {
    influ[j] = influenced_set(T, R, j, cache, n, cfg);
  }

  UpdateResult result;
  std::vector<bool> usable(n_cand, true);
  std::vector<std::vector<double>> fold_errors(
      n_cand, std::vector<double>(p, -1.0));

  for (std::size_t i = 0; i < n_cand; ++i) {
    const int k = cfg.k_candidates[i];
    for (int j = 0; j < p; ++j) {
      if (new_groups[j].empty()) continue;  // excluded from the mean
      if (static_cast<std::size_t>(k) > new_total - new_groups[j].size()) {
        usable[i] = false;
        result.skipped_candidates.push_back(k);
        break;
      }
      const std::set<ElementId>& old_errs = cache.err_sets[i][j];
      std::size_t err_count = 0;
      ErrSetDelta delta;
      delta.cand_idx = static_cast<int>(i);
      delta.fold = j;
      // Start from the old error set minus R (Case 1), then patch the
      // influenced elements (Cases 2 and 3).
      for (ElementId id : old_errs) {
        if (contains_id(R, id)) {
          if (collect_deltas) delta.removed.push_back(id);
        } else {
          ++err_count;
        }
      }
      for (ElementId id : influ[j]) {
        const bool was_err = old_errs.count(id) != 0;
        const NeighborOrder& order = cache.fold_orders[j].at(id);
        const bool now_err =
            predict_ranked_excluding(T, order, k, R) != T.label_of(id);
        if (was_err && !now_err) {
          --err_count;
          if (collect_deltas) delta.now_correct.push_back(id);
        } else if (!was_err && now_err) {
          ++err_count;
          if (collect_deltas) delta.now_wrong.push_back(id);
        }
      }
      fold_errors[i][j] = static_cast<double>(err_count) /
                          static_cast<double>(new_groups[j].size());
      if (collect_deltas) result.deltas.push_back(std::move(delta));
    }
  }

  result.k = pick_k(cfg.k_candidates, usable, fold_errors);
  return result;
}

}  // namespace knnr
