#include "knnr/driver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace knnr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_query(const LabeledDataset& T, const RobustnessQuery& q) {
  if (q.n < 1) throw std::invalid_argument("poison budget must be >= 1");
  if (q.time_limit_secs <= 0) {
    throw std::invalid_argument("time limit must be positive");
  }
  if (T.labels().size() < 2) {
    throw std::invalid_argument("dataset must have at least 2 labels");
  }
  validate_config(q.cfg, T.size());
}

std::vector<Fold> reduce_groups(const std::vector<Fold>& groups,
                                const RemovalSet& R) {
  std::vector<Fold> out(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    for (ElementId id : groups[j]) {
      if (!contains_id(R, id)) out[j].push_back(id);
    }
  }
  return out;
}

// Lexicographic next combination of r indices over [0, pool).
bool next_combination(std::vector<int>& idx, int pool) {
  const int r = static_cast<int>(idx.size());
  int i = r - 1;
  while (i >= 0 && idx[i] == pool - r + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace

int cross_validate(const LabeledDataset& T, const std::vector<Fold>& groups,
                   const std::vector<int>& k_candidates) {
  const std::size_t n_cand = k_candidates.size();
  std::vector<bool> usable(n_cand, true);
  std::vector<std::vector<double>> fold_errors(n_cand);

  for (std::size_t j = 0; j < groups.size(); ++j) {
    const Fold& group = groups[j];
    if (group.empty()) continue;
    const LabeledDataset train = T.without(group);
    for (std::size_t i = 0; i < n_cand; ++i) {
      if (static_cast<std::size_t>(k_candidates[i]) > train.size()) {
        usable[i] = false;
      }
    }
    std::vector<std::size_t> err_counts(n_cand, 0);
    for (ElementId id : group) {
      const NeighborOrder order =
          build_neighbor_order(train, T.element(id).features);
      for (std::size_t i = 0; i < n_cand; ++i) {
        if (!usable[i]) continue;
        if (predict_ranked(train, order, k_candidates[i]) != T.label_of(id)) {
          ++err_counts[i];
        }
      }
    }
    for (std::size_t i = 0; i < n_cand; ++i) {
      fold_errors[i].push_back(static_cast<double>(err_counts[i]) /
                               static_cast<double>(group.size()));
    }
  }

  int best_k = -1;
  double best_err = 0.0;
  for (std::size_t i = 0; i < n_cand; ++i) {
    if (!usable[i]) continue;
    double sum = 0.0;
    for (double e : fold_errors[i]) sum += e;
    const double mean =
        fold_errors[i].empty() ? 0.0
                               : sum / static_cast<double>(fold_errors[i].size());
    if (best_k < 0 || mean < best_err) {
      best_k = k_candidates[i];
      best_err = mean;
    }
  }
  if (best_k < 0) throw std::invalid_argument("no usable candidate K");
  return best_k;
}

Verdict decide(const LabeledDataset& T, const RobustnessQuery& q) {
  check_query(T, q);
  const auto t0 = Clock::now();
  Verdict v;

  const NeighborOrder order = build_neighbor_order(T, q.x);

  if (q.use_quick_certify) {
    const CertifyOutcome oc =
        quick_certify_ranked(T, order, q.n, q.cfg.k_candidates);
    if (oc.certified) {
      v.outcome = Outcome::Certified;
      v.certified_by = CertifiedBy::Quick;
      // All candidate predictions agree once the indirect check passes.
      v.default_label = predict_ranked(T, order, q.cfg.k_candidates.front());
      v.elapsed_secs = seconds_since(t0);
      return v;
    }
  }

  const LearnResult learned = learn_init(T, q.cfg);
  const Label y = predict_ranked(T, order, learned.k);
  v.optimal_k = learned.k;
  v.default_label = y;

  const MinRemovalProfile profile =
      min_removal_profile(order, T, q.cfg.k_candidates, q.n, y);
  v.min_rmv_profile = profile.per_k;
  PromisingSubsetStream stream =
      gen_promising_subsets(T, q.n, order, y, profile, q.cfg.k_candidates);
  if (stream.full_enumeration()) {
    v.note = "min_rmv = 0: search space not reduced";
  }

  for (;;) {
    if (seconds_since(t0) >= q.time_limit_secs) {
      v.outcome = Outcome::Unknown;
      v.note = "time limit reached";
      break;
    }
    std::optional<RemovalSet> r = stream.next();
    if (!r) {
      v.outcome = Outcome::Certified;
      v.certified_by = CertifiedBy::Exhausted;
      break;
    }
    ++v.subsets_checked;
    const int k_new = learn_update(T, *r, learned.cache, q.cfg, q.n).k;
    const Label y_new = predict_ranked_excluding(T, order, k_new, *r);
    if (y_new != y) {
      // Evidence self-check: an independent from-scratch learn on T \ R
      // must reproduce the flip.
      const LabeledDataset reduced = T.without(*r);
      const std::vector<Fold> reduced_groups =
          reduce_groups(learned.cache.groups, *r);
      const int k_check =
          cross_validate(reduced, reduced_groups, q.cfg.k_candidates);
      const Label y_check = predict(reduced, k_check, q.x);
      if (y_check == y) {
        throw std::logic_error(
            "falsification evidence failed re-verification");
      }
      v.outcome = Outcome::Falsified;
      v.evidence = *r;
      break;
    }
  }
  v.elapsed_secs = seconds_since(t0);
  return v;
}

Verdict baseline_decide(const LabeledDataset& T, const RobustnessQuery& q) {
  check_query(T, q);
  const auto t0 = Clock::now();
  Verdict v;

  const std::vector<Fold> groups =
      partition_folds(T, q.cfg.folds, q.cfg.partition_seed);
  const int k = cross_validate(T, groups, q.cfg.k_candidates);
  const Label y = predict(T, k, q.x);
  v.optimal_k = k;
  v.default_label = y;

  const std::vector<ElementId> ids = T.ids();
  const int pool = static_cast<int>(ids.size());
  bool timed_out = false;

  for (int size = 1; size <= q.n && !timed_out; ++size) {
    if (size > pool) break;
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    do {
      if (seconds_since(t0) >= q.time_limit_secs) {
        timed_out = true;
        break;
      }
      RemovalSet r;
      r.reserve(size);
      for (int i : idx) r.push_back(ids[i]);
      ++v.subsets_checked;

      const LabeledDataset reduced = T.without(r);
      const std::vector<Fold> reduced_groups = reduce_groups(groups, r);
      const int k_new =
          cross_validate(reduced, reduced_groups, q.cfg.k_candidates);
      if (predict(reduced, k_new, q.x) != y) {
        v.outcome = Outcome::Falsified;
        v.evidence = r;
        v.elapsed_secs = seconds_since(t0);
        return v;
      }
    } while (next_combination(idx, pool));
  }

  if (timed_out) {
    v.outcome = Outcome::Unknown;
    v.note = "time limit reached";
  } else {
    v.outcome = Outcome::Certified;
    v.certified_by = CertifiedBy::Exhausted;
  }
  v.elapsed_secs = seconds_since(t0);
  return v;
}

}  // namespace knnr
