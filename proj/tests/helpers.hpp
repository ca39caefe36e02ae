#pragma once

// Shared fixtures for the test suites: seeded instance generators and
// independent oracle implementations (plain loops, no reuse of the library's
// ranking/caching machinery).

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "knnr/dataset.hpp"
#include "knnr/learning.hpp"

namespace tu {

using knnr::Element;
using knnr::ElementId;
using knnr::FeatureVec;
using knnr::Fold;
using knnr::Label;
using knnr::LabeledDataset;
using knnr::RemovalSet;

inline LabeledDataset dataset(
    std::vector<std::tuple<ElementId, FeatureVec, Label>> rows) {
  std::vector<Element> elems;
  for (auto& [id, f, l] : rows) elems.push_back({id, std::move(f), l});
  return LabeledDataset(std::move(elems));
}

/// 1-D convenience: element at position p with the given label.
inline LabeledDataset dataset_1d(
    std::vector<std::tuple<ElementId, double, Label>> rows) {
  std::vector<Element> elems;
  for (auto& [id, p, l] : rows) elems.push_back({id, FeatureVec{p}, l});
  return LabeledDataset(std::move(elems));
}

/// Small 2-D instance with overlapping label clusters; sized and labeled so
/// that both robust and non-robust queries occur across seeds.
inline LabeledDataset random_instance(std::mt19937_64& rng,
                                      int min_size = 20, int max_size = 40,
                                      int max_labels = 3) {
  std::uniform_int_distribution<int> size_dist(min_size, max_size);
  std::uniform_int_distribution<int> label_dist(2, max_labels);
  const int m = size_dist(rng);
  const int n_labels = label_dist(rng);
  std::uniform_real_distribution<double> center(-2.0, 2.0);
  std::vector<std::pair<double, double>> centers;
  for (int l = 0; l < n_labels; ++l) {
    centers.emplace_back(center(rng), center(rng));
  }
  std::normal_distribution<double> noise(0.0, 1.1);
  std::vector<Element> elems;
  for (int i = 0; i < m; ++i) {
    const Label l = static_cast<Label>(i % n_labels);
    elems.push_back({static_cast<ElementId>(i),
                     {centers[l].first + noise(rng),
                      centers[l].second + noise(rng)},
                     l});
  }
  return LabeledDataset(std::move(elems));
}

inline FeatureVec random_query(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-2.5, 2.5);
  return {coord(rng), coord(rng)};
}

/// Two Gaussian clusters in 2-D, labels 0 and 1, `m` elements total.
inline LabeledDataset two_cluster(int m, std::mt19937_64& rng,
                                  double separation = 4.0,
                                  double sigma = 1.0) {
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<Element> elems;
  for (int i = 0; i < m; ++i) {
    const Label l = static_cast<Label>(i % 2);
    const double cx = l == 0 ? 0.0 : separation;
    elems.push_back({static_cast<ElementId>(i),
                     {cx + noise(rng), noise(rng)},
                     l});
  }
  return LabeledDataset(std::move(elems));
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// Naive full-scan KNN vote: selection by repeated minimum, majority with
/// smallest-label tie-break. Shares no code with the library.
inline Label brute_force_predict(const LabeledDataset& T, std::size_t k,
                                 const FeatureVec& x) {
  struct Entry {
    double d;
    ElementId id;
    Label label;
  };
  std::vector<Entry> entries;
  for (const Element& e : T.elements()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum += (e.features[i] - x[i]) * (e.features[i] - x[i]);
    }
    entries.push_back({std::sqrt(sum), e.id, e.label});
  }
  std::map<Label, int> votes;
  for (std::size_t round = 0; round < k && round < entries.size(); ++round) {
    std::size_t best = round;
    for (std::size_t i = round + 1; i < entries.size(); ++i) {
      if (entries[i].d < entries[best].d ||
          (entries[i].d == entries[best].d &&
           entries[i].id < entries[best].id)) {
        best = i;
      }
    }
    std::swap(entries[round], entries[best]);
    votes[entries[round].label]++;
  }
  Label winner = votes.begin()->first;
  for (const auto& [l, c] : votes) {
    if (c > votes.at(winner)) winner = l;
  }
  return winner;
}

/// Naive ranked id list for prefix checks.
inline std::vector<ElementId> brute_force_ranking(const LabeledDataset& T,
                                                  const FeatureVec& x) {
  std::vector<std::pair<double, ElementId>> d;
  for (const Element& e : T.elements()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum += (e.features[i] - x[i]) * (e.features[i] - x[i]);
    }
    d.emplace_back(sum, e.id);
  }
  std::stable_sort(d.begin(), d.end());
  std::vector<ElementId> out;
  for (auto& [_, id] : d) out.push_back(id);
  return out;
}

/// Plain-loop p-fold cross validation written directly from the standard
/// description: per candidate, per fold, count brute-force misclassifications
/// over the held-out group; argmin of the mean, smallest candidate on ties.
/// Empty folds are skipped; candidates too large for a fold's training
/// portion are skipped entirely.
inline int plain_cross_validate(const LabeledDataset& T,
                                const std::vector<Fold>& groups,
                                const std::vector<int>& candidates,
                                std::map<int, std::vector<std::vector<ElementId>>>*
                                    err_sets_out = nullptr) {
  int best_k = -1;
  double best_err = 0.0;
  for (int k : candidates) {
    double sum = 0.0;
    int folds = 0;
    bool usable = true;
    std::vector<std::vector<ElementId>> errs_per_fold(groups.size());
    for (std::size_t j = 0; j < groups.size() && usable; ++j) {
      if (groups[j].empty()) continue;
      RemovalSet held(groups[j].begin(), groups[j].end());
      std::sort(held.begin(), held.end());
      const LabeledDataset train = T.without(held);
      if (static_cast<std::size_t>(k) > train.size()) {
        usable = false;
        break;
      }
      int wrong = 0;
      for (ElementId id : groups[j]) {
        if (brute_force_predict(train, k, T.element(id).features) !=
            T.label_of(id)) {
          ++wrong;
          errs_per_fold[j].push_back(id);
        }
      }
      sum += static_cast<double>(wrong) / groups[j].size();
      ++folds;
    }
    if (!usable) continue;
    const double mean = folds == 0 ? 0.0 : sum / folds;
    if (best_k < 0 || mean < best_err) {
      best_k = k;
      best_err = mean;
    }
    if (err_sets_out) (*err_sets_out)[k] = errs_per_fold;
  }
  return best_k;
}

/// Linear-scan minimal violating removal: try i = 0..n directly against the
/// conservative change condition, counting labels by hand.
inline int linear_min_removal(const std::vector<ElementId>& ranking,
                              const LabeledDataset& T, int k, int n,
                              Label y) {
  for (int i = 0; i <= n; ++i) {
    const std::size_t reach =
        std::min<std::size_t>(k + i, ranking.size());
    std::map<Label, int> counts;
    for (std::size_t r = 0; r < reach; ++r) {
      counts[T.label_of(ranking[r])]++;
    }
    auto it = counts.find(y);
    if (it != counts.end()) {
      it->second -= i;
      if (it->second <= 0) counts.erase(it);
    }
    bool change = counts.empty();
    const int cy = counts.count(y) ? counts.at(y) : 0;
    for (const auto& [l, c] : counts) {
      if (l != y && c >= cy) change = true;
    }
    if (change) return i;
  }
  return n + 1;
}

}  // namespace tu
