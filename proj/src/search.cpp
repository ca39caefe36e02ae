#include "knnr/search.hpp"

#include <algorithm>
#include <climits>
#include <unordered_set>

namespace knnr {

int min_removal(const NeighborOrder& order, const LabeledDataset& T, int k,
                int n, Label y) {
  int start = 0;
  int end = n + 1;
  while (start < end) {
    const int mid = (start + end) / 2;
    const std::size_t reach =
        std::min<std::size_t>(k + mid, order.ranked.size());
    const LabelCounter c = label_counter(T, nearest_ids(order, reach));
    if (changes_from(c.removed(y, mid), y)) {
      end = mid;
    } else {
      start = mid + 1;
    }
  }
  return start;
}

MinRemovalProfile min_removal_profile(const NeighborOrder& order,
                                      const LabeledDataset& T,
                                      const std::vector<int>& k_candidates,
                                      int n, Label y) {
  MinRemovalProfile profile;
  for (int k : k_candidates) {
    profile.per_k[k] = min_removal(order, T, k, n, y);
  }
  return profile;
}

void PromisingSubsetStream::Comb::reset(std::size_t pool_size, int r) {
  pool = pool_size;
  active = r >= 0 && static_cast<std::size_t>(r) <= pool_size;
  idx.clear();
  if (active) {
    for (int i = 0; i < r; ++i) idx.push_back(i);
  }
}

bool PromisingSubsetStream::Comb::advance() {
  const int r = static_cast<int>(idx.size());
  if (r == 0) return false;
  int i = r - 1;
  while (i >= 0 && idx[i] == static_cast<int>(pool) - r + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

bool PromisingSubsetStream::emit_if_new(const RemovalSet& r) {
  if (!seen_.insert(r).second) return false;
  ++emitted_;
  return true;
}

std::optional<RemovalSet> PromisingSubsetStream::next() {
  RemovalSet r;
  while (produce_next_raw(r)) {
    if (emit_if_new(r)) return r;
  }
  return std::nullopt;
}

bool PromisingSubsetStream::produce_next_raw(RemovalSet& out) {
  for (;;) {
    if (size_ > n_) return false;
    if (phase_ == 0) {
      if (!phase_a_init_) {
        phase_a_init_ = true;
        comb_a_.active = false;
        // Neighborhood prefixes are nested, so the largest prefix whose
        // min_rmv fits the current size covers every pure-neighborhood set.
        int best = -1;
        for (std::size_t i = 0; i < cands_.size(); ++i) {
          if (cands_[i].min_rmv <= size_ &&
              cands_[i].prefix.size() >= static_cast<std::size_t>(size_)) {
            best = static_cast<int>(i);
          }
        }
        if (best >= 0) {
          phase_a_cand_ = static_cast<std::size_t>(best);
          comb_a_.reset(cands_[phase_a_cand_].prefix.size(), size_);
        }
      }
      if (comb_a_.active) {
        const auto& pool = cands_[phase_a_cand_].prefix;
        out.clear();
        for (int i : comb_a_.idx) out.push_back(pool[i]);
        if (!comb_a_.advance()) comb_a_.active = false;
        return true;
      }
      phase_ = 1;
      cand_i_ = 0;
      r1_ = INT_MIN;
      comb1_.active = comb2_.active = false;
    }
    if (comb2_.active) {
      const Cand& c = cands_[cand_i_];
      out.clear();
      for (int i : comb1_.idx) out.push_back(c.prefix[i]);
      for (int i : comb2_.idx) out.push_back(c.complement[i]);
      std::sort(out.begin(), out.end());
      advance_phase_b_cursor();
      return true;
    }
    if (!seek_phase_b()) {
      ++size_;
      phase_ = 0;
      phase_a_init_ = false;
    }
  }
}

bool PromisingSubsetStream::seek_phase_b() {
  while (cand_i_ < cands_.size()) {
    const Cand& c = cands_[cand_i_];
    const int r1_lo = std::max(c.min_rmv, 0);
    const int r1_hi =
        std::min(size_ - 1, static_cast<int>(c.prefix.size()));
    if (r1_ == INT_MIN) r1_ = r1_lo;
    for (; r1_ <= r1_hi; ++r1_) {
      const int r2 = size_ - r1_;
      if (r2 < 1 || r2 > static_cast<int>(c.complement.size())) continue;
      comb1_.reset(c.prefix.size(), r1_);
      comb2_.reset(c.complement.size(), r2);
      if (comb1_.active && comb2_.active) return true;
    }
    ++cand_i_;
    r1_ = INT_MIN;
  }
  return false;
}

void PromisingSubsetStream::advance_phase_b_cursor() {
  if (comb2_.advance()) return;
  if (comb1_.advance()) {
    comb2_.reset(cands_[cand_i_].complement.size(), size_ - r1_);
    return;
  }
  comb1_.active = comb2_.active = false;
  ++r1_;
}

PromisingSubsetStream gen_promising_subsets(
    const LabeledDataset& T, int n, const NeighborOrder& order, Label y,
    const MinRemovalProfile& profile, const std::vector<int>& k_candidates) {
  (void)y;
  PromisingSubsetStream stream;
  stream.n_ = n;

  // Feasible candidates as (prefix length, min_rmv), coalesced: prefixes of
  // equal length are identical, and the weaker constraint subsumes.
  std::map<std::size_t, int> by_reach;
  for (int k : k_candidates) {
    const int m = profile.per_k.at(k);
    if (m > n) continue;
    const std::size_t reach =
        std::min<std::size_t>(k + n, order.ranked.size());
    auto it = by_reach.find(reach);
    if (it == by_reach.end()) {
      by_reach[reach] = m;
    } else {
      it->second = std::min(it->second, m);
    }
  }

  // Drop candidates subsumed by a larger prefix with min_rmv no larger.
  std::vector<std::pair<std::size_t, int>> kept;
  int min_m_above = INT_MAX;
  for (auto it = by_reach.rbegin(); it != by_reach.rend(); ++it) {
    if (it->second < min_m_above) {
      kept.emplace_back(it->first, it->second);
      min_m_above = it->second;
    }
  }
  std::reverse(kept.begin(), kept.end());

  std::vector<ElementId> all_ids = T.ids();
  for (const auto& [reach, m] : kept) {
    PromisingSubsetStream::Cand cand;
    cand.min_rmv = m;
    cand.prefix.assign(order.ranked.begin(), order.ranked.begin() + reach);
    std::sort(cand.prefix.begin(), cand.prefix.end());
    std::unordered_set<ElementId> in_prefix(cand.prefix.begin(),
                                            cand.prefix.end());
    for (ElementId id : all_ids) {
      if (!in_prefix.count(id)) cand.complement.push_back(id);
    }
    if (m == 0) stream.full_enumeration_ = true;
    stream.cands_.push_back(std::move(cand));
  }
  return stream;
}

}  // namespace knnr
