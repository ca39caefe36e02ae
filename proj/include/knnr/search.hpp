#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "knnr/knn.hpp"

namespace knnr {

/// Per-candidate-K minimal violating removal. n+1 encodes infeasibility.
struct MinRemovalProfile {
  std::map<int, int> per_k;
};

/// Least i in [0, n] such that removing i y-labeled elements from the
/// (K+i)-neighborhood of x could change the most frequent label away from y
/// (adversarial ties), or n+1 if none. Binary search over [0, n+1]; the
/// feasibility predicate is monotone in i.
int min_removal(const NeighborOrder& order, const LabeledDataset& T, int k,
                int n, Label y);

MinRemovalProfile min_removal_profile(const NeighborOrder& order,
                                      const LabeledDataset& T,
                                      const std::vector<int>& k_candidates,
                                      int n, Label y);

/// Lazy, resumable stream of promising removal sets. Every emitted R has
/// 1 <= |R| <= n and, for some feasible candidate K, at least min_rmv(K)
/// elements inside the (K+n)-neighborhood of x. Emission order: ascending
/// |R|; within a size, pure-neighborhood sets first, then lexicographic ID
/// order. No set is emitted twice. Exhaustion means every possibly-violating
/// removal set has been produced.
class PromisingSubsetStream {
public:
  std::optional<RemovalSet> next();

  /// True when some candidate has min_rmv == 0, degenerating the stream to
  /// full enumeration of all removal sets up to size n.
  bool full_enumeration() const { return full_enumeration_; }

  std::uint64_t emitted() const { return emitted_; }

private:
  friend PromisingSubsetStream gen_promising_subsets(
      const LabeledDataset& T, int n, const NeighborOrder& order, Label y,
      const MinRemovalProfile& profile, const std::vector<int>& k_candidates);

  struct Cand {
    std::vector<ElementId> prefix;      // (K+n)-neighborhood, sorted by id
    std::vector<ElementId> complement;  // remaining ids, sorted
    int min_rmv = 0;
  };

  // Lexicographic fixed-size index combination over a pool.
  struct Comb {
    std::vector<int> idx;
    std::size_t pool = 0;
    bool active = false;
    void reset(std::size_t pool_size, int r);
    bool advance();
  };

  bool emit_if_new(const RemovalSet& r);
  bool produce_next_raw(RemovalSet& out);
  bool seek_phase_b();
  void advance_phase_b_cursor();

  int n_ = 0;
  std::vector<Cand> cands_;  // coalesced, ascending neighborhood size
  bool full_enumeration_ = false;
  std::uint64_t emitted_ = 0;

  // Iteration state: size, phase (0 = pure neighborhood, 1 = mixed),
  // candidate index, |R_1|, and the two running combinations.
  int size_ = 1;
  int phase_ = 0;
  bool phase_a_init_ = false;
  std::size_t phase_a_cand_ = 0;
  std::size_t cand_i_ = 0;
  int r1_ = 0;
  Comb comb_a_, comb1_, comb2_;

  std::set<RemovalSet> seen_;
};

/// Builds the stream for x's query, its full-T ranking, the default label y
/// and the min_rmv profile. Candidates with identical (neighborhood,
/// min_rmv) constraints are coalesced; infeasible candidates are dropped.
PromisingSubsetStream gen_promising_subsets(
    const LabeledDataset& T, int n, const NeighborOrder& order, Label y,
    const MinRemovalProfile& profile, const std::vector<int>& k_candidates);

}  // namespace knnr
