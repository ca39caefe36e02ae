#include "knnr/certify.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace knnr {

CertifyOutcome quick_certify(const LabeledDataset& T, int n,
                             const FeatureVec& x,
                             const std::vector<int>& k_candidates) {
  return quick_certify_ranked(T, build_neighbor_order(T, x), n, k_candidates);
}

CertifyOutcome quick_certify_ranked(const LabeledDataset& T,
                                    const NeighborOrder& order, int n,
                                    const std::vector<int>& k_candidates) {
  if (n < 0) throw std::invalid_argument("negative poison budget");
  const std::size_t m = order.ranked.size();
  std::set<Label> label_set;
  CertifyOutcome out;
  for (int k : k_candidates) {
    const std::size_t kk = std::min<std::size_t>(k, m);
    const Label y = freq(label_counter(T, nearest_ids(order, kk)));
    label_set.insert(y);

    // Direct influence: the most aggressive removal strategy deletes n
    // y-labeled elements from the (K+n)-neighborhood. K+n > |T| clamps to
    // the whole ranking.
    const std::size_t reach = std::min<std::size_t>(kk + n, m);
    const LabelCounter extended = label_counter(T, nearest_ids(order, reach));
    if (changes_from(extended.removed(y, n), y)) {
      out.certified = false;
      out.failing_k = k;
      out.failing_check = CheckKind::Direct;
      return out;
    }

    // Indirect influence: two candidate K values disagreeing on the label.
    if (label_set.size() > 1) {
      out.certified = false;
      out.failing_k = k;
      out.failing_check = CheckKind::Indirect;
      return out;
    }
  }
  out.certified = true;
  return out;
}

}  // namespace knnr
