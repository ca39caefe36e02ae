#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "knnr/certify.hpp"
#include "knnr/driver.hpp"

using namespace knnr;

namespace {
constexpr Label kStar = 1;
constexpr Label kTriangle = 2;
}  // namespace

TEST_CASE("quick certify accepts a solidly homogeneous neighborhood") {
  // n=2, candidates {1,3}: the five nearest of x are all stars, so removing
  // two stars from any extended neighborhood cannot promote triangle.
  const auto T = tu::dataset_1d({{0, 1.0, kStar},
                                 {1, 1.1, kStar},
                                 {2, 1.2, kStar},
                                 {3, 1.3, kStar},
                                 {4, 1.4, kStar},
                                 {5, 9.0, kTriangle},
                                 {6, 9.1, kTriangle}});
  const CertifyOutcome oc = quick_certify(T, 2, {0.0}, {1, 3});
  CHECK(oc.certified);
  CHECK_FALSE(oc.failing_k.has_value());
  CHECK_FALSE(oc.failing_check.has_value());
}

TEST_CASE("quick certify rejects when removal can flip the nearest label") {
  // n=2, candidates {1,3}: nearest three are {star, triangle, triangle};
  // deleting 2 stars from the (1+2)-neighborhood leaves triangles only.
  const auto T = tu::dataset_1d({{0, 1.0, kStar},
                                 {1, 1.1, kTriangle},
                                 {2, 1.2, kTriangle},
                                 {3, 1.3, kStar},
                                 {4, 1.4, kStar},
                                 {5, 1.5, kTriangle}});
  const CertifyOutcome oc = quick_certify(T, 2, {0.0}, {1, 3});
  CHECK_FALSE(oc.certified);
  CHECK(oc.failing_k == 1);
  CHECK(oc.failing_check == CheckKind::Direct);
}

TEST_CASE("homogeneous dataset certifies for any in-range budget") {
  const auto T = tu::dataset_1d(
      {{0, 0.0, 3}, {1, 1.0, 3}, {2, 2.0, 3}, {3, 3.0, 3}, {4, 4.0, 3}});
  CHECK(quick_certify(T, 2, {0.5}, {1, 3}).certified);
}

TEST_CASE("n=0 reduces to candidate agreement") {
  // Candidates disagree: 1-NN says star, 3-NN says triangle.
  const auto T = tu::dataset_1d({{0, 1.0, kStar},
                                 {1, 1.1, kTriangle},
                                 {2, 1.2, kTriangle},
                                 {3, 5.0, kStar}});
  const CertifyOutcome disagree = quick_certify(T, 0, {0.0}, {1, 3});
  CHECK_FALSE(disagree.certified);
  CHECK(disagree.failing_check == CheckKind::Indirect);

  // Candidates agree: both prefixes vote star.
  const auto U = tu::dataset_1d({{0, 1.0, kStar},
                                 {1, 1.1, kStar},
                                 {2, 1.2, kTriangle},
                                 {3, 5.0, kTriangle}});
  CHECK(quick_certify(U, 0, {0.0}, {1, 3}).certified);
}

TEST_CASE("monotonicity in the poison budget") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const auto T = tu::random_instance(rng);
    const FeatureVec x = tu::random_query(rng);
    for (int n = 3; n >= 1; --n) {
      if (quick_certify(T, n, x, {1, 3, 5}).certified) {
        CHECK(quick_certify(T, n - 1, x, {1, 3, 5}).certified);
      }
    }
  }
}

TEST_CASE("direct check depends only on the neighborhood counter") {
  // Two datasets with identical (K+n)-neighborhood label counters for x but
  // different far-away elements give identical outcomes.
  const auto A = tu::dataset_1d({{0, 1.0, kStar},
                                 {1, 1.1, kStar},
                                 {2, 1.2, kTriangle},
                                 {3, 50.0, kTriangle},
                                 {4, 51.0, kTriangle}});
  const auto B = tu::dataset_1d({{0, 1.0, kStar},
                                 {1, 1.1, kStar},
                                 {2, 1.2, kTriangle},
                                 {7, 80.0, kStar},
                                 {9, 90.0, kStar}});
  const CertifyOutcome a = quick_certify(A, 1, {0.0}, {1});
  const CertifyOutcome b = quick_certify(B, 1, {0.0}, {1});
  CHECK(a.certified == b.certified);
}

TEST_CASE("soundness against the exhaustive baseline on small instances") {
  std::mt19937_64 rng(211);
  int certified_seen = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto T = tu::random_instance(rng, 15, 24, 2);
    const FeatureVec x = tu::random_query(rng);
    RobustnessQuery q;
    q.x = x;
    q.n = 1;
    q.cfg.folds = 5;
    q.cfg.k_candidates = {1, 3};
    q.cfg.partition_seed = trial;
    q.time_limit_secs = 600.0;
    if (quick_certify(T, q.n, x, q.cfg.k_candidates).certified) {
      ++certified_seen;
      CHECK(baseline_decide(T, q).outcome == Outcome::Certified);
    }
  }
  CHECK(certified_seen > 0);  // the corpus must exercise the claim
}
