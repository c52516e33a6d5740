#include <gtest/gtest.h>

#include <set>

#include "fuzzyload/kmeans.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace fuzzyload {
namespace {

ProfileMatrix profiles_from(const std::vector<std::vector<double>>& rows) {
  ProfileMatrix x{Matrix::from_rows(rows), {}};
  x.household_ids.assign(rows.size(), "h");
  return x;
}

TEST(SeedingRows, DistinctAndDeterministic) {
  const auto data = testing::make_households(20, 4, 0.05, 3);
  const auto a = seeding_rows(data.profiles, 7, 5);
  EXPECT_EQ(a, seeding_rows(data.profiles, 7, 5));
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 7u);
  for (auto i : a) EXPECT_LT(i, 20u);
  EXPECT_THROW(seeding_rows(profiles_from({{0.0}, {1.0}, {2.0}}), 4, 1), std::invalid_argument);
}

TEST(SeedingRows, DuplicateRowsStillGiveDistinctIndices) {
  const auto x = profiles_from({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.1, 0.9}});
  const auto a = seeding_rows(x, 4, 2);
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 4u);
}

TEST(KMeans, SaturatedClusteringPutsEachPointOnItsOwnCentroid) {
  const auto x = profiles_from({{0.1, 0.2}, {0.5, 0.9}, {0.3, 0.3}, {1.0, 0.0}});
  const auto r = kmeans_baseline(x, 4, 8, 100);
  EXPECT_EQ(std::set<std::size_t>(r.assignments.begin(), r.assignments.end()).size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(r.centroids(r.assignments[k], j), x.values(k, j));
    }
  }
}

TEST(KMeans, RecoversTwoBlobs) {
  const auto x = profiles_from({{0.0}, {0.1}, {0.05}, {0.9}, {1.0}, {0.95}});
  const std::vector<std::size_t> truth = {0, 0, 0, 1, 1, 1};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = kmeans_baseline(x, 2, seed, 100);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(testing::best_label_agreement(truth, r.assignments, 2), 1.0);
  }
}

TEST(KMeans, DeterministicInSeed) {
  const auto data = testing::make_households(50, 5, 0.05, 4);
  EXPECT_EQ(kmeans_baseline(data.profiles, 5, 3, 100), kmeans_baseline(data.profiles, 5, 3, 100));
}

TEST(KMeans, RejectsTooFewPoints) {
  EXPECT_THROW(kmeans_baseline(profiles_from({{0.0}}), 2, 1, 10), std::invalid_argument);
}

TEST(KMeans, ReseedsEmptyClusters) {
  // Duplicate points make two initial centroids coincide; the tie sends all
  // their points to the lower index and the other cluster must be reseeded.
  const auto x = profiles_from({{0.0}, {0.0}, {0.0}, {1.0}, {1.2}});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = kmeans_baseline(x, 3, seed, 100);
    std::set<std::size_t> used(r.assignments.begin(), r.assignments.end());
    EXPECT_EQ(used.size(), 3u) << "seed " << seed;
  }
}

TEST(KMeans, FcmNearFuzzifierOneMatchesFromSameSeeds) {
  const auto data = testing::make_households(60, 4, 0.05, 21);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto km = kmeans_baseline(data.profiles, 4, seed, 300);
    FcmConfig cfg;
    cfg.clusters = 4;
    cfg.fuzzifier = 1.05;
    const auto fcm = run_fcm(data.profiles, cfg, kmeans_initial_centroids(data.profiles, 4, seed));
    EXPECT_GE(testing::best_label_agreement(km.assignments, harden(fcm.partition), 4), 0.95);
  }
}

}  // namespace
}  // namespace fuzzyload
