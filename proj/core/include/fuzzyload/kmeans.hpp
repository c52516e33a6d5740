#pragma once

// Hard K-means (Lloyd's algorithm) baseline for comparison with FCM.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fuzzyload/fcm.hpp"
#include "fuzzyload/matrix.hpp"

namespace fuzzyload {

struct KMeansResult {
  Matrix centroids;
  std::vector<std::size_t> assignments;
  std::size_t iterations = 0;
  bool converged = false;  // assignments stopped changing before max_iter

  friend bool operator==(const KMeansResult&, const KMeansResult&) = default;
};

// c distinct row indices chosen by k-means++ seeding: the first uniformly,
// each further row with probability proportional to its squared distance to
// the nearest row already chosen. Throws std::invalid_argument when n < c or
// c == 0.
std::vector<std::size_t> seeding_rows(const ProfileMatrix& x, std::size_t c, std::uint64_t seed);

// Initial centroids are the rows picked by seeding_rows(x, c, seed).
// An emptied cluster is reseeded with the point farthest from its own
// centroid. Nearest-centroid ties go to the lowest index.
// Throws std::invalid_argument when n < c or c == 0.
KMeansResult kmeans_baseline(const ProfileMatrix& x, std::size_t c, std::uint64_t seed,
                             std::size_t max_iter);

// The rows chosen by seeding_rows, in cluster order.
Matrix kmeans_initial_centroids(const ProfileMatrix& x, std::size_t c, std::uint64_t seed);

}  // namespace fuzzyload
