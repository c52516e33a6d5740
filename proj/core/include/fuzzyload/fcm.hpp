#pragma once

// Fuzzy C Means over fixed-width profile vectors.
//
// Objective: J_m = sum_k sum_i u[k][i]^m * ||x_k - v_i||^2 (squared Euclidean).
// Centroid update: v_i = sum_k u[k][i]^m x_k / sum_k u[k][i]^m.
// Membership update: u[k][i] = 1 / sum_j (d_ki / d_kj)^(2 / (m - 1)).
//
// A point at zero distance from one or more centroids splits its membership
// equally among those centroids.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fuzzyload/matrix.hpp"

namespace fuzzyload {

// n profiles (rows) with their household ids.
struct ProfileMatrix {
  Matrix values;
  std::vector<std::string> household_ids;

  [[nodiscard]] std::size_t size() const noexcept { return values.rows(); }
  [[nodiscard]] std::size_t dim() const noexcept { return values.cols(); }
};

struct FcmConfig {
  std::size_t clusters = 9;
  double fuzzifier = 2.0;
  double tolerance = 1e-6;
  std::size_t max_iter = 300;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless clusters >= 1, fuzzifier > 1,
  // tolerance > 0 and max_iter >= 1.
  void validate() const;
};

// n x c membership matrix; rows are row-stochastic.
struct FuzzyPartition {
  Matrix u;

  [[nodiscard]] std::size_t points() const noexcept { return u.rows(); }
  [[nodiscard]] std::size_t clusters() const noexcept { return u.cols(); }

  friend bool operator==(const FuzzyPartition&, const FuzzyPartition&) = default;
};

struct ClusterModel {
  Matrix centroids;  // c x dim
  double fuzzifier = 2.0;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<bool> empty_clusters;  // cluster had zero total weight at some update

  [[nodiscard]] std::size_t clusters() const noexcept { return centroids.rows(); }

  friend bool operator==(const ClusterModel&, const ClusterModel&) = default;
};

struct FcmResult {
  ClusterModel model;
  FuzzyPartition partition;
  // J_m after each iteration's membership update, in iteration order.
  std::vector<double> objective_trace;
};

// Each row: c independent uniform(0,1] draws divided by their sum.
// Throws std::invalid_argument when n < c or c == 0.
FuzzyPartition init_partition(std::size_t n, std::size_t c, std::uint64_t seed);

struct CentroidUpdate {
  Matrix centroids;
  std::vector<bool> empty;
};

// u^m-weighted means. A cluster whose total weight is zero keeps its row from
// `previous` and is flagged empty.
CentroidUpdate update_centroids(const Matrix& x, const FuzzyPartition& u, double m,
                                const Matrix& previous);

FuzzyPartition update_memberships(const Matrix& x, const Matrix& centroids, double m);

// Single-row membership update.
std::vector<double> memberships_for(std::span<const double> point, const Matrix& centroids,
                                    double m);

double objective(const Matrix& x, const Matrix& centroids, const FuzzyPartition& u, double m);

// Alternates centroid and membership updates from a seeded random partition
// until max |delta U| < tolerance or max_iter is reached.
// Throws std::invalid_argument when n < c and NumericalError on non-finite values.
FcmResult run_fcm(const ProfileMatrix& x, const FcmConfig& cfg);

// Same iteration, started from given centroids instead of a random partition
// (memberships are computed from them first). cfg.seed is unused.
FcmResult run_fcm(const ProfileMatrix& x, const FcmConfig& cfg, const Matrix& initial_centroids);

// Per-row argmax; ties go to the lowest cluster index.
std::vector<std::size_t> harden(const FuzzyPartition& u);

// Memberships of a new profile against a fixed model.
std::vector<double> membership_of(std::span<const double> profile, const ClusterModel& model);

}  // namespace fuzzyload
