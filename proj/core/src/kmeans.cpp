#include "fuzzyload/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "fuzzyload/rng.hpp"

namespace fuzzyload {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

std::size_t nearest(std::span<const double> point, const Matrix& centroids) {
  std::size_t best = 0;
  double best_d = squared_distance(point, centroids.row(0));
  for (std::size_t i = 1; i < centroids.rows(); ++i) {
    const double d = squared_distance(point, centroids.row(i));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<std::size_t> seeding_rows(const ProfileMatrix& x, std::size_t c, std::uint64_t seed) {
  const std::size_t n = x.size();
  if (c == 0) throw std::invalid_argument("cluster count must be at least 1");
  if (n < c) {
    throw std::invalid_argument("fewer points than clusters (" + std::to_string(n) + " < " +
                                std::to_string(c) + ")");
  }
  Rng rng(seed);
  std::vector<std::size_t> picked;
  std::vector<bool> used(n, false);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  auto take = [&](std::size_t k) {
    picked.push_back(k);
    used[k] = true;
    for (std::size_t q = 0; q < n; ++q) {
      d2[q] = std::min(d2[q], squared_distance(x.values.row(q), x.values.row(k)));
    }
  };

  take(static_cast<std::size_t>(rng.below(n)));
  while (picked.size() < c) {
    double total = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      if (!used[q]) total += d2[q];
    }
    if (total > 0.0) {
      // D^2 sampling: walk the cumulative weights.
      const double target = rng.uniform() * total;
      double acc = 0.0;
      std::size_t chosen = n;
      for (std::size_t q = 0; q < n; ++q) {
        if (used[q] || d2[q] == 0.0) continue;
        acc += d2[q];
        chosen = q;
        if (acc > target) break;
      }
      take(chosen);
    } else {
      // Every remaining row duplicates a chosen one: pick uniformly among them.
      std::size_t r = static_cast<std::size_t>(rng.below(n - picked.size()));
      for (std::size_t q = 0; q < n; ++q) {
        if (used[q]) continue;
        if (r-- == 0) {
          take(q);
          break;
        }
      }
    }
  }
  return picked;
}

Matrix kmeans_initial_centroids(const ProfileMatrix& x, std::size_t c, std::uint64_t seed) {
  Matrix centroids;
  for (std::size_t k : seeding_rows(x, c, seed)) {
    centroids.append_row(x.values.row(k));
  }
  return centroids;
}

KMeansResult kmeans_baseline(const ProfileMatrix& x, std::size_t c, std::uint64_t seed,
                             std::size_t max_iter) {
  const Matrix& points = x.values;
  const std::size_t n = points.rows();
  const std::size_t dim = points.cols();

  KMeansResult r;
  r.centroids = kmeans_initial_centroids(x, c, seed);
  r.assignments.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) r.assignments[k] = nearest(points.row(k), r.centroids);

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    r.iterations = iter;

    // Update step: means of assigned points.
    Matrix sums(c, dim);
    std::vector<std::size_t> counts(c, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t a = r.assignments[k];
      ++counts[a];
      auto row = sums.row(a);
      const auto p = points.row(k);
      for (std::size_t j = 0; j < dim; ++j) row[j] += p[j];
    }
    Matrix next(c, dim);
    for (std::size_t i = 0; i < c; ++i) {
      auto dst = next.row(i);
      if (counts[i] == 0) {
        std::copy_n(r.centroids.row(i).begin(), dim, dst.begin());
        continue;
      }
      const auto src = sums.row(i);
      for (std::size_t j = 0; j < dim; ++j) dst[j] = src[j] / static_cast<double>(counts[i]);
    }

    // Reseed empty clusters with the point farthest from its own centroid.
    bool reseeded = false;
    for (std::size_t i = 0; i < c; ++i) {
      if (counts[i] != 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (counts[r.assignments[k]] <= 1) continue;  // do not empty another cluster
        const double d = squared_distance(points.row(k), next.row(r.assignments[k]));
        if (d > far_d) {
          far_d = d;
          far = k;
        }
      }
      if (far_d < 0.0) continue;
      --counts[r.assignments[far]];
      r.assignments[far] = i;
      counts[i] = 1;
      reseeded = true;
      std::copy_n(points.row(far).begin(), dim, next.row(i).begin());
    }
    r.centroids = std::move(next);

    // Assignment step.
    bool changed = reseeded;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t a = nearest(points.row(k), r.centroids);
      if (a != r.assignments[k]) {
        r.assignments[k] = a;
        changed = true;
      }
    }
    if (!changed) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace fuzzyload
