#include "fuzzyload/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fuzzyload/error.hpp"
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

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void require_enough_points(std::size_t n, std::size_t c) {
  if (c == 0) throw std::invalid_argument("cluster count must be at least 1");
  if (n < c) {
    throw std::invalid_argument("fewer points than clusters (" + std::to_string(n) + " < " +
                                std::to_string(c) + ")");
  }
}

Matrix column_mean_rows(const Matrix& x, std::size_t copies) {
  Matrix out(copies, x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < x.rows(); ++k) sum += x(k, j);
    const double mean = x.rows() ? sum / static_cast<double>(x.rows()) : 0.0;
    for (std::size_t i = 0; i < copies; ++i) out(i, j) = mean;
  }
  return out;
}

FcmResult iterate(const Matrix& x, const FcmConfig& cfg, FuzzyPartition u, Matrix centroids) {
  const std::size_t c = cfg.clusters;
  FcmResult result;
  result.model.fuzzifier = cfg.fuzzifier;
  result.model.empty_clusters.assign(c, false);

  for (std::size_t iter = 1; iter <= cfg.max_iter; ++iter) {
    auto update = update_centroids(x, u, cfg.fuzzifier, centroids);
    centroids = std::move(update.centroids);
    for (std::size_t i = 0; i < c; ++i) {
      if (update.empty[i]) result.model.empty_clusters[i] = true;
    }
    if (!all_finite(centroids.values())) {
      throw NumericalError("non-finite centroid value", iter);
    }

    FuzzyPartition next = update_memberships(x, centroids, cfg.fuzzifier);
    if (!all_finite(next.u.values())) {
      throw NumericalError("non-finite membership value", iter);
    }

    double delta = 0.0;
    const auto before = u.u.values();
    const auto after = next.u.values();
    for (std::size_t k = 0; k < before.size(); ++k) {
      delta = std::max(delta, std::abs(after[k] - before[k]));
    }
    u = std::move(next);

    const double j = objective(x, centroids, u, cfg.fuzzifier);
    if (!std::isfinite(j)) throw NumericalError("non-finite objective", iter);
    result.objective_trace.push_back(j);
    result.model.iterations = iter;
    result.model.objective = j;
    if (delta < cfg.tolerance) {
      result.model.converged = true;
      break;
    }
  }

  result.model.centroids = std::move(centroids);
  result.partition = std::move(u);
  return result;
}

}  // namespace

void FcmConfig::validate() const {
  if (clusters < 1) throw std::invalid_argument("clusters must be >= 1");
  if (!(fuzzifier > 1.0) || !std::isfinite(fuzzifier)) {
    throw std::invalid_argument("fuzzifier must be a finite value > 1");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

FuzzyPartition init_partition(std::size_t n, std::size_t c, std::uint64_t seed) {
  require_enough_points(n, c);
  Rng rng(seed);
  FuzzyPartition p{Matrix(n, c)};
  for (std::size_t k = 0; k < n; ++k) {
    auto row = p.u.row(k);
    double sum = 0.0;
    for (auto& v : row) {
      v = rng.uniform_open_closed();
      sum += v;
    }
    for (auto& v : row) v /= sum;
  }
  return p;
}

CentroidUpdate update_centroids(const Matrix& x, const FuzzyPartition& u, double m,
                                const Matrix& previous) {
  const std::size_t n = x.rows();
  const std::size_t c = u.clusters();
  if (u.points() != n) {
    throw std::invalid_argument("update_centroids: partition has " + std::to_string(u.points()) +
                                " rows for " + std::to_string(n) + " points");
  }
  if (previous.rows() != c || previous.cols() != x.cols()) {
    throw std::invalid_argument("update_centroids: previous centroids have wrong shape");
  }

  CentroidUpdate out{Matrix(c, x.cols()), std::vector<bool>(c, false)};
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < c; ++i) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      weights[k] = std::pow(u.u(k, i), m);
      total += weights[k];
    }
    auto centroid = out.centroids.row(i);
    if (!(total > 0.0)) {
      std::copy_n(previous.row(i).begin(), x.cols(), centroid.begin());
      out.empty[i] = true;
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto point = x.row(k);
      for (std::size_t j = 0; j < x.cols(); ++j) centroid[j] += weights[k] * point[j];
    }
    for (auto& v : centroid) v /= total;
  }
  return out;
}

std::vector<double> memberships_for(std::span<const double> point, const Matrix& centroids,
                                    double m) {
  const std::size_t c = centroids.rows();
  if (c == 0) throw std::invalid_argument("memberships_for: no centroids");
  if (point.size() != centroids.cols()) {
    throw std::invalid_argument("memberships_for: profile width " + std::to_string(point.size()) +
                                " does not match centroid width " +
                                std::to_string(centroids.cols()));
  }

  std::vector<double> d2(c);
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < c; ++i) {
    d2[i] = squared_distance(point, centroids.row(i));
    if (d2[i] == 0.0) ++zeros;
  }

  std::vector<double> u(c, 0.0);
  if (zeros > 0) {
    const double share = 1.0 / static_cast<double>(zeros);
    for (std::size_t i = 0; i < c; ++i) {
      if (d2[i] == 0.0) u[i] = share;
    }
    return u;
  }

  // u_i = 1 / sum_j (d2_i / d2_j)^(1/(m-1)) = w_i / sum_j w_j with
  // w_j = (d2_min / d2_j)^(1/(m-1)) in (0, 1], which cannot overflow.
  const double exponent = 1.0 / (m - 1.0);
  const double d2_min = *std::min_element(d2.begin(), d2.end());
  double total = 0.0;
  for (std::size_t i = 0; i < c; ++i) {
    u[i] = std::pow(d2_min / d2[i], exponent);
    total += u[i];
  }
  for (auto& v : u) v /= total;
  return u;
}

FuzzyPartition update_memberships(const Matrix& x, const Matrix& centroids, double m) {
  FuzzyPartition p{Matrix(x.rows(), centroids.rows())};
  for (std::size_t k = 0; k < x.rows(); ++k) {
    const auto row = memberships_for(x.row(k), centroids, m);
    std::copy(row.begin(), row.end(), p.u.row(k).begin());
  }
  return p;
}

double objective(const Matrix& x, const Matrix& centroids, const FuzzyPartition& u, double m) {
  if (u.points() != x.rows() || u.clusters() != centroids.rows() ||
      centroids.cols() != x.cols()) {
    throw std::invalid_argument("objective: shape mismatch");
  }
  double j = 0.0;
  for (std::size_t k = 0; k < x.rows(); ++k) {
    for (std::size_t i = 0; i < centroids.rows(); ++i) {
      const double w = u.u(k, i);
      if (w == 0.0) continue;
      j += std::pow(w, m) * squared_distance(x.row(k), centroids.row(i));
    }
  }
  return j;
}

FcmResult run_fcm(const ProfileMatrix& x, const FcmConfig& cfg) {
  cfg.validate();
  require_enough_points(x.size(), cfg.clusters);
  auto u = init_partition(x.size(), cfg.clusters, cfg.seed);
  return iterate(x.values, cfg, std::move(u), column_mean_rows(x.values, cfg.clusters));
}

FcmResult run_fcm(const ProfileMatrix& x, const FcmConfig& cfg, const Matrix& initial_centroids) {
  cfg.validate();
  require_enough_points(x.size(), cfg.clusters);
  if (initial_centroids.rows() != cfg.clusters || initial_centroids.cols() != x.dim()) {
    throw std::invalid_argument("run_fcm: initial centroids have wrong shape");
  }
  auto u = update_memberships(x.values, initial_centroids, cfg.fuzzifier);
  return iterate(x.values, cfg, std::move(u), initial_centroids);
}

std::vector<std::size_t> harden(const FuzzyPartition& u) {
  std::vector<std::size_t> out(u.points(), 0);
  for (std::size_t k = 0; k < u.points(); ++k) {
    const auto row = u.u.row(k);
    // max_element returns the first maximum, which is the tie-break we want.
    out[k] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

std::vector<double> membership_of(std::span<const double> profile, const ClusterModel& model) {
  return memberships_for(profile, model.centroids, model.fuzzifier);
}

}  // namespace fuzzyload
