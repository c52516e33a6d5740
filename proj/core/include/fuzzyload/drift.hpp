#pragma once

// Membership trajectories against a frozen cluster model, and progress
// toward an operator-designated target cluster.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fuzzyload/fcm.hpp"
#include "fuzzyload/ingest.hpp"

namespace fuzzyload {

struct PeriodProfile {
  std::string household_id;
  std::string period_label;  // ordered lexicographically, e.g. "2024-01"
  std::vector<double> profile;
};

struct TrajectoryPoint {
  std::string period_label;
  std::vector<double> membership;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

using Trajectory = std::vector<TrajectoryPoint>;

// membership_of for every period, in period order. Throws
// std::invalid_argument on an empty list or labels that are not strictly
// increasing.
Trajectory membership_trajectory(const std::vector<PeriodProfile>& periods,
                                 const ClusterModel& model);

struct DriftReport {
  std::string household_id;
  std::size_t target_cluster = 0;
  Trajectory trajectory;
  std::vector<double> deltas;      // u_t[target] - u_{t-1}[target], t >= 1
  double net_progress = 0.0;       // u_last[target] - u_first[target]
  // Auxiliary: L1 distance between consecutive membership rows.
  std::vector<double> l1_steps;
};

// Throws std::invalid_argument when the trajectory is empty or target is out
// of range.
DriftReport green_progress(const Trajectory& trajectory, std::size_t target_cluster,
                           std::string household_id = {});

// "YYYY-MM" label of a date.
std::string month_label(const Date& date);

struct PeriodProfiles {
  // household_id -> profiles in period order; periods without a complete
  // day in the segment are absent.
  std::map<std::string, std::vector<PeriodProfile>> by_household;
  std::vector<Exclusion> skipped;  // (household, "period P: reason")
};

// Runs the ingest pipeline separately for each calendar month present in the
// readings (same segment and normalization rules).
PeriodProfiles monthly_period_profiles(const std::vector<MeterReading>& readings,
                                       const SegmentSpec& spec);

}  // namespace fuzzyload
