#include "fuzzyload/drift.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace fuzzyload {

Trajectory membership_trajectory(const std::vector<PeriodProfile>& periods,
                                 const ClusterModel& model) {
  if (periods.empty()) throw std::invalid_argument("membership_trajectory: no periods");
  Trajectory out;
  out.reserve(periods.size());
  for (std::size_t t = 0; t < periods.size(); ++t) {
    if (t > 0 && !(periods[t - 1].period_label < periods[t].period_label)) {
      throw std::invalid_argument("period labels not strictly increasing at `" +
                                  periods[t].period_label + "`");
    }
    out.push_back({periods[t].period_label, membership_of(periods[t].profile, model)});
  }
  return out;
}

DriftReport green_progress(const Trajectory& trajectory, std::size_t target_cluster,
                           std::string household_id) {
  if (trajectory.empty()) throw std::invalid_argument("green_progress: empty trajectory");
  const std::size_t c = trajectory.front().membership.size();
  if (target_cluster >= c) {
    throw std::invalid_argument("target cluster " + std::to_string(target_cluster) +
                                " out of range (c = " + std::to_string(c) + ")");
  }
  DriftReport r;
  r.household_id = std::move(household_id);
  r.target_cluster = target_cluster;
  r.trajectory = trajectory;
  for (std::size_t t = 1; t < trajectory.size(); ++t) {
    const auto& prev = trajectory[t - 1].membership;
    const auto& cur = trajectory[t].membership;
    if (cur.size() != c) throw std::invalid_argument("green_progress: ragged trajectory");
    r.deltas.push_back(cur[target_cluster] - prev[target_cluster]);
    double l1 = 0.0;
    for (std::size_t i = 0; i < c; ++i) l1 += std::abs(cur[i] - prev[i]);
    r.l1_steps.push_back(l1);
  }
  r.net_progress =
      trajectory.back().membership[target_cluster] - trajectory.front().membership[target_cluster];
  return r;
}

std::string month_label(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()));
  return buf;
}

PeriodProfiles monthly_period_profiles(const std::vector<MeterReading>& readings,
                                       const SegmentSpec& spec) {
  std::set<std::string> months;
  for (const auto& r : readings) {
    if (spec.matches(r.date)) months.insert(month_label(r.date));
  }

  PeriodProfiles out;
  for (const auto& label : months) {
    auto ingest = build_profiles(readings, spec,
                                 [&label](const Date& d) { return month_label(d) == label; });
    for (auto& p : ingest.profiles) {
      out.by_household[p.household_id].push_back(
          {p.household_id, label, std::vector<double>(p.values.begin(), p.values.end())});
    }
    for (auto& e : ingest.excluded) {
      out.skipped.push_back({e.household_id, "period " + label + ": " + e.reason});
    }
  }
  return out;
}

}  // namespace fuzzyload
