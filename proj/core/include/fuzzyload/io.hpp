#pragma once

// Readers and writers for every file the toolkit exchanges. All real values
// are written with 17 significant digits so they read back bit-exactly.
//
//   readings        household_id,timestamp,kwh                  (see ingest.hpp)
//   profiles        household_id,season,day_type,day_count,h00..h23
//   model           cluster_id,h00..h23
//   memberships     household_id,u0..u{c-1}
//   run metadata    JSON: c, m, tol, max_iter, seed, iterations, objective, converged
//   offers          cluster_id,label,p00..p23
//   personal tariff household_id,p00..p23
//   usage           household_id,h00..h23   (kWh per hour)
//   bills           household_id,amount
//   drift report    household_id,period,u0..u{c-1},target_delta[,l1_step]
//   drift summary   household_id,net_progress
//   centroid curves cluster_id,hour,value
//   membership bars cluster_id,membership

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "fuzzyload/drift.hpp"
#include "fuzzyload/fcm.hpp"
#include "fuzzyload/ingest.hpp"
#include "fuzzyload/tariff.hpp"

namespace fuzzyload::io {

void write_profiles(std::ostream& out, const std::vector<DailyProfile>& profiles);
std::vector<DailyProfile> read_profiles(std::istream& in);

// Stacks profiles into a matrix, preserving order.
ProfileMatrix to_profile_matrix(const std::vector<DailyProfile>& profiles);

void write_model(std::ostream& out, const ClusterModel& model);
// Centroid rows in cluster order; ids must be 0..c-1.
Matrix read_model_centroids(std::istream& in);

struct MembershipTable {
  std::vector<std::string> household_ids;
  FuzzyPartition partition;
};

void write_memberships(std::ostream& out, const std::vector<std::string>& household_ids,
                       const FuzzyPartition& partition);
// An input with only a header yields zero rows; the header fixes c.
MembershipTable read_memberships(std::istream& in);

struct RunMetadata {
  FcmConfig config;
  std::size_t iterations = 0;
  double objective = 0.0;
  bool converged = false;
  std::vector<std::size_t> empty_clusters;
};

void write_run_metadata(std::ostream& out, const FcmConfig& cfg, const ClusterModel& model);
RunMetadata read_run_metadata(std::istream& in);

OfferSet read_offers(std::istream& in);
void write_offers(std::ostream& out, const OfferSet& offers);
void write_personal_tariffs(std::ostream& out, const std::vector<PersonalTariff>& tariffs);

struct UsageRow {
  std::string household_id;
  std::array<double, kHoursPerDay> kwh{};
};
std::vector<UsageRow> read_usage(std::istream& in);

struct BillRow {
  std::string household_id;
  double amount = 0.0;
};
void write_bills(std::ostream& out, const std::vector<BillRow>& bills);

void write_ranking(std::ostream& out, const std::vector<RankedHousehold>& ranking);

// target_delta is 0 for a household's first period.
void write_drift_report(std::ostream& out, const std::vector<DriftReport>& reports,
                        std::size_t clusters, bool with_l1);
void write_drift_summary(std::ostream& out, const std::vector<DriftReport>& reports);

void write_centroid_curves(std::ostream& out, const Matrix& centroids);
void write_membership_bars(std::ostream& out, const std::vector<double>& membership);

// Number of entries >= threshold (presentational; the display threshold
// does not affect any algorithm).
std::size_t count_at_or_above(const std::vector<double>& membership, double threshold);

}  // namespace fuzzyload::io
