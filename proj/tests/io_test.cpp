#include <gtest/gtest.h>

#include <sstream>

#include "fuzzyload/error.hpp"
#include "fuzzyload/io.hpp"
#include "fuzzyload/rng.hpp"
#include "synthetic.hpp"

namespace fuzzyload::io {
namespace {

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Profiles, HeaderAndRoundTrip) {
  DailyProfile p{"h1", Season::Summer, DayType::Weekday, {}, 4};
  for (std::size_t h = 0; h < 24; ++h) p.values[h] = static_cast<double>(h) / 23.0;
  std::ostringstream out;
  write_profiles(out, {p});
  EXPECT_EQ(first_line(out.str()).substr(0, 43), "household_id,season,day_type,day_count,h00,");
  EXPECT_NE(first_line(out.str()).find(",h23"), std::string::npos);
  std::istringstream in(out.str());
  const auto back = read_profiles(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0], p);
}

TEST(Profiles, RejectsOutOfRangeValues) {
  std::ostringstream out;
  DailyProfile p{"h1", Season::Winter, DayType::Weekend, {}, 1};
  write_profiles(out, {p});
  std::string text = out.str();
  text.replace(text.rfind(",0"), 2, ",1.5");
  std::istringstream in(text);
  EXPECT_THROW(read_profiles(in), ParseError);
}

TEST(ModelAndMemberships, RoundTripBitExactly) {
  const auto data = testing::make_households(20, 3, 0.05, 2);
  FcmConfig cfg;
  cfg.clusters = 3;
  const auto r = run_fcm(data.profiles, cfg);

  std::ostringstream model_out, member_out;
  write_model(model_out, r.model);
  write_memberships(member_out, data.profiles.household_ids, r.partition);
  EXPECT_EQ(count_lines(model_out.str()), 4u);
  EXPECT_EQ(first_line(member_out.str()), "household_id,u0,u1,u2");

  std::istringstream model_in(model_out.str()), member_in(member_out.str());
  EXPECT_EQ(read_model_centroids(model_in), r.model.centroids);
  const auto table = read_memberships(member_in);
  EXPECT_EQ(table.household_ids, data.profiles.household_ids);
  EXPECT_EQ(table.partition, r.partition);
}

TEST(Memberships, HeaderOnlyFileHasZeroRows) {
  std::istringstream in("household_id,u0,u1\n");
  const auto table = read_memberships(in);
  EXPECT_EQ(table.partition.points(), 0u);
  EXPECT_EQ(table.partition.clusters(), 2u);
}

TEST(RunMetadata, RoundTrip) {
  FcmConfig cfg{9, 2.0, 1e-6, 300, 18446744073709551615ull};
  ClusterModel model;
  model.iterations = 42;
  model.objective = 1.0 / 3.0;
  model.converged = true;
  model.empty_clusters = {false, true};
  std::ostringstream out;
  write_run_metadata(out, cfg, model);
  std::istringstream in(out.str());
  const auto meta = read_run_metadata(in);
  EXPECT_EQ(meta.config.clusters, 9u);
  EXPECT_EQ(meta.config.fuzzifier, 2.0);
  EXPECT_EQ(meta.config.tolerance, 1e-6);
  EXPECT_EQ(meta.config.max_iter, 300u);
  EXPECT_EQ(meta.config.seed, 18446744073709551615ull);
  EXPECT_EQ(meta.iterations, 42u);
  EXPECT_EQ(meta.objective, 1.0 / 3.0);
  EXPECT_TRUE(meta.converged);
  EXPECT_EQ(meta.empty_clusters, std::vector<std::size_t>{1});

  std::istringstream bad("{\"c\": 3}");
  EXPECT_THROW(read_run_metadata(bad), DataError);
}

TEST(Offers, ParseAndValidate) {
  std::ostringstream text;
  text << "cluster_id,label,p00";
  for (int h = 1; h < 24; ++h) text << ",p" << (h < 10 ? "0" : "") << h;
  text << '\n';
  const std::string header = text.str();
  std::string rows;
  for (int c : {1, 0}) {
    rows += std::to_string(c) + ",offer " + std::to_string(c);
    for (int h = 0; h < 24; ++h) rows += "," + std::to_string(0.1 * (c + 1));
    rows += '\n';
  }
  std::istringstream in(header + rows);
  const auto offers = read_offers(in);
  EXPECT_EQ(offers.size(), 2u);
  EXPECT_EQ(offers[1].label, "offer 1");

  std::istringstream missing(header + rows.substr(0, rows.find('\n') + 1));  // only cluster 1
  EXPECT_THROW(read_offers(missing), DataError);
}

TEST(Usage, RejectsNegative) {
  std::string text = "household_id";
  for (int h = 0; h < 24; ++h) text += std::string(",h") + (h < 10 ? "0" : "") + std::to_string(h);
  text += "\nh1";
  for (int h = 0; h < 24; ++h) text += h == 5 ? ",-1" : ",1";
  text += '\n';
  std::istringstream in(text);
  EXPECT_THROW(read_usage(in), DataError);
}

TEST(DriftReport, Layout) {
  DriftReport r;
  r.household_id = "h1";
  r.target_cluster = 1;
  r.trajectory = {{"2024-01", {0.8, 0.2}}, {"2024-02", {0.5, 0.5}}};
  r.deltas = {0.3};
  r.l1_steps = {0.6};
  r.net_progress = 0.3;
  std::ostringstream out;
  write_drift_report(out, {r}, 2, false);
  EXPECT_EQ(out.str(),
            "household_id,period,u0,u1,target_delta\n"
            "h1,2024-01,0.80000000000000004,0.20000000000000001,0\n"
            "h1,2024-02,0.5,0.5,0.29999999999999999\n");
  std::ostringstream with_l1;
  write_drift_report(with_l1, {r}, 2, true);
  EXPECT_EQ(first_line(with_l1.str()), "household_id,period,u0,u1,target_delta,l1_step");
  std::ostringstream summary;
  write_drift_summary(summary, {r});
  EXPECT_EQ(summary.str(), "household_id,net_progress\nh1,0.29999999999999999\n");
}

TEST(PlotExport, CentroidCurvesAreLongForm) {
  std::ostringstream out;
  write_centroid_curves(out, Matrix(9, 24, 0.5));
  EXPECT_EQ(count_lines(out.str()), 1u + 216u);
  EXPECT_EQ(first_line(out.str()), "cluster_id,hour,value");
}

TEST(PlotExport, MembershipBarsListEveryCluster) {
  const std::vector<double> row = {0.4, 0.3, 0.15, 0.1, 0.05, 0, 0, 0, 0};
  std::ostringstream out;
  write_membership_bars(out, row);
  EXPECT_EQ(count_lines(out.str()), 10u);
  EXPECT_EQ(count_at_or_above(row, 0.05), 5u);

  std::vector<double> one_hot(9, 0.0);
  one_hot[4] = 1.0;
  EXPECT_EQ(count_at_or_above(one_hot, 1e-300), 1u);
}

}  // namespace
}  // namespace fuzzyload::io
