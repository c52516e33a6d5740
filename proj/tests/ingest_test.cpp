#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fuzzyload/error.hpp"
#include "fuzzyload/ingest.hpp"
#include "fuzzyload/rng.hpp"
#include "synthetic.hpp"

namespace fuzzyload {
namespace {

using testing::ymd;

DayRecord full_day(const std::string& id, Date date, const std::vector<double>& cycle) {
  DayRecord d{id, date, {}};
  for (std::size_t h = 0; h < kHoursPerDay; ++h) d.values[h] = cycle[h % cycle.size()];
  return d;
}

std::vector<MeterReading> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_readings(in);
}

// ---- parse_readings ----

TEST(ParseReadings, MapsFieldsDirectly) {
  const auto r = parse("household_id,timestamp,kwh\nh1,2024-01-06T18:00,1.25\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].household_id, "h1");
  EXPECT_EQ(r[0].date, ymd(2024, 1, 6));
  EXPECT_EQ(r[0].hour, 18u);
  EXPECT_EQ(r[0].kwh, 1.25);
}

TEST(ParseReadings, NegativeEnergyNamesLine) {
  try {
    parse("household_id,timestamp,kwh\nh1,2024-01-06T17:00,1\nh1,2024-01-06T18:00,-1.0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("negative energy, line 3"), std::string::npos);
  }
}

TEST(ParseReadings, EmptyAfterHeader) {
  EXPECT_TRUE(parse("household_id,timestamp,kwh\n").empty());
}

TEST(ParseReadings, PreservesInputOrder) {
  const auto r = parse(
      "household_id,timestamp,kwh\nb,2024-01-06T01:00,1\na,2024-01-06T00:00,2\nb,2024-01-05T00:00,3\n");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].household_id, "b");
  EXPECT_EQ(r[1].household_id, "a");
  EXPECT_EQ(r[2].kwh, 3.0);
}

TEST(ParseReadings, DuplicateKeyIsAnError) {
  try {
    parse("household_id,timestamp,kwh\nh1,2024-01-06T18:00,1\nh1,2024-01-06T18:00,2\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("duplicate"), std::string::npos);
    EXPECT_NE(what.find("h1"), std::string::npos);
    EXPECT_NE(what.find("2024-01-06T18:00"), std::string::npos);
  }
}

TEST(ParseReadings, RejectsMalformedRows) {
  const std::string header = "household_id,timestamp,kwh\n";
  EXPECT_THROW(parse(header + "h1,2024-01-06T18:00\n"), ParseError);           // columns
  EXPECT_THROW(parse(header + "h1,2024-01-06T18:30,1\n"), ParseError);         // minutes
  EXPECT_THROW(parse(header + "h1,2024-01-06T24:00,1\n"), ParseError);         // hour
  EXPECT_THROW(parse(header + "h1,2023-02-29T01:00,1\n"), ParseError);         // date
  EXPECT_THROW(parse(header + "h1,2024-01-06 18:00,1\n"), ParseError);         // separator
  EXPECT_THROW(parse(header + "h1,2024-01-06T18:00,abc\n"), ParseError);       // number
  EXPECT_THROW(parse(header + "h1,2024-01-06T18:00,inf\n"), ParseError);       // finite
  EXPECT_THROW(parse(header + ",2024-01-06T18:00,1\n"), ParseError);           // id
  EXPECT_THROW(parse("id,ts,kwh\n"), ParseError);                              // header
  EXPECT_THROW(parse(""), ParseError);
}

// ---- segment_days ----

TEST(SegmentDays, SelectsSeasonAndDayType) {
  const SegmentSpec winter_weekend{Season::Winter, DayType::Weekend, {}};
  const std::vector<MeterReading> readings = {
      {"h1", ymd(2024, 1, 6), 0, 1.0},   // Saturday, January
      {"h1", ymd(2024, 1, 3), 0, 1.0},   // Wednesday
      {"h1", ymd(2024, 7, 6), 0, 1.0},   // Saturday, July
  };
  const auto days = segment_days(readings, winter_weekend);
  ASSERT_EQ(days.at("h1").size(), 1u);
  EXPECT_EQ(days.at("h1")[0].date, ymd(2024, 1, 6));
}

TEST(SegmentDays, MarksMissingHoursAbsentAndKeepsHouseholds) {
  const SegmentSpec spec{Season::Winter, DayType::Weekend, {}};
  const std::vector<MeterReading> readings = {
      {"h1", ymd(2024, 1, 6), 5, 2.0},
      {"h2", ymd(2024, 7, 6), 5, 2.0},  // out of season
  };
  const auto days = segment_days(readings, spec);
  ASSERT_EQ(days.size(), 2u);
  EXPECT_TRUE(days.at("h2").empty());
  const auto& d = days.at("h1").front();
  EXPECT_EQ(d.values[5], 2.0);
  EXPECT_FALSE(d.values[4].has_value());
  EXPECT_FALSE(d.complete());
}

TEST(SegmentDays, CustomCalendar) {
  const SegmentSpec spec{Season::Summer, DayType::Weekday, SeasonCalendar({11, 12, 1, 2, 3}, {5, 6, 7, 8, 9})};
  const std::vector<MeterReading> readings = {{"h", ymd(2024, 5, 1), 0, 1.0}};  // Wednesday
  EXPECT_EQ(segment_days(readings, spec).at("h").size(), 1u);
}

TEST(SeasonCalendar, RejectsOverlapAndBadMonths) {
  EXPECT_THROW(SeasonCalendar({1, 2}, {2, 3}), std::invalid_argument);
  EXPECT_THROW(SeasonCalendar({0}, {6}), std::invalid_argument);
  EXPECT_THROW(SeasonCalendar({13}, {6}), std::invalid_argument);
}

TEST(SegmentDays, FourSegmentsOfAYearAreDisjoint) {
  std::vector<MeterReading> readings;
  auto day = std::chrono::sys_days{ymd(2023, 1, 1)};
  for (int i = 0; i < 365; ++i, day += std::chrono::days{1}) {
    readings.push_back({"h", Date{day}, 0, 1.0});
  }
  std::set<std::chrono::sys_days> seen;
  std::size_t total = 0;
  for (auto season : {Season::Winter, Season::Summer}) {
    for (auto type : {DayType::Weekday, DayType::Weekend}) {
      for (const auto& d : segment_days(readings, {season, type, {}}).at("h")) {
        EXPECT_TRUE(seen.insert(std::chrono::sys_days{d.date}).second);
        ++total;
      }
    }
  }
  // Dec, Jan, Feb (90 days in 2023) + Jun, Jul, Aug (92 days).
  EXPECT_EQ(total, 182u);
}

// ---- filter_complete_days ----

TEST(FilterCompleteDays, DropsDaysWithMissingHours) {
  auto partial = full_day("h", ymd(2024, 1, 6), {1.0});
  partial.values[13].reset();
  const auto full = full_day("h", ymd(2024, 1, 7), {1.0});
  const auto out = filter_complete_days({partial, full});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].date, ymd(2024, 1, 7));
  EXPECT_TRUE(filter_complete_days({}).empty());
}

TEST(FilterCompleteDays, IsIdempotentOnRandomInputs) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DayRecord> days;
    for (int d = 0; d < 10; ++d) {
      auto rec = full_day("h", ymd(2024, 1, 1 + d), {1.0});
      if (rng.uniform() < 0.4) rec.values[rng.below(24)].reset();
      days.push_back(rec);
    }
    const auto once = filter_complete_days(days);
    EXPECT_EQ(filter_complete_days(once), once);
  }
}

// ---- normalise ----

TEST(Normalise, LinearMinMax) {
  const auto out = normalise({full_day("h", ymd(2024, 1, 6), {2, 4, 6})});
  EXPECT_FALSE(out.flat);
  EXPECT_EQ(out.days[0].at(0), 0.0);
  EXPECT_EQ(out.days[0].at(1), 0.5);
  EXPECT_EQ(out.days[0].at(2), 1.0);
}

TEST(Normalise, PoolsAcrossDays) {
  // pooled {1, 2, 5}: (v - 1) / 4
  const auto out = normalise({full_day("h", ymd(2024, 1, 6), {1, 2}), full_day("h", ymd(2024, 1, 7), {5})});
  EXPECT_EQ(out.days[0].at(0), 0.0);
  EXPECT_EQ(out.days[0].at(1), 0.25);
  EXPECT_EQ(out.days[1].at(0), 1.0);
}

TEST(Normalise, FlatPoolMapsToZero) {
  const auto out = normalise({full_day("h", ymd(2024, 1, 6), {3.0}), full_day("h", ymd(2024, 1, 7), {3.0})});
  EXPECT_TRUE(out.flat);
  for (const auto& d : out.days) {
    for (const auto& v : d.values) EXPECT_EQ(*v, 0.0);
  }
}

TEST(Normalise, RandomPoolsSpanExactlyZeroToOne) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<DayRecord> days;
    const int n = 1 + static_cast<int>(rng.below(6));
    for (int d = 0; d < n; ++d) {
      DayRecord rec{"h", ymd(2024, 1, 1 + d), {}};
      for (auto& v : rec.values) v = 10.0 * rng.uniform();
      days.push_back(rec);
    }
    const auto out = normalise(days);
    double lo = 1.0, hi = 0.0;
    for (const auto& d : out.days) {
      for (const auto& v : d.values) {
        lo = std::min(lo, *v);
        hi = std::max(hi, *v);
      }
    }
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 1.0);
  }
}

TEST(Normalise, RejectsIncompleteDays) {
  auto d = full_day("h", ymd(2024, 1, 6), {1, 2});
  d.values[0].reset();
  EXPECT_THROW(normalise({d}), std::invalid_argument);
}

// ---- average_profile ----

TEST(AverageProfile, MeanOfOne) {
  const auto p = average_profile({full_day("h", ymd(2024, 1, 6), {0.1})}, "h", Season::Winter,
                                 DayType::Weekend);
  EXPECT_EQ(p.day_count, 1u);
  for (double v : p.values) EXPECT_EQ(v, 0.1);
}

TEST(AverageProfile, PerHourMeans) {
  auto a = full_day("h", ymd(2024, 1, 6), {0.0});
  auto b = full_day("h", ymd(2024, 1, 7), {0.0});
  auto c = full_day("h", ymd(2024, 1, 13), {0.0});
  a.values[0] = 0.2;
  b.values[0] = 0.4;
  a.values[7] = 0.0;
  b.values[7] = 0.5;
  c.values[7] = 1.0;
  const auto two = average_profile({a, b}, "h", Season::Winter, DayType::Weekend);
  EXPECT_NEAR(two.values[0], 0.3, 1e-15);
  const auto three = average_profile({a, b, c}, "h", Season::Winter, DayType::Weekend);
  EXPECT_EQ(three.values[7], 0.5);
  EXPECT_EQ(three.day_count, 3u);
}

TEST(AverageProfile, EmptyInputIsAnError) {
  try {
    average_profile({}, "h9", Season::Winter, DayType::Weekend);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("has no complete days in segment"), std::string::npos);
  }
}

TEST(AverageProfile, PermutationInvariant) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<DayRecord> days;
    for (int d = 0; d < 6; ++d) {
      DayRecord rec{"h", ymd(2024, 1, 1 + d), {}};
      for (auto& v : rec.values) v = rng.uniform();
      days.push_back(rec);
    }
    const auto p1 = average_profile(days, "h", Season::Winter, DayType::Weekend);
    std::reverse(days.begin(), days.end());
    std::swap(days[1], days[4]);
    const auto p2 = average_profile(days, "h", Season::Winter, DayType::Weekend);
    for (std::size_t h = 0; h < kHoursPerDay; ++h) EXPECT_NEAR(p1.values[h], p2.values[h], 1e-15);
  }
}

// ---- build_profiles ----

TEST(BuildProfiles, ExcludesHouseholdsWithoutCompleteDaysAndDrops23HourDays) {
  // 2024-01-06/07 and 13 are weekend days.
  const auto text = testing::readings_csv({"a", "b", "c"},
                                          {ymd(2024, 1, 6), ymd(2024, 1, 7), ymd(2024, 1, 13)},
                                          {{"b", 0, 3}, {"b", 1, 3}, {"b", 2, 3}, {"a", 2, 22}});
  std::istringstream in(text);
  const auto result = build_profiles(parse_readings(in), SegmentSpec{});
  ASSERT_EQ(result.profiles.size(), 2u);
  EXPECT_EQ(result.profiles[0].household_id, "a");
  EXPECT_EQ(result.profiles[0].day_count, 2u);  // the 23-hour day is omitted
  EXPECT_EQ(result.profiles[1].household_id, "c");
  EXPECT_EQ(result.profiles[1].day_count, 3u);
  ASSERT_EQ(result.excluded.size(), 1u);
  EXPECT_EQ(result.excluded[0].household_id, "b");
  EXPECT_EQ(result.incomplete_days_dropped, 4u);
  for (const auto& p : result.profiles) {
    for (double v : p.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(BuildProfiles, FlatHouseholdIsReported) {
  std::vector<MeterReading> readings;
  for (unsigned h = 0; h < 24; ++h) readings.push_back({"flat", ymd(2024, 1, 6), h, 3.0});
  const auto result = build_profiles(readings, SegmentSpec{});
  ASSERT_EQ(result.profiles.size(), 1u);
  EXPECT_EQ(result.flat_households, std::vector<std::string>{"flat"});
  for (double v : result.profiles[0].values) EXPECT_EQ(v, 0.0);
}

}  // namespace
}  // namespace fuzzyload
