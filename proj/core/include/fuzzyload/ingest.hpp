#pragma once

// Raw hourly meter readings -> per-household, per-segment normalized
// average daily profiles.
//
// Pipeline: parse -> segment_days -> filter_complete_days -> normalise ->
// average_profile. Normalization is min-max over every hourly value in one
// household's segment pool and happens before the per-hour averaging.

#include <array>
#include <chrono>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyload {

inline constexpr std::size_t kHoursPerDay = 24;

using Date = std::chrono::year_month_day;

struct MeterReading {
  std::string household_id;
  Date date;
  unsigned hour = 0;  // 0..23, local clock hour
  double kwh = 0.0;

  friend bool operator==(const MeterReading&, const MeterReading&) = default;
};

enum class Season { Winter, Summer };
enum class DayType { Weekday, Weekend };

std::string_view to_string(Season s);
std::string_view to_string(DayType d);
std::optional<Season> parse_season(std::string_view text);
std::optional<DayType> parse_day_type(std::string_view text);

// Which calendar months (1..12) belong to each season. The sets must be
// disjoint; months in neither set belong to no season.
class SeasonCalendar {
 public:
  // Winter = Dec, Jan, Feb; Summer = Jun, Jul, Aug.
  SeasonCalendar();
  SeasonCalendar(std::vector<unsigned> winter_months, std::vector<unsigned> summer_months);

  [[nodiscard]] bool contains(Season season, unsigned month) const;
  [[nodiscard]] std::vector<unsigned> months(Season season) const;

 private:
  std::array<bool, 12> winter_{};
  std::array<bool, 12> summer_{};
};

struct SegmentSpec {
  Season season = Season::Winter;
  DayType day_type = DayType::Weekend;
  SeasonCalendar calendar{};

  // Saturday and Sunday are weekend days; Monday-Friday are weekdays.
  [[nodiscard]] bool matches(const Date& date) const;
};

DayType day_type_of(const Date& date);

struct DayRecord {
  std::string household_id;
  Date date;
  std::array<std::optional<double>, kHoursPerDay> values{};

  [[nodiscard]] bool complete() const;
  [[nodiscard]] double at(std::size_t hour) const { return values.at(hour).value(); }

  friend bool operator==(const DayRecord&, const DayRecord&) = default;
};

struct DailyProfile {
  std::string household_id;
  Season season = Season::Winter;
  DayType day_type = DayType::Weekend;
  std::array<double, kHoursPerDay> values{};
  std::size_t day_count = 0;

  friend bool operator==(const DailyProfile&, const DailyProfile&) = default;
};

// Parses the readings CSV (header `household_id,timestamp,kwh`, timestamps
// `YYYY-MM-DDTHH:00`). Throws ParseError on malformed rows and DataError on a
// duplicate (household, date, hour) key.
std::vector<MeterReading> parse_readings(std::istream& in);

// Groups readings that fall in the segment into per-household day records,
// sorted by date. Every household seen in `readings` gets an entry, possibly
// with no days, so callers can report exclusions.
std::map<std::string, std::vector<DayRecord>> segment_days(
    const std::vector<MeterReading>& readings, const SegmentSpec& spec);

std::vector<DayRecord> filter_complete_days(const std::vector<DayRecord>& days);

struct NormalisedDays {
  std::vector<DayRecord> days;
  bool flat = false;  // every pooled value was equal; all mapped to 0
};

// Min-max scales all hourly values of one household's segment pool to [0, 1].
// Requires complete days.
NormalisedDays normalise(const std::vector<DayRecord>& days);

// Per-hour mean of normalized complete days. Throws DataError when `days` is
// empty.
DailyProfile average_profile(const std::vector<DayRecord>& days,
                             const std::string& household_id, Season season,
                             DayType day_type);

struct Exclusion {
  std::string household_id;
  std::string reason;
};

struct IngestResult {
  std::vector<DailyProfile> profiles;     // sorted by household_id
  std::vector<Exclusion> excluded;        // sorted by household_id
  std::vector<std::string> flat_households;
  std::size_t incomplete_days_dropped = 0;
};

// Runs the full pipeline for one segment.
IngestResult build_profiles(const std::vector<MeterReading>& readings, const SegmentSpec& spec);

// Same pipeline restricted to the readings whose date satisfies `in_range`.
IngestResult build_profiles(const std::vector<MeterReading>& readings, const SegmentSpec& spec,
                            const std::function<bool(const Date&)>& in_range);

}  // namespace fuzzyload
