#include "fuzzyload/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

#include "fuzzyload/csv.hpp"
#include "fuzzyload/error.hpp"

namespace fuzzyload {

namespace {

constexpr std::string_view kReadingsHeader = "household_id,timestamp,kwh";

std::optional<unsigned> parse_fixed_digits(std::string_view text) {
  unsigned value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') return std::nullopt;
    value = value * 10 + static_cast<unsigned>(ch - '0');
  }
  return value;
}

// YYYY-MM-DDTHH:MM with MM == 00.
bool parse_timestamp(std::string_view text, Date& date, unsigned& hour) {
  if (text.size() != 16 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':') {
    return false;
  }
  const auto y = parse_fixed_digits(text.substr(0, 4));
  const auto mo = parse_fixed_digits(text.substr(5, 2));
  const auto d = parse_fixed_digits(text.substr(8, 2));
  const auto h = parse_fixed_digits(text.substr(11, 2));
  const auto mi = parse_fixed_digits(text.substr(14, 2));
  if (!y || !mo || !d || !h || !mi) return false;
  if (*h > 23 || *mi != 0) return false;
  const Date parsed{std::chrono::year{static_cast<int>(*y)}, std::chrono::month{*mo},
                    std::chrono::day{*d}};
  if (!parsed.ok()) return false;
  date = parsed;
  hour = *h;
  return true;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

}  // namespace

std::string_view to_string(Season s) { return s == Season::Winter ? "winter" : "summer"; }

std::string_view to_string(DayType d) { return d == DayType::Weekday ? "weekday" : "weekend"; }

std::optional<Season> parse_season(std::string_view text) {
  if (text == "winter") return Season::Winter;
  if (text == "summer") return Season::Summer;
  return std::nullopt;
}

std::optional<DayType> parse_day_type(std::string_view text) {
  if (text == "weekday") return DayType::Weekday;
  if (text == "weekend") return DayType::Weekend;
  return std::nullopt;
}

SeasonCalendar::SeasonCalendar() : SeasonCalendar({12, 1, 2}, {6, 7, 8}) {}

SeasonCalendar::SeasonCalendar(std::vector<unsigned> winter_months,
                               std::vector<unsigned> summer_months) {
  const auto fill = [](const std::vector<unsigned>& months, std::array<bool, 12>& set) {
    for (unsigned m : months) {
      if (m < 1 || m > 12) {
        throw std::invalid_argument("season month out of range 1..12: " + std::to_string(m));
      }
      set[m - 1] = true;
    }
  };
  fill(winter_months, winter_);
  fill(summer_months, summer_);
  for (std::size_t i = 0; i < 12; ++i) {
    if (winter_[i] && summer_[i]) {
      throw std::invalid_argument("season month sets overlap at month " + std::to_string(i + 1));
    }
  }
}

bool SeasonCalendar::contains(Season season, unsigned month) const {
  if (month < 1 || month > 12) return false;
  return season == Season::Winter ? winter_[month - 1] : summer_[month - 1];
}

std::vector<unsigned> SeasonCalendar::months(Season season) const {
  std::vector<unsigned> out;
  for (unsigned m = 1; m <= 12; ++m) {
    if (contains(season, m)) out.push_back(m);
  }
  return out;
}

DayType day_type_of(const Date& date) {
  const std::chrono::weekday wd{std::chrono::sys_days{date}};
  return (wd == std::chrono::Saturday || wd == std::chrono::Sunday) ? DayType::Weekend
                                                                    : DayType::Weekday;
}

bool SegmentSpec::matches(const Date& date) const {
  return calendar.contains(season, static_cast<unsigned>(date.month())) &&
         day_type_of(date) == day_type;
}

bool DayRecord::complete() const {
  return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.has_value(); });
}

std::vector<MeterReading> parse_readings(std::istream& in) {
  csv::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) {
    throw ParseError("missing header `" + std::string(kReadingsHeader) + "`", 1);
  }
  if (line != kReadingsHeader) {
    throw ParseError("unexpected header `" + line + "`", reader.line_number());
  }

  std::vector<MeterReading> readings;
  std::set<std::tuple<std::string, int, unsigned>> seen;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const std::size_t n = reader.line_number();
    const auto fields = csv::split(line);
    if (fields.size() != 3) {
      throw ParseError("expected 3 columns, found " + std::to_string(fields.size()), n);
    }
    if (fields[0].empty()) throw ParseError("empty household_id", n);

    MeterReading r;
    r.household_id = std::string(fields[0]);
    if (!parse_timestamp(fields[1], r.date, r.hour)) {
      throw ParseError("unparseable timestamp `" + std::string(fields[1]) + "`", n);
    }
    const auto kwh = csv::parse_double(fields[2]);
    if (!kwh || !std::isfinite(*kwh)) {
      throw ParseError("unparseable energy `" + std::string(fields[2]) + "`", n);
    }
    if (*kwh < 0.0) throw ParseError("negative energy", n);
    r.kwh = *kwh;

    const int day_index = std::chrono::sys_days{r.date}.time_since_epoch().count();
    if (!seen.emplace(r.household_id, day_index, r.hour).second) {
      char hour[4];
      std::snprintf(hour, sizeof hour, "%02u", r.hour);
      throw DataError("duplicate reading for (" + r.household_id + ", " + format_date(r.date) +
                      "T" + hour + ":00), line " + std::to_string(n));
    }
    readings.push_back(std::move(r));
  }
  return readings;
}

std::map<std::string, std::vector<DayRecord>> segment_days(
    const std::vector<MeterReading>& readings, const SegmentSpec& spec) {
  std::map<std::string, std::map<std::chrono::sys_days, DayRecord>> grouped;
  for (const auto& r : readings) {
    auto& days = grouped[r.household_id];
    if (!spec.matches(r.date)) continue;
    auto [it, inserted] = days.try_emplace(std::chrono::sys_days{r.date});
    if (inserted) {
      it->second.household_id = r.household_id;
      it->second.date = r.date;
    }
    if (r.hour < kHoursPerDay) it->second.values[r.hour] = r.kwh;
  }

  std::map<std::string, std::vector<DayRecord>> out;
  for (auto& [id, days] : grouped) {
    auto& list = out[id];
    list.reserve(days.size());
    for (auto& [_, rec] : days) list.push_back(std::move(rec));
  }
  return out;
}

std::vector<DayRecord> filter_complete_days(const std::vector<DayRecord>& days) {
  std::vector<DayRecord> out;
  std::copy_if(days.begin(), days.end(), std::back_inserter(out),
               [](const DayRecord& d) { return d.complete(); });
  return out;
}

NormalisedDays normalise(const std::vector<DayRecord>& days) {
  NormalisedDays out{days, false};
  if (days.empty()) return out;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& d : days) {
    if (!d.complete()) throw std::invalid_argument("normalise: incomplete day record");
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      lo = std::min(lo, d.at(h));
      hi = std::max(hi, d.at(h));
    }
  }

  const double range = hi - lo;
  out.flat = !(range > 0.0);
  for (auto& d : out.days) {
    for (auto& v : d.values) {
      // Clamp guards the last-ulp overshoot of (v - lo) / range.
      v = out.flat ? 0.0 : std::clamp((*v - lo) / range, 0.0, 1.0);
    }
  }
  return out;
}

DailyProfile average_profile(const std::vector<DayRecord>& days, const std::string& household_id,
                             Season season, DayType day_type) {
  if (days.empty()) {
    throw DataError("household " + household_id + " has no complete days in segment");
  }
  DailyProfile p;
  p.household_id = household_id;
  p.season = season;
  p.day_type = day_type;
  p.day_count = days.size();
  const double count = static_cast<double>(days.size());
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    double sum = 0.0;
    for (const auto& d : days) sum += d.at(h);
    p.values[h] = std::clamp(sum / count, 0.0, 1.0);
  }
  return p;
}

IngestResult build_profiles(const std::vector<MeterReading>& readings, const SegmentSpec& spec) {
  return build_profiles(readings, spec, [](const Date&) { return true; });
}

IngestResult build_profiles(const std::vector<MeterReading>& readings, const SegmentSpec& spec,
                            const std::function<bool(const Date&)>& in_range) {
  IngestResult result;
  std::vector<MeterReading> selected;
  selected.reserve(readings.size());
  for (const auto& r : readings) {
    if (in_range(r.date)) selected.push_back(r);
  }
  // Households present only outside the range still get reported as excluded.
  std::set<std::string> all_ids;
  for (const auto& r : readings) all_ids.insert(r.household_id);

  auto by_household = segment_days(selected, spec);
  for (const auto& id : all_ids) {
    const auto it = by_household.find(id);
    const std::vector<DayRecord> empty;
    const auto& days = it == by_household.end() ? empty : it->second;
    auto complete = filter_complete_days(days);
    result.incomplete_days_dropped += days.size() - complete.size();
    if (complete.empty()) {
      result.excluded.push_back(
          {id, days.empty() ? "no days in segment" : "no complete days in segment"});
      continue;
    }
    auto normalised = normalise(complete);
    if (normalised.flat) result.flat_households.push_back(id);
    result.profiles.push_back(
        average_profile(normalised.days, id, spec.season, spec.day_type));
  }
  return result;
}

}  // namespace fuzzyload
