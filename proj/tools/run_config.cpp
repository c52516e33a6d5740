#include "run_config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "fuzzyload/csv.hpp"
#include "json.hpp"

namespace fuzzyload::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string normalise_key(std::string key) {
  for (auto& ch : key) {
    if (ch == '_') ch = '-';
  }
  return key;
}

std::uint64_t as_unsigned(const std::string& key, const std::string& value) {
  const auto v = csv::parse_unsigned(value);
  if (!v) throw ConfigError("`" + key + "` expects a non-negative integer, got `" + value + "`");
  return *v;
}

double as_double(const std::string& key, const std::string& value) {
  const auto v = csv::parse_double(value);
  if (!v) throw ConfigError("`" + key + "` expects a number, got `" + value + "`");
  return *v;
}

bool as_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("`" + key + "` expects true/false, got `" + value + "`");
}

std::vector<unsigned> as_months(const std::string& key, const std::string& value) {
  std::vector<unsigned> months;
  for (auto field : csv::split(value)) {
    const auto v = csv::parse_unsigned(trim(field));
    if (!v || *v < 1 || *v > 12) {
      throw ConfigError("`" + key + "` expects comma-separated months 1..12, got `" + value + "`");
    }
    months.push_back(static_cast<unsigned>(*v));
  }
  return months;
}

}  // namespace

Settings load_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Settings settings;
  const std::string stripped = trim(text);
  if (!stripped.empty() && stripped.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(stripped);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        settings[normalise_key(key)] = value.get<std::string>();
      } else if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ',';
          joined += item.is_string() ? item.get<std::string>() : item.dump();
        }
        settings[normalise_key(key)] = joined;
      } else {
        settings[normalise_key(key)] = value.dump();
      }
    }
    return settings;
  }

  std::istringstream lines(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ": expected key=value, line " + std::to_string(number));
    }
    settings[normalise_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
  }
  return settings;
}

void apply_settings(RunConfig& c, const Settings& settings) {
  std::optional<std::vector<unsigned>> winter;
  std::optional<std::vector<unsigned>> summer;

  for (const auto& [key, value] : settings) {
    if (key == "in") c.in = value;
    else if (key == "out") c.out = value;
    else if (key == "model") c.model = value;
    else if (key == "memberships") c.memberships = value;
    else if (key == "offers") c.offers = value;
    else if (key == "usage") c.usage = value;
    else if (key == "bills") c.bills = value;
    else if (key == "ranking") c.ranking = value;
    else if (key == "summary") c.summary = value;
    else if (key == "household") c.household = value;
    else if (key == "seed") c.fcm.seed = as_unsigned(key, value);
    else if (key == "clusters") c.fcm.clusters = as_unsigned(key, value);
    else if (key == "fuzzifier") c.fcm.fuzzifier = as_double(key, value);
    else if (key == "tolerance") c.fcm.tolerance = as_double(key, value);
    else if (key == "max-iter") c.fcm.max_iter = as_unsigned(key, value);
    else if (key == "target") c.target = as_unsigned(key, value);
    else if (key == "rank-cluster") c.rank_cluster = as_unsigned(key, value);
    else if (key == "min-membership") c.min_membership = as_double(key, value);
    else if (key == "threshold") c.threshold = as_double(key, value);
    else if (key == "with-l1") c.with_l1 = as_bool(key, value);
    else if (key == "season") {
      const auto s = parse_season(value);
      if (!s) throw ConfigError("`season` expects winter|summer, got `" + value + "`");
      c.segment.season = *s;
      c.segment_explicit = true;
    } else if (key == "day-type") {
      const auto d = parse_day_type(value);
      if (!d) throw ConfigError("`day-type` expects weekday|weekend, got `" + value + "`");
      c.segment.day_type = *d;
      c.segment_explicit = true;
    } else if (key == "winter-months") {
      winter = as_months(key, value);
    } else if (key == "summer-months") {
      summer = as_months(key, value);
    } else {
      throw ConfigError("unknown setting `" + key + "`");
    }
  }

  if (winter || summer) {
    try {
      c.segment.calendar = SeasonCalendar(winter.value_or(c.segment.calendar.months(Season::Winter)),
                                          summer.value_or(c.segment.calendar.months(Season::Summer)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

void validate(const RunConfig& c) {
  try {
    c.fcm.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(c.threshold >= 0.0 && c.threshold <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1]");
  }
  if (!(c.min_membership >= 0.0 && c.min_membership <= 1.0)) {
    throw ConfigError("min-membership must lie in [0, 1]");
  }
}

}  // namespace fuzzyload::cli
