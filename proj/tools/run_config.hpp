#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "fuzzyload/fcm.hpp"
#include "fuzzyload/ingest.hpp"

namespace fuzzyload::cli {

// Invalid configuration or usage (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string in;
  std::string out;
  std::string model;        // directory written by `cluster`
  std::string memberships;
  std::string offers;
  std::string usage;
  std::string bills;
  std::string ranking;
  std::string summary;
  std::string household;

  SegmentSpec segment{};
  bool segment_explicit = false;  // season or day-type was set by file or flag

  FcmConfig fcm{};

  std::optional<std::size_t> target;
  std::optional<std::size_t> rank_cluster;
  double min_membership = 0.0;
  double threshold = 0.05;  // display threshold for membership reporting
  bool with_l1 = false;
};

using Settings = std::map<std::string, std::string>;

// Reads a config file: a JSON object, or `key = value` lines (# comments).
// Keys use the long flag names without dashes, e.g. `max-iter`, `season`.
Settings load_settings_file(const std::string& path);

// Applies settings on top of `base`; later calls win. Throws ConfigError on
// unknown keys or unparseable values.
void apply_settings(RunConfig& config, const Settings& settings);

// Checks FcmConfig invariants and the threshold ranges.
void validate(const RunConfig& config);

}  // namespace fuzzyload::cli
