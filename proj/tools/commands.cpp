#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <vector>

#include "CLI11.hpp"
#include "fuzzyload/csv.hpp"
#include "fuzzyload/drift.hpp"
#include "fuzzyload/error.hpp"
#include "fuzzyload/io.hpp"
#include "fuzzyload/tariff.hpp"

namespace fuzzyload::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kModelFile = "model.csv";
constexpr const char* kMembershipFile = "memberships.csv";
constexpr const char* kMetadataFile = "run.json";

// Collects output files as temporaries and renames them into place together
// on commit(). Uncommitted temporaries are removed on destruction.
class OutputBatch {
 public:
  OutputBatch() = default;
  OutputBatch(const OutputBatch&) = delete;
  OutputBatch& operator=(const OutputBatch&) = delete;

  ~OutputBatch() {
    for (auto& e : entries_) {
      e.stream.reset();
      std::error_code ec;
      if (!committed_) fs::remove(e.temp, ec);
    }
  }

  std::ostream& open(const fs::path& target) {
    Entry e{target, fs::path(target.string() + ".tmp"), nullptr};
    e.stream = std::make_unique<std::ofstream>(e.temp, std::ios::binary | std::ios::trunc);
    if (!*e.stream) throw ConfigError("cannot write " + e.temp.string());
    entries_.push_back(std::move(e));
    return *entries_.back().stream;
  }

  void commit() {
    for (auto& e : entries_) {
      e.stream->flush();
      if (!*e.stream) throw std::runtime_error("write failed for " + e.target.string());
      e.stream->close();
    }
    for (auto& e : entries_) fs::rename(e.temp, e.target);
    committed_ = true;
  }

 private:
  struct Entry {
    fs::path target;
    fs::path temp;
    std::unique_ptr<std::ofstream> stream;
  };
  std::vector<Entry> entries_;
  bool committed_ = false;
};

fs::path require_input(const std::string& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string("missing required --") + flag);
  if (!fs::is_regular_file(path)) {
    throw ConfigError(std::string("--") + flag + ": no such file " + path);
  }
  return path;
}

fs::path require_model_dir(const std::string& path) {
  if (path.empty()) throw ConfigError("missing required --model");
  if (!fs::is_directory(path)) throw ConfigError("--model: no such directory " + path);
  for (const char* name : {kModelFile, kMetadataFile}) {
    if (!fs::is_regular_file(fs::path(path) / name)) {
      throw ConfigError("--model: " + path + " has no " + name);
    }
  }
  return path;
}

fs::path require_output(const std::string& path) {
  if (path.empty()) throw ConfigError("missing required --out");
  return path;
}

// Opens `path` and runs `read`, prefixing data errors with the file name.
template <typename Fn>
auto read_file(const fs::path& path, Fn&& read) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return read(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<DailyProfile> select_profiles(std::vector<DailyProfile> profiles,
                                          const RunConfig& config) {
  if (config.segment_explicit) {
    std::erase_if(profiles, [&](const DailyProfile& p) {
      return p.season != config.segment.season || p.day_type != config.segment.day_type;
    });
    return profiles;
  }
  for (const auto& p : profiles) {
    if (p.season != profiles.front().season || p.day_type != profiles.front().day_type) {
      throw ConfigError("profiles span several segments; pass --season and --day-type");
    }
  }
  return profiles;
}

ClusterModel load_model(const fs::path& dir) {
  ClusterModel model;
  model.centroids = read_file(dir / kModelFile, [](std::istream& in) {
    return io::read_model_centroids(in);
  });
  const auto meta = read_file(dir / kMetadataFile, [](std::istream& in) {
    return io::read_run_metadata(in);
  });
  if (meta.config.clusters != model.centroids.rows()) {
    throw DataError((dir / kMetadataFile).string() + ": c does not match " + kModelFile);
  }
  model.fuzzifier = meta.config.fuzzifier;
  model.objective = meta.objective;
  model.iterations = meta.iterations;
  model.converged = meta.converged;
  return model;
}

}  // namespace

void cmd_ingest(const RunConfig& config, std::ostream& log) {
  const auto in_path = require_input(config.in, "in");
  const auto out_path = require_output(config.out);

  const auto readings = read_file(in_path, [](std::istream& in) { return parse_readings(in); });
  const auto result = build_profiles(readings, config.segment);

  OutputBatch batch;
  io::write_profiles(batch.open(out_path), result.profiles);
  batch.commit();

  log << "segment " << to_string(config.segment.season) << '/' << to_string(config.segment.day_type)
      << ": retained " << result.profiles.size() << " households, excluded "
      << result.excluded.size() << " (" << result.incomplete_days_dropped
      << " incomplete days omitted)\n";
  for (const auto& e : result.excluded) log << "excluded " << e.household_id << ": " << e.reason << '\n';
  for (const auto& id : result.flat_households) {
    log << "warning: " << id << " has flat usage; profile set to zeros\n";
  }
}

void cmd_cluster(const RunConfig& config, std::ostream& log) {
  const auto in_path = require_input(config.in, "in");
  const fs::path out_dir = require_output(config.out);

  auto profiles = select_profiles(
      read_file(in_path, [](std::istream& in) { return io::read_profiles(in); }), config);
  const auto x = io::to_profile_matrix(profiles);
  const auto result = run_fcm(x, config.fcm);

  fs::create_directories(out_dir);
  OutputBatch batch;
  io::write_model(batch.open(out_dir / kModelFile), result.model);
  io::write_memberships(batch.open(out_dir / kMembershipFile), x.household_ids, result.partition);
  io::write_run_metadata(batch.open(out_dir / kMetadataFile), config.fcm, result.model);
  batch.commit();

  log << "clustered " << x.size() << " households into " << config.fcm.clusters
      << " clusters: iterations=" << result.model.iterations
      << " converged=" << (result.model.converged ? "true" : "false")
      << " objective=" << csv::format_double(result.model.objective) << '\n';
}

void cmd_assign(const RunConfig& config, std::ostream& log) {
  const auto in_path = require_input(config.in, "in");
  const auto model_dir = require_model_dir(config.model);
  const auto out_path = require_output(config.out);

  const auto model = load_model(model_dir);
  auto profiles = read_file(in_path, [](std::istream& in) { return io::read_profiles(in); });
  if (!profiles.empty()) profiles = select_profiles(std::move(profiles), config);

  FuzzyPartition partition{Matrix(profiles.size(), model.clusters())};
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const auto row = membership_of(profiles[k].values, model);
    std::copy(row.begin(), row.end(), partition.u.row(k).begin());
    ids.push_back(profiles[k].household_id);
  }

  OutputBatch batch;
  io::write_memberships(batch.open(out_path), ids, partition);
  batch.commit();
  log << "assigned " << ids.size() << " households against " << model.clusters()
      << " clusters\n";
}

void cmd_tariff(const RunConfig& config, std::ostream& log) {
  const auto in_path = require_input(config.in, "in");
  const auto offers_path = require_input(config.offers, "offers");
  const auto out_path = require_output(config.out);
  if (!config.usage.empty() && config.bills.empty()) {
    throw ConfigError("--usage requires --bills");
  }
  if (config.rank_cluster && config.ranking.empty()) {
    throw ConfigError("--rank-cluster requires --ranking");
  }

  const auto table = read_file(in_path, [](std::istream& in) { return io::read_memberships(in); });
  const auto offers = read_file(offers_path, [](std::istream& in) { return io::read_offers(in); });
  if (offers.size() != table.partition.clusters()) {
    throw DataError("offer set covers " + std::to_string(offers.size()) +
                    " clusters but memberships have " +
                    std::to_string(table.partition.clusters()));
  }

  std::vector<PersonalTariff> tariffs;
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < table.household_ids.size(); ++k) {
    try {
      tariffs.push_back(
          blend_tariff(offers, table.partition.u.row(k), table.household_ids[k]));
    } catch (const std::invalid_argument& e) {
      throw DataError(in_path.string() + ": household " + table.household_ids[k] + ": " + e.what());
    }
    index[table.household_ids[k]] = k;
  }

  std::vector<io::BillRow> bills;
  if (!config.usage.empty()) {
    const auto usage_path = require_input(config.usage, "usage");
    const auto usage = read_file(usage_path, [](std::istream& in) { return io::read_usage(in); });
    for (const auto& row : usage) {
      const auto it = index.find(row.household_id);
      if (it == index.end()) {
        throw DataError(usage_path.string() + ": household " + row.household_id +
                        " has no membership row");
      }
      bills.push_back({row.household_id, estimate_bill(row.kwh, tariffs[it->second])});
    }
  }

  std::vector<RankedHousehold> ranking;
  if (config.rank_cluster) {
    ranking = rank_households(table.partition, table.household_ids, *config.rank_cluster,
                              config.min_membership);
  }

  OutputBatch batch;
  io::write_personal_tariffs(batch.open(out_path), tariffs);
  if (!config.usage.empty()) io::write_bills(batch.open(config.bills), bills);
  if (config.rank_cluster) io::write_ranking(batch.open(config.ranking), ranking);
  batch.commit();

  log << "wrote " << tariffs.size() << " personal tariffs";
  if (!config.usage.empty()) log << ", " << bills.size() << " bills";
  if (config.rank_cluster) {
    log << ", " << ranking.size() << " households ranked for cluster " << *config.rank_cluster;
  }
  log << '\n';
}

void cmd_drift(const RunConfig& config, std::ostream& log) {
  const auto in_path = require_input(config.in, "in");
  const auto model_dir = require_model_dir(config.model);
  const auto out_path = require_output(config.out);
  if (!config.target) throw ConfigError("missing required --target");

  const auto model = load_model(model_dir);
  if (*config.target >= model.clusters()) {
    throw ConfigError("--target " + std::to_string(*config.target) + " out of range (c = " +
                      std::to_string(model.clusters()) + ")");
  }
  const auto readings = read_file(in_path, [](std::istream& in) { return parse_readings(in); });
  const auto periods = monthly_period_profiles(readings, config.segment);

  std::vector<DriftReport> reports;
  for (const auto& [id, list] : periods.by_household) {
    reports.push_back(green_progress(membership_trajectory(list, model), *config.target, id));
  }

  OutputBatch batch;
  io::write_drift_report(batch.open(out_path), reports, model.clusters(), config.with_l1);
  if (!config.summary.empty()) io::write_drift_summary(batch.open(config.summary), reports);
  batch.commit();

  log << "drift for " << reports.size() << " households toward cluster " << *config.target << '\n';
  for (const auto& s : periods.skipped) log << "skipped " << s.household_id << ": " << s.reason << '\n';
}

void cmd_export_plot(const RunConfig& config, std::ostream& log) {
  const auto model_dir = require_model_dir(config.model);
  const fs::path out_dir = require_output(config.out);
  const auto model = load_model(model_dir);

  std::vector<double> row;
  if (!config.household.empty()) {
    const auto memberships_path =
        require_input(config.memberships.empty() ? (model_dir / kMembershipFile).string()
                                                 : config.memberships,
                      "memberships");
    const auto table =
        read_file(memberships_path, [](std::istream& in) { return io::read_memberships(in); });
    for (std::size_t k = 0; k < table.household_ids.size(); ++k) {
      if (table.household_ids[k] == config.household) {
        const auto r = table.partition.u.row(k);
        row.assign(r.begin(), r.end());
      }
    }
    if (row.empty()) {
      throw DataError(memberships_path.string() + ": no household " + config.household);
    }
  }

  fs::create_directories(out_dir);
  OutputBatch batch;
  io::write_centroid_curves(batch.open(out_dir / "centroid_curves.csv"), model.centroids);
  if (!row.empty()) io::write_membership_bars(batch.open(out_dir / "membership_bars.csv"), row);
  batch.commit();

  log << "wrote " << model.centroids.rows() * model.centroids.cols() << " centroid curve rows\n";
  if (!row.empty()) {
    log << "household " << config.household << ": member of "
        << io::count_at_or_above(row, config.threshold) << " of " << row.size()
        << " clusters at or above " << config.threshold << '\n';
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fuzzyload: household load profiles, fuzzy clustering and personalised tariffs"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const RunConfig&, std::ostream&);
    std::vector<const char*> extra;
  };
  const std::vector<Command> commands = {
      {"ingest", "hourly readings -> normalized daily profiles", cmd_ingest, {}},
      {"cluster", "fuzzy c-means over profiles", cmd_cluster, {}},
      {"assign", "memberships of profiles against a saved model", cmd_assign, {"model"}},
      {"tariff", "membership-weighted personal tariffs, bills and rankings", cmd_tariff,
       {"offers", "usage", "bills", "rank-cluster", "min-membership", "ranking"}},
      {"drift", "per-month membership trajectories and target progress", cmd_drift,
       {"model", "target", "summary"}},
      {"export-plot", "long-form centroid curves and membership bars", cmd_export_plot,
       {"model", "memberships", "household", "threshold"}},
  };
  const std::vector<const char*> shared = {"seed",   "clusters", "fuzzifier",     "tolerance",
                                           "max-iter", "season", "day-type",      "in",
                                           "out",    "winter-months", "summer-months"};

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, bool> with_l1;
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : commands) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    subs[cmd.name] = sub;
    sub->add_option("--config", config_paths[cmd.name], "key=value or JSON config file");
    auto& store = values[cmd.name];
    for (const char* key : shared) sub->add_option(std::string("--") + key, store[key]);
    for (const char* key : cmd.extra) sub->add_option(std::string("--") + key, store[key]);
    if (std::string_view(cmd.name) == "drift") {
      sub->add_flag("--with-l1", with_l1[cmd.name], "append an l1_step column");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  for (const auto& cmd : commands) {
    auto* sub = subs[cmd.name];
    if (!sub->parsed()) continue;
    try {
      RunConfig config;
      if (sub->count("--config") > 0) {
        apply_settings(config, load_settings_file(config_paths[cmd.name]));
      }
      Settings flags;
      for (const auto& [key, value] : values[cmd.name]) {
        if (sub->count("--" + key) > 0) flags[key] = value;
      }
      if (with_l1[cmd.name]) flags["with-l1"] = "true";
      apply_settings(config, flags);
      validate(config);
      cmd.run(config, out);
      return kExitOk;
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const NumericalError& e) {
      err << "numerical failure: " << e.what() << '\n';
      return kExitNumerical;
    } catch (const DataError& e) {
      err << "data error: " << e.what() << '\n';
      return kExitData;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitData;
    }
  }
  return kExitUsage;
}

}  // namespace fuzzyload::cli
