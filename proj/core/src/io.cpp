#include "fuzzyload/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "fuzzyload/csv.hpp"
#include "fuzzyload/error.hpp"

namespace fuzzyload::io {

namespace {

using csv::format_double;

std::string hour_header(char prefix) {
  std::string out;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    out += ',';
    out += csv::hour_column(prefix, h);
  }
  return out;
}

std::string membership_header(std::size_t clusters) {
  std::string out;
  for (std::size_t i = 0; i < clusters; ++i) out += ",u" + std::to_string(i);
  return out;
}

void expect_header(csv::LineReader& reader, const std::string& expected) {
  std::string line;
  if (!reader.next(line)) throw ParseError("missing header `" + expected + "`", 1);
  if (line != expected) {
    throw ParseError("unexpected header `" + line + "`, expected `" + expected + "`",
                     reader.line_number());
  }
}

double field_double(std::string_view text, std::size_t line, const char* what) {
  const auto v = csv::parse_double(text);
  if (!v || !std::isfinite(*v)) {
    throw ParseError(std::string("unparseable ") + what + " `" + std::string(text) + "`", line);
  }
  return *v;
}

std::size_t field_index(std::string_view text, std::size_t line, const char* what) {
  const auto v = csv::parse_unsigned(text);
  if (!v) throw ParseError(std::string("unparseable ") + what + " `" + std::string(text) + "`", line);
  return static_cast<std::size_t>(*v);
}

// Reads `household_id,<24 hourly values>` style rows.
template <typename Row>
void read_hourly_rows(csv::LineReader& reader, std::vector<Row>& out, const char* what,
                      std::size_t leading) {
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const std::size_t n = reader.line_number();
    const auto fields = csv::split(line);
    if (fields.size() != leading + kHoursPerDay) {
      throw ParseError("expected " + std::to_string(leading + kHoursPerDay) + " columns, found " +
                           std::to_string(fields.size()),
                       n);
    }
    out.emplace_back();
    out.back().household_id = std::string(fields[0]);
    if (out.back().household_id.empty()) throw ParseError("empty household_id", n);
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      out.back().kwh[h] = field_double(fields[leading + h], n, what);
    }
  }
}

}  // namespace

void write_profiles(std::ostream& out, const std::vector<DailyProfile>& profiles) {
  out << "household_id,season,day_type,day_count" << hour_header('h') << '\n';
  for (const auto& p : profiles) {
    out << p.household_id << ',' << to_string(p.season) << ',' << to_string(p.day_type) << ','
        << p.day_count;
    for (double v : p.values) out << ',' << format_double(v);
    out << '\n';
  }
}

std::vector<DailyProfile> read_profiles(std::istream& in) {
  csv::LineReader reader(in);
  expect_header(reader, "household_id,season,day_type,day_count" + hour_header('h'));
  std::vector<DailyProfile> out;
  std::set<std::pair<std::string, std::pair<int, int>>> seen;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const std::size_t n = reader.line_number();
    const auto fields = csv::split(line);
    if (fields.size() != 4 + kHoursPerDay) {
      throw ParseError("expected " + std::to_string(4 + kHoursPerDay) + " columns, found " +
                           std::to_string(fields.size()),
                       n);
    }
    DailyProfile p;
    p.household_id = std::string(fields[0]);
    if (p.household_id.empty()) throw ParseError("empty household_id", n);
    const auto season = parse_season(fields[1]);
    const auto day_type = parse_day_type(fields[2]);
    if (!season) throw ParseError("unknown season `" + std::string(fields[1]) + "`", n);
    if (!day_type) throw ParseError("unknown day_type `" + std::string(fields[2]) + "`", n);
    p.season = *season;
    p.day_type = *day_type;
    p.day_count = field_index(fields[3], n, "day_count");
    if (p.day_count < 1) throw ParseError("day_count must be >= 1", n);
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      p.values[h] = field_double(fields[4 + h], n, "profile value");
      if (p.values[h] < 0.0 || p.values[h] > 1.0) {
        throw ParseError("profile value outside [0, 1]", n);
      }
    }
    if (!seen.insert({p.household_id, {static_cast<int>(p.season), static_cast<int>(p.day_type)}})
             .second) {
      throw ParseError("duplicate profile for household " + p.household_id + " in segment", n);
    }
    out.push_back(std::move(p));
  }
  return out;
}

ProfileMatrix to_profile_matrix(const std::vector<DailyProfile>& profiles) {
  ProfileMatrix x{Matrix(profiles.size(), kHoursPerDay), {}};
  x.household_ids.reserve(profiles.size());
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    std::copy(profiles[k].values.begin(), profiles[k].values.end(), x.values.row(k).begin());
    x.household_ids.push_back(profiles[k].household_id);
  }
  return x;
}

void write_model(std::ostream& out, const ClusterModel& model) {
  if (model.centroids.cols() != kHoursPerDay) {
    throw std::invalid_argument("model export requires 24-hour centroids");
  }
  out << "cluster_id" << hour_header('h') << '\n';
  for (std::size_t i = 0; i < model.centroids.rows(); ++i) {
    out << i;
    for (double v : model.centroids.row(i)) out << ',' << format_double(v);
    out << '\n';
  }
}

Matrix read_model_centroids(std::istream& in) {
  csv::LineReader reader(in);
  expect_header(reader, "cluster_id" + hour_header('h'));
  Matrix centroids;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const std::size_t n = reader.line_number();
    const auto fields = csv::split(line);
    if (fields.size() != 1 + kHoursPerDay) {
      throw ParseError("expected " + std::to_string(1 + kHoursPerDay) + " columns, found " +
                           std::to_string(fields.size()),
                       n);
    }
    if (field_index(fields[0], n, "cluster_id") != centroids.rows()) {
      throw ParseError("cluster ids must be 0..c-1 in order", n);
    }
    std::array<double, kHoursPerDay> row{};
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      row[h] = field_double(fields[1 + h], n, "centroid value");
    }
    centroids.append_row(row);
  }
  if (centroids.rows() == 0) throw DataError("model file has no centroids");
  return centroids;
}

void write_memberships(std::ostream& out, const std::vector<std::string>& household_ids,
                       const FuzzyPartition& partition) {
  if (household_ids.size() != partition.points()) {
    throw std::invalid_argument("household id count does not match partition rows");
  }
  out << "household_id" << membership_header(partition.clusters()) << '\n';
  for (std::size_t k = 0; k < partition.points(); ++k) {
    out << household_ids[k];
    for (double v : partition.u.row(k)) out << ',' << format_double(v);
    out << '\n';
  }
}

MembershipTable read_memberships(std::istream& in) {
  csv::LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ParseError("missing membership header", 1);
  const auto header = csv::split(line);
  if (header.size() < 2 || header[0] != "household_id") {
    throw ParseError("unexpected membership header `" + line + "`", 1);
  }
  const std::size_t c = header.size() - 1;
  if (line != "household_id" + membership_header(c)) {
    throw ParseError("unexpected membership header `" + line + "`", 1);
  }

  MembershipTable table;
  std::vector<double> values;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const std::size_t n = reader.line_number();
    const auto fields = csv::split(line);
    if (fields.size() != c + 1) {
      throw ParseError("expected " + std::to_string(c + 1) + " columns, found " +
                           std::to_string(fields.size()),
                       n);
    }
    if (fields[0].empty()) throw ParseError("empty household_id", n);
    table.household_ids.emplace_back(fields[0]);
    for (std::size_t i = 0; i < c; ++i) {
      const double u = field_double(fields[1 + i], n, "membership");
      if (u < 0.0 || u > 1.0) throw ParseError("membership outside [0, 1]", n);
      values.push_back(u);
    }
  }
  table.partition.u = Matrix(table.household_ids.size(), c, std::move(values));
  return table;
}

void write_run_metadata(std::ostream& out, const FcmConfig& cfg, const ClusterModel& model) {
  nlohmann::ordered_json j;
  j["c"] = cfg.clusters;
  j["m"] = cfg.fuzzifier;
  j["tol"] = cfg.tolerance;
  j["max_iter"] = cfg.max_iter;
  j["seed"] = cfg.seed;
  j["iterations"] = model.iterations;
  j["objective"] = model.objective;
  j["converged"] = model.converged;
  auto empty = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < model.empty_clusters.size(); ++i) {
    if (model.empty_clusters[i]) empty.push_back(i);
  }
  j["empty_clusters"] = empty;
  out << j.dump(2) << '\n';
}

RunMetadata read_run_metadata(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    RunMetadata meta;
    meta.config.clusters = j.at("c").get<std::size_t>();
    meta.config.fuzzifier = j.at("m").get<double>();
    meta.config.tolerance = j.at("tol").get<double>();
    meta.config.max_iter = j.at("max_iter").get<std::size_t>();
    meta.config.seed = j.at("seed").get<std::uint64_t>();
    meta.iterations = j.at("iterations").get<std::size_t>();
    meta.objective = j.at("objective").get<double>();
    meta.converged = j.at("converged").get<bool>();
    if (j.contains("empty_clusters")) {
      meta.empty_clusters = j.at("empty_clusters").get<std::vector<std::size_t>>();
    }
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid run metadata: ") + e.what());
  }
}

OfferSet read_offers(std::istream& in) {
  csv::LineReader reader(in);
  expect_header(reader, "cluster_id,label" + hour_header('p'));
  std::vector<TariffOffer> offers;
  std::string line;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const std::size_t n = reader.line_number();
    const auto fields = csv::split(line);
    if (fields.size() != 2 + kHoursPerDay) {
      throw ParseError("expected " + std::to_string(2 + kHoursPerDay) + " columns, found " +
                           std::to_string(fields.size()),
                       n);
    }
    TariffOffer o;
    o.cluster_id = field_index(fields[0], n, "cluster_id");
    o.label = std::string(fields[1]);
    for (std::size_t h = 0; h < kHoursPerDay; ++h) {
      o.prices[h] = field_double(fields[2 + h], n, "price");
      if (o.prices[h] < 0.0) throw ParseError("negative price", n);
    }
    offers.push_back(std::move(o));
  }
  try {
    return OfferSet(std::move(offers));
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
}

void write_offers(std::ostream& out, const OfferSet& offers) {
  out << "cluster_id,label" << hour_header('p') << '\n';
  for (const auto& o : offers.offers()) {
    out << o.cluster_id << ',' << o.label;
    for (double p : o.prices) out << ',' << format_double(p);
    out << '\n';
  }
}

void write_personal_tariffs(std::ostream& out, const std::vector<PersonalTariff>& tariffs) {
  out << "household_id" << hour_header('p') << '\n';
  for (const auto& t : tariffs) {
    out << t.household_id;
    for (double p : t.prices) out << ',' << format_double(p);
    out << '\n';
  }
}

std::vector<UsageRow> read_usage(std::istream& in) {
  csv::LineReader reader(in);
  expect_header(reader, "household_id" + hour_header('h'));
  std::vector<UsageRow> rows;
  read_hourly_rows(reader, rows, "usage", 1);
  for (const auto& r : rows) {
    for (double v : r.kwh) {
      if (v < 0.0) throw DataError("negative usage for household " + r.household_id);
    }
  }
  return rows;
}

void write_bills(std::ostream& out, const std::vector<BillRow>& bills) {
  out << "household_id,amount\n";
  for (const auto& b : bills) out << b.household_id << ',' << format_double(b.amount) << '\n';
}

void write_ranking(std::ostream& out, const std::vector<RankedHousehold>& ranking) {
  out << "household_id,membership\n";
  for (const auto& r : ranking) out << r.household_id << ',' << format_double(r.membership) << '\n';
}

void write_drift_report(std::ostream& out, const std::vector<DriftReport>& reports,
                        std::size_t clusters, bool with_l1) {
  out << "household_id,period" << membership_header(clusters) << ",target_delta"
      << (with_l1 ? ",l1_step" : "") << '\n';
  for (const auto& r : reports) {
    for (std::size_t t = 0; t < r.trajectory.size(); ++t) {
      const auto& point = r.trajectory[t];
      out << r.household_id << ',' << point.period_label;
      for (double u : point.membership) out << ',' << format_double(u);
      out << ',' << format_double(t == 0 ? 0.0 : r.deltas[t - 1]);
      if (with_l1) out << ',' << format_double(t == 0 ? 0.0 : r.l1_steps[t - 1]);
      out << '\n';
    }
  }
}

void write_drift_summary(std::ostream& out, const std::vector<DriftReport>& reports) {
  out << "household_id,net_progress\n";
  for (const auto& r : reports) out << r.household_id << ',' << format_double(r.net_progress) << '\n';
}

void write_centroid_curves(std::ostream& out, const Matrix& centroids) {
  out << "cluster_id,hour,value\n";
  for (std::size_t i = 0; i < centroids.rows(); ++i) {
    for (std::size_t h = 0; h < centroids.cols(); ++h) {
      out << i << ',' << h << ',' << format_double(centroids(i, h)) << '\n';
    }
  }
}

void write_membership_bars(std::ostream& out, const std::vector<double>& membership) {
  out << "cluster_id,membership\n";
  for (std::size_t i = 0; i < membership.size(); ++i) {
    out << i << ',' << format_double(membership[i]) << '\n';
  }
}

std::size_t count_at_or_above(const std::vector<double>& membership, double threshold) {
  return static_cast<std::size_t>(std::count_if(membership.begin(), membership.end(),
                                                [threshold](double u) { return u >= threshold; }));
}

}  // namespace fuzzyload::io
