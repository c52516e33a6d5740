#pragma once

// Membership-weighted blending of per-cluster time-of-use offers.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzyload/fcm.hpp"
#include "fuzzyload/ingest.hpp"

namespace fuzzyload {

using HourlyPrices = std::array<double, kHoursPerDay>;

struct TariffOffer {
  std::size_t cluster_id = 0;
  std::string label;
  HourlyPrices prices{};  // currency units per kWh, each >= 0
};

// One offer per cluster 0..c-1, stored in cluster order.
class OfferSet {
 public:
  // Throws std::invalid_argument on duplicate or missing cluster ids,
  // negative or non-finite prices, or an empty set.
  explicit OfferSet(std::vector<TariffOffer> offers);

  [[nodiscard]] std::size_t size() const noexcept { return offers_.size(); }
  [[nodiscard]] const TariffOffer& operator[](std::size_t cluster) const {
    return offers_.at(cluster);
  }
  [[nodiscard]] const std::vector<TariffOffer>& offers() const noexcept { return offers_; }

 private:
  std::vector<TariffOffer> offers_;
};

struct PersonalTariff {
  std::string household_id;
  HourlyPrices prices{};
  std::vector<double> membership;  // the (re-normalized) row used for the blend
};

// Tolerance on |sum(membership) - 1| accepted from inputs.
inline constexpr double kMembershipSumTolerance = 1e-6;

// prices[h] = sum_i membership[i] * offers[i].prices[h]. The membership row is
// re-normalized to sum exactly to 1 first. Throws std::invalid_argument when
// sizes disagree, an entry lies outside [0, 1], or the sum deviates by more
// than kMembershipSumTolerance.
PersonalTariff blend_tariff(const OfferSet& offers, std::span<const double> membership,
                            std::string household_id = {});

// sum_h usage[h] * prices[h]. Throws std::invalid_argument on negative usage.
double estimate_bill(std::span<const double, kHoursPerDay> usage, const PersonalTariff& tariff);

struct RankedHousehold {
  std::string household_id;
  double membership = 0.0;

  friend bool operator==(const RankedHousehold&, const RankedHousehold&) = default;
};

// Households with membership of `cluster` >= min_membership, by membership
// descending then household_id ascending.
std::vector<RankedHousehold> rank_households(const FuzzyPartition& u,
                                             const std::vector<std::string>& household_ids,
                                             std::size_t cluster, double min_membership);

}  // namespace fuzzyload
