#include "fuzzyload/tariff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fuzzyload {

OfferSet::OfferSet(std::vector<TariffOffer> offers) {
  if (offers.empty()) throw std::invalid_argument("offer set is empty");
  std::sort(offers.begin(), offers.end(),
            [](const TariffOffer& a, const TariffOffer& b) { return a.cluster_id < b.cluster_id; });
  for (std::size_t i = 0; i < offers.size(); ++i) {
    if (offers[i].cluster_id != i) {
      if (i > 0 && offers[i].cluster_id == offers[i - 1].cluster_id) {
        throw std::invalid_argument("duplicate offer for cluster " + std::to_string(i - 1));
      }
      throw std::invalid_argument("offer set has no offer for cluster " + std::to_string(i));
    }
    for (double p : offers[i].prices) {
      if (!std::isfinite(p) || p < 0.0) {
        throw std::invalid_argument("offer for cluster " + std::to_string(i) +
                                    " has a negative or non-finite price");
      }
    }
  }
  offers_ = std::move(offers);
}

PersonalTariff blend_tariff(const OfferSet& offers, std::span<const double> membership,
                            std::string household_id) {
  if (membership.size() != offers.size()) {
    throw std::invalid_argument("membership row has " + std::to_string(membership.size()) +
                                " entries but offer set covers " + std::to_string(offers.size()) +
                                " clusters");
  }
  double sum = 0.0;
  for (double u : membership) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("membership entry outside [0, 1]");
    sum += u;
  }
  if (std::abs(sum - 1.0) > kMembershipSumTolerance) {
    throw std::invalid_argument("membership row is not row-stochastic (sum = " +
                                std::to_string(sum) + ")");
  }

  PersonalTariff t;
  t.household_id = std::move(household_id);
  t.membership.assign(membership.begin(), membership.end());
  if (sum != 1.0) {
    for (auto& u : t.membership) u /= sum;
  }

  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    double price = 0.0;
    double lo = offers[0].prices[h];
    double hi = lo;
    for (std::size_t i = 0; i < offers.size(); ++i) {
      const double p = offers[i].prices[h];
      price += t.membership[i] * p;
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    t.prices[h] = std::clamp(price, lo, hi);
  }
  return t;
}

double estimate_bill(std::span<const double, kHoursPerDay> usage, const PersonalTariff& tariff) {
  double total = 0.0;
  for (std::size_t h = 0; h < kHoursPerDay; ++h) {
    if (!(usage[h] >= 0.0)) throw std::invalid_argument("negative usage at hour " + std::to_string(h));
    total += usage[h] * tariff.prices[h];
  }
  return total;
}

std::vector<RankedHousehold> rank_households(const FuzzyPartition& u,
                                             const std::vector<std::string>& household_ids,
                                             std::size_t cluster, double min_membership) {
  if (cluster >= u.clusters()) {
    throw std::invalid_argument("cluster " + std::to_string(cluster) + " out of range (c = " +
                                std::to_string(u.clusters()) + ")");
  }
  if (household_ids.size() != u.points()) {
    throw std::invalid_argument("household id count does not match partition rows");
  }
  if (!(min_membership >= 0.0 && min_membership <= 1.0)) {
    throw std::invalid_argument("min_membership must lie in [0, 1]");
  }
  std::vector<RankedHousehold> out;
  for (std::size_t k = 0; k < u.points(); ++k) {
    const double w = u.u(k, cluster);
    if (w >= min_membership) out.push_back({household_ids[k], w});
  }
  std::sort(out.begin(), out.end(), [](const RankedHousehold& a, const RankedHousehold& b) {
    if (a.membership != b.membership) return a.membership > b.membership;
    return a.household_id < b.household_id;
  });
  return out;
}

}  // namespace fuzzyload
