#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "fuzzyload/fcm.hpp"
#include "fuzzyload/kmeans.hpp"
#include "fuzzyload/rng.hpp"
#include "fuzzyload/tariff.hpp"

namespace {

using namespace fuzzyload;

ProfileMatrix random_profiles(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> data(n * kHoursPerDay);
  for (double& v : data) v = rng.uniform();
  return {Matrix(n, kHoursPerDay, std::move(data)), std::vector<std::string>(n, "h")};
}

void BM_RunFcm(benchmark::State& state) {
  const auto x = random_profiles(static_cast<std::size_t>(state.range(0)), 1);
  FcmConfig cfg;
  cfg.clusters = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    auto r = run_fcm(x, cfg);
    benchmark::DoNotOptimize(r.model.objective);
  }
}
BENCHMARK(BM_RunFcm)->Args({93, 9})->Args({1000, 9})->Unit(benchmark::kMillisecond);

void BM_UpdateMemberships(benchmark::State& state) {
  const auto x = random_profiles(static_cast<std::size_t>(state.range(0)), 2);
  const auto v = random_profiles(9, 3);
  for (auto _ : state) {
    auto u = update_memberships(x.values, v.values, 2.0);
    benchmark::DoNotOptimize(u.u(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_UpdateMemberships)->Arg(93)->Arg(10000);

void BM_KMeans(benchmark::State& state) {
  const auto x = random_profiles(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) {
    auto r = kmeans_baseline(x, 9, 0, 300);
    benchmark::DoNotOptimize(r.iterations);
  }
}
BENCHMARK(BM_KMeans)->Arg(93)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BlendTariff(benchmark::State& state) {
  std::vector<TariffOffer> list;
  for (std::size_t i = 0; i < 9; ++i) {
    TariffOffer offer{i, "offer", {}};
    offer.prices.fill(10.0 + static_cast<double>(i));
    list.push_back(offer);
  }
  const OfferSet offers(list);
  const std::vector<double> u(9, 1.0 / 9.0);
  for (auto _ : state) {
    auto t = blend_tariff(offers, u);
    benchmark::DoNotOptimize(t.prices[0]);
  }
}
BENCHMARK(BM_BlendTariff);

}  // namespace

BENCHMARK_MAIN();
