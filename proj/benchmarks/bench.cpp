#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "harvest/datagen.hpp"
#include "harvest/evolution.hpp"
#include "harvest/gpr.hpp"
#include "harvest/harvest_model.hpp"
#include "harvest/loss.hpp"
#include "harvest/uncertainty.hpp"

using namespace harvest;

namespace {

struct BenchData {
  std::vector<SpeciesRecord> species;
  GduAccumulation acc;
  HarvestMatrix matrix;
  WeekMapping weeks;
  Schedule schedule;
  GduForecast forecast;
};

BenchData make_bench_data(int n_species) {
  SiteProfile site;
  site.n_species = n_species;
  const HorizonSpec horizon{{2020, 1, 1}, 400};
  GduAccumulation acc = reference_accumulation(site, 2009, horizon);
  Rng rng = make_rng(1);
  std::vector<SpeciesRecord> species =
      gen_species_table(site, YieldSpec{}, horizon, acc, 110.0, 215.0, rng);
  HarvestMatrix matrix = build_harvest_matrix(acc, species);
  WeekMapping weeks = build_week_mapping(acc.d_max(), 0, WeekKind::kOneShot);
  Schedule schedule = init_schedule(species, rng);
  GduForecast forecast;
  forecast.horizon_start = horizon.start;
  forecast.mean = acc.daily;
  forecast.sd.assign(acc.daily.size(), 1.5);
  return {std::move(species), std::move(acc),      std::move(matrix),
          std::move(weeks),   std::move(schedule), std::move(forecast)};
}

void BM_BuildHarvestMatrix(benchmark::State& state) {
  const BenchData d = make_bench_data(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_harvest_matrix(d.acc, d.species));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildHarvestMatrix)->Arg(200)->Arg(1375);

void BM_WeeklyYield(benchmark::State& state) {
  const BenchData d = make_bench_data(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        weekly_yield(d.schedule, d.matrix, d.species, d.weeks));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeeklyYield)->Arg(200)->Arg(1375);

void BM_LossVector(benchmark::State& state) {
  const BenchData d = make_bench_data(1375);
  const WeeklyYield weekly =
      weekly_yield(d.schedule, d.matrix, d.species, d.weeks).weekly;
  const double c = total_yield(d.species) / 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss_vector(weekly, c));
  }
}
BENCHMARK(BM_LossVector);

void BM_EsGenerations(benchmark::State& state) {
  const BenchData d = make_bench_data(static_cast<int>(state.range(0)));
  EsConfig cfg;
  cfg.generations = 1000;
  cfg.scenario.kind = ScenarioKind::kFixedCapacity;
  cfg.scenario.fixed_capacity = total_yield(d.species) / 20.0;
  for (auto _ : state) {
    cfg.seed = static_cast<std::uint64_t>(state.iterations());
    benchmark::DoNotOptimize(
        run_one_plus_one_es(cfg, d.matrix, d.species, d.weeks));
  }
  state.SetItemsProcessed(state.iterations() * cfg.generations);
}
BENCHMARK(BM_EsGenerations)->Arg(200)->Arg(1375);

void BM_SampleAccumulation(benchmark::State& state) {
  const BenchData d = make_bench_data(200);
  Rng rng = make_rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_accumulation(d.forecast, rng));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(d.forecast.mean.size()));
}
BENCHMARK(BM_SampleAccumulation);

void BM_GprPredict(benchmark::State& state) {
  std::vector<double> t, y;
  for (int i = 0; i < 487; ++i) {
    const double ti = 3.0 * i / 365.0;
    t.push_back(ti);
    y.push_back(12.0 + 9.5 * std::sin(2.0 * std::numbers::pi * ti));
  }
  const GprModel model({2.0, 1.0, 0.01, 4.0, 0.5}, t, y, t.back() / 2.0);
  std::vector<double> query;
  for (int k = 0; k < 400; ++k) query.push_back(4.0 + k / 365.0);
  std::vector<double> mean, sd;
  for (auto _ : state) {
    model.predict(query, mean, sd);
    benchmark::DoNotOptimize(mean.data());
    benchmark::DoNotOptimize(sd.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(query.size()));
}
BENCHMARK(BM_GprPredict);

}  // namespace

BENCHMARK_MAIN();
