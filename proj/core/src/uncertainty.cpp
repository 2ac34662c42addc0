#include "harvest/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "harvest/harvest_model.hpp"

namespace harvest {

GduAccumulation sample_accumulation(const GduForecast& forecast, Rng& rng) {
  if (forecast.mean.size() != forecast.sd.size()) {
    throw std::invalid_argument(
        "sample_accumulation: forecast mean/sd length mismatch");
  }
  GduAccumulation acc;
  acc.daily.reserve(forecast.mean.size());
  for (std::size_t i = 0; i < forecast.mean.size(); ++i) {
    acc.daily.push_back(
        std::max(0.0, draw_normal(rng, forecast.mean[i], forecast.sd[i])));
  }
  return acc;
}

WeeklyStats bootstrap_weekly_stats(const Schedule& schedule,
                                   const GduForecast& forecast,
                                   std::span<const SpeciesRecord> species,
                                   const WeekMapping& weeks, int n_samples,
                                   std::uint64_t seed) {
  if (n_samples < 1) {
    throw std::domain_error(
        "bootstrap_weekly_stats: need at least one sample");
  }
  const std::size_t n_weeks = static_cast<std::size_t>(weeks.n_weeks);
  std::vector<std::vector<double>> draws;
  draws.reserve(static_cast<std::size_t>(n_samples));
  for (int s = 0; s < n_samples; ++s) {
    Rng rng = make_stream_rng(seed, static_cast<std::uint64_t>(s));
    const GduAccumulation acc = sample_accumulation(forecast, rng);
    const HarvestMatrix matrix = build_harvest_matrix(acc, species);
    draws.push_back(
        weekly_yield(schedule, matrix, species, weeks).weekly.per_week);
  }

  WeeklyStats stats;
  stats.mean.assign(n_weeks, 0.0);
  stats.sd.assign(n_weeks, 0.0);
  // Shifted by the first draw so identical draws (a zero-spread forecast)
  // produce exactly zero mean drift and spread.
  const std::vector<double>& first = draws.front();
  for (const auto& d : draws) {
    for (std::size_t w = 0; w < n_weeks; ++w) stats.mean[w] += d[w] - first[w];
  }
  for (std::size_t w = 0; w < n_weeks; ++w) {
    stats.mean[w] = first[w] + stats.mean[w] / static_cast<double>(n_samples);
  }
  if (n_samples > 1) {
    for (const auto& d : draws) {
      for (std::size_t w = 0; w < n_weeks; ++w) {
        const double dev = d[w] - stats.mean[w];
        stats.sd[w] += dev * dev;
      }
    }
    for (std::size_t w = 0; w < n_weeks; ++w) {
      stats.sd[w] = std::sqrt(stats.sd[w] / static_cast<double>(n_samples - 1));
    }
  }
  return stats;
}

OvershootUndershoot overshoot_undershoot(const WeeklyYield& weekly,
                                         double c_target) {
  if (!(c_target > 0.0)) {
    throw std::domain_error(
        "overshoot_undershoot: capacity must be positive");
  }
  OvershootUndershoot r;
  for (double h : weekly.per_week) {
    if (h > c_target) {
      r.overshoot += h - c_target;
    } else if (h > 0.0) {
      r.undershoot += c_target - h;
    }
  }
  return r;
}

std::optional<double> reduction_ratio(double x_opt, double x_ref) {
  if (x_ref > 0.0) return 1.0 - x_opt / x_ref;
  if (x_opt == 0.0) return 1.0;
  return std::nullopt;
}

double c_need(const WeeklyYield& weekly) {
  double peak = 0.0;
  for (double h : weekly.per_week) peak = std::max(peak, h);
  return peak;
}

EvalReport evaluate_schedules(const Schedule& optimized,
                              const Schedule& reference,
                              const GduForecast& forecast,
                              std::span<const SpeciesRecord> species,
                              const ScenarioSpec& scenario, int n_bootstrap,
                              std::uint64_t bootstrap_seed) {
  GduAccumulation mean_acc;
  mean_acc.daily.reserve(forecast.mean.size());
  for (double m : forecast.mean) mean_acc.daily.push_back(std::max(0.0, m));

  const HarvestMatrix matrix = build_harvest_matrix(mean_acc, species);
  const WeekMapping weeks = build_week_mapping(
      matrix.d_max(), scenario.week_delta,
      scenario.cyclic_weeks ? WeekKind::kCyclic : WeekKind::kOneShot);

  const WeeklyYield opt_weekly =
      weekly_yield(optimized, matrix, species, weeks).weekly;
  const WeeklyYield ref_weekly =
      weekly_yield(reference, matrix, species, weeks).weekly;

  const int reachable = scenario.kind == ScenarioKind::kReachableShare
                            ? count_reachable_weeks(matrix, weeks)
                            : 0;
  EvalReport rep;
  rep.c_target =
      infer_capacity(scenario, total_yield(species), opt_weekly, reachable);
  rep.c_need = c_need(opt_weekly);
  rep.opt = overshoot_undershoot(opt_weekly, rep.c_target);
  rep.ref = overshoot_undershoot(ref_weekly, rep.c_target);
  rep.r_overshoot = reduction_ratio(rep.opt.overshoot, rep.ref.overshoot);
  rep.r_undershoot = reduction_ratio(rep.opt.undershoot, rep.ref.undershoot);
  for (double h : opt_weekly.per_week) {
    if (h > 0.0) ++rep.n_active_weeks;
  }
  rep.weekly = bootstrap_weekly_stats(optimized, forecast, species, weeks,
                                      n_bootstrap, bootstrap_seed);
  rep.n_bootstrap = n_bootstrap;
  rep.bootstrap_seed = bootstrap_seed;
  return rep;
}

}  // namespace harvest
