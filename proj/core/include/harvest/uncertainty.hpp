#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "harvest/evolution.hpp"
#include "harvest/rng.hpp"
#include "harvest/types.hpp"

namespace harvest {

// One draw of a daily accumulation: independent Normal(mean, sd) per day,
// clipped at zero. Zero-sd days pass the mean through without consuming
// entropy.
GduAccumulation sample_accumulation(const GduForecast& forecast, Rng& rng);

struct WeeklyStats {
  std::vector<double> mean;
  std::vector<double> sd;  // sample std, n-1 denominator; zeros when n == 1
};

// Draws n_samples accumulations from the forecast (streams derived from
// `seed`, one per sample), rebuilds the full harvest matrix for each, and
// aggregates the weekly yield of `schedule` elementwise.
WeeklyStats bootstrap_weekly_stats(const Schedule& schedule,
                                   const GduForecast& forecast,
                                   std::span<const SpeciesRecord> species,
                                   const WeekMapping& weeks, int n_samples,
                                   std::uint64_t seed);

struct OvershootUndershoot {
  double overshoot = 0.0;   // sum of weekly excess over capacity
  double undershoot = 0.0;  // capacity shortfall, idle (zero) weeks excluded
};

OvershootUndershoot overshoot_undershoot(const WeeklyYield& weekly,
                                         double c_target);

// Reduction ratio 1 - x_opt / x_ref. By convention 1 when both are zero;
// empty when the reference is zero but the optimized value is not (the
// ratio has no meaning there, and callers encode that rather than throw).
std::optional<double> reduction_ratio(double x_opt, double x_ref);

// Peak weekly harvest; the smallest capacity the schedule could run under
// without overshooting.
double c_need(const WeeklyYield& weekly);

struct EvalReport {
  double c_target = 0.0;
  double c_need = 0.0;
  OvershootUndershoot opt;  // optimized schedule, mean-forecast accumulation
  OvershootUndershoot ref;  // reference schedule, same accumulation
  std::optional<double> r_overshoot;
  std::optional<double> r_undershoot;
  int n_active_weeks = 0;  // weeks the optimized schedule harvests in
  WeeklyStats weekly;      // bootstrap error bars for the optimized schedule
  int n_bootstrap = 0;
  std::uint64_t bootstrap_seed = 0;
};

// Full evaluation of an optimized schedule against a reference schedule
// (typically the growers' original planting). Point metrics use the
// forecast-mean accumulation; the bootstrap supplies weekly error bars.
EvalReport evaluate_schedules(const Schedule& optimized,
                              const Schedule& reference,
                              const GduForecast& forecast,
                              std::span<const SpeciesRecord> species,
                              const ScenarioSpec& scenario, int n_bootstrap,
                              std::uint64_t bootstrap_seed);

}  // namespace harvest
