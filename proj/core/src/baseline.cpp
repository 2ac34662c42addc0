#include "harvest/baseline.hpp"

#include <stdexcept>

namespace harvest {

BaselineResult run_weighted_sum_es(const EsConfig& config, double lambda,
                                   const HarvestMatrix& matrix,
                                   std::span<const SpeciesRecord> species,
                                   const WeekMapping& weeks) {
  if (lambda < 0.0) {
    throw std::invalid_argument("run_weighted_sum_es: negative lambda");
  }
  if (config.generations < 0) {
    throw std::invalid_argument("run_weighted_sum_es: negative budget");
  }
  const double total = total_yield(species);
  const bool adaptive_c =
      config.scenario.kind == ScenarioKind::kActiveWeekShare;
  const int reachable =
      config.scenario.kind == ScenarioKind::kReachableShare
          ? count_reachable_weeks(matrix, weeks)
          : 0;
  const auto scalar = [lambda](const LossVector& v) {
    return v.l_plus + lambda * v.l_minus;
  };

  Rng rng = make_rng(config.seed);
  BaselineResult res;
  res.method = "weighted_sum_es";
  res.best = init_schedule(species, rng);
  WeeklyYield parent_weekly =
      weekly_yield(res.best, matrix, species, weeks).weekly;
  double c = infer_capacity(config.scenario, total, parent_weekly, reachable);
  res.best_loss = loss_vector(parent_weekly, c);
  res.evaluations = 1;

  std::int64_t stagnation = 0;
  for (std::int64_t gen = 1; gen <= config.generations; ++gen) {
    const double rate =
        mutation_rate(stagnation, species.size(), config.rho_max,
                      config.omega);
    Schedule child = mutate_schedule(res.best, rate, species, rng);
    WeeklyYield child_weekly =
        weekly_yield(child, matrix, species, weeks).weekly;
    const LossVector child_loss = loss_vector(child_weekly, c);
    ++res.evaluations;

    const double child_s = scalar(child_loss);
    const double parent_s = scalar(res.best_loss);
    if (child_s <= parent_s) {
      res.best = std::move(child);
      parent_weekly = std::move(child_weekly);
      if (adaptive_c) {
        c = infer_capacity(config.scenario, total, parent_weekly, reachable);
        res.best_loss = loss_vector(parent_weekly, c);
      } else {
        res.best_loss = child_loss;
      }
      if (child_s < parent_s) stagnation = 0;
    } else {
      ++stagnation;
    }
  }
  return res;
}

BaselineResult run_random_search(const EsConfig& config, std::int64_t budget,
                                 const HarvestMatrix& matrix,
                                 std::span<const SpeciesRecord> species,
                                 const WeekMapping& weeks) {
  if (budget < 1) {
    throw std::invalid_argument(
        "run_random_search: need at least one evaluation");
  }
  const double total = total_yield(species);
  const int reachable =
      config.scenario.kind == ScenarioKind::kReachableShare
          ? count_reachable_weeks(matrix, weeks)
          : 0;

  Rng rng = make_rng(config.seed);
  BaselineResult res;
  res.method = "random_search";
  for (std::int64_t i = 0; i < budget; ++i) {
    Schedule cand = init_schedule(species, rng);
    const WeeklyYield weekly =
        weekly_yield(cand, matrix, species, weeks).weekly;
    const double c =
        infer_capacity(config.scenario, total, weekly, reachable);
    const LossVector loss = loss_vector(weekly, c);
    ++res.evaluations;
    if (i == 0 ||
        compare_loss(loss, res.best_loss) == LossOrder::kFirstBetter) {
      res.best = std::move(cand);
      res.best_loss = loss;
    }
  }
  return res;
}

}  // namespace harvest
