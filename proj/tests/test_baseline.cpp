#include <doctest.h>

#include <limits>
#include <stdexcept>
#include <vector>

#include "harvest/baseline.hpp"
#include "harvest/harvest_model.hpp"
#include "harvest/loss.hpp"
#include "test_support.hpp"

using namespace harvest;
using test_support::brute_force_best_loss;
using test_support::constant_accumulation;
using test_support::species;

namespace {

// Two species at 3 GDU/day with windows [0, 6]: 49 enumerable schedules whose
// harvests (plant+6 and plant+13) slide across the week-0/1/2 boundaries.
struct PairInstance {
  std::vector<SpeciesRecord> sp = {species("a", 0, 6, 21.0, 100.0),
                                   species("b", 0, 6, 42.0, 60.0)};
  GduAccumulation acc = constant_accumulation(70, 3.0);
  HarvestMatrix matrix = build_harvest_matrix(acc, sp);
  WeekMapping weeks = build_week_mapping(70, 0, WeekKind::kOneShot);
};

double scalar_loss(const LossVector& v, double lambda) {
  return v.l_plus + lambda * v.l_minus;
}

// Exhaustive minimum of the weighted-sum objective.
double brute_force_scalar_min(const PairInstance& in, double capacity,
                              double lambda) {
  double best = std::numeric_limits<double>::infinity();
  for (int pa = 0; pa <= 6; ++pa) {
    for (int pb = 0; pb <= 6; ++pb) {
      Schedule s;
      s.plant_day = {DayIndex(pa), DayIndex(pb)};
      const LossVector loss =
          loss_vector(weekly_yield(s, in.matrix, in.sp, in.weeks).weekly,
                      capacity);
      best = std::min(best, scalar_loss(loss, lambda));
    }
  }
  return best;
}

EsConfig pair_config(std::uint64_t seed, std::int64_t generations) {
  EsConfig cfg;
  cfg.generations = generations;
  cfg.seed = seed;
  cfg.rho_max = 0.5;  // floor for a two-gene genome
  cfg.scenario.kind = ScenarioKind::kFixedCapacity;
  cfg.scenario.fixed_capacity = 110.0;
  return cfg;
}

}  // namespace

TEST_CASE("weighted-sum search reaches the exhaustive scalar optimum") {
  const PairInstance in;
  for (const double lambda : {0.0, 1.0}) {
    const double target = brute_force_scalar_min(in, 110.0, lambda);
    const EsConfig cfg = pair_config(7, 20000);
    const BaselineResult res =
        run_weighted_sum_es(cfg, lambda, in.matrix, in.sp, in.weeks);
    CHECK(res.method == "weighted_sum_es");
    CHECK(res.evaluations == 20001);
    CHECK(scalar_loss(res.best_loss, lambda) == target);
  }
}

TEST_CASE("weighted-sum search reports the hierarchical loss of its parent") {
  const PairInstance in;
  const EsConfig cfg = pair_config(3, 500);
  const BaselineResult res =
      run_weighted_sum_es(cfg, 0.25, in.matrix, in.sp, in.weeks);
  const LossVector direct = loss_vector(
      weekly_yield(res.best, in.matrix, in.sp, in.weeks).weekly, 110.0);
  CHECK(res.best_loss.l_plus == direct.l_plus);
  CHECK(res.best_loss.l_minus == direct.l_minus);
  CHECK(validate_schedule(res.best, in.sp).empty());
}

TEST_CASE("weighted-sum search is deterministic and validates its inputs") {
  const PairInstance in;
  const EsConfig cfg = pair_config(11, 300);
  const BaselineResult a =
      run_weighted_sum_es(cfg, 0.5, in.matrix, in.sp, in.weeks);
  const BaselineResult b =
      run_weighted_sum_es(cfg, 0.5, in.matrix, in.sp, in.weeks);
  CHECK(a.best.plant_day == b.best.plant_day);
  CHECK(a.best_loss.l_plus == b.best_loss.l_plus);
  CHECK(a.best_loss.l_minus == b.best_loss.l_minus);

  CHECK_THROWS_AS(run_weighted_sum_es(cfg, -1.0, in.matrix, in.sp, in.weeks),
                  std::invalid_argument);
  EsConfig bad = cfg;
  bad.generations = -1;
  CHECK_THROWS_AS(run_weighted_sum_es(bad, 0.5, in.matrix, in.sp, in.weeks),
                  std::invalid_argument);
}

TEST_CASE("weighted-sum search re-derives adaptive capacity from its parent") {
  const PairInstance in;
  EsConfig cfg = pair_config(5, 400);
  cfg.scenario.kind = ScenarioKind::kActiveWeekShare;
  const BaselineResult res =
      run_weighted_sum_es(cfg, 1.0, in.matrix, in.sp, in.weeks);

  const WeeklyYield weekly =
      weekly_yield(res.best, in.matrix, in.sp, in.weeks).weekly;
  const double c =
      infer_capacity(cfg.scenario, total_yield(in.sp), weekly, 0);
  const LossVector direct = loss_vector(weekly, c);
  CHECK(res.best_loss.l_plus == direct.l_plus);
  CHECK(res.best_loss.l_minus == direct.l_minus);
}

TEST_CASE("random search with budget one returns the first uniform draw") {
  const PairInstance in;
  const EsConfig cfg = pair_config(21, 0);
  const BaselineResult res =
      run_random_search(cfg, 1, in.matrix, in.sp, in.weeks);
  CHECK(res.method == "random_search");
  CHECK(res.evaluations == 1);

  Rng rng = make_rng(21);
  const Schedule expect = init_schedule(in.sp, rng);
  CHECK(res.best.plant_day == expect.plant_day);

  CHECK_THROWS_AS(run_random_search(cfg, 0, in.matrix, in.sp, in.weeks),
                  std::invalid_argument);
}

TEST_CASE("random search finds the lexicographic optimum on a tiny instance") {
  const PairInstance in;
  const LossVector target =
      brute_force_best_loss(in.matrix, in.sp, in.weeks, 110.0);
  const EsConfig cfg = pair_config(13, 0);
  const BaselineResult res =
      run_random_search(cfg, 5000, in.matrix, in.sp, in.weeks);
  CHECK(res.evaluations == 5000);
  CHECK(res.best_loss.l_plus == target.l_plus);
  CHECK(res.best_loss.l_minus == target.l_minus);

  const BaselineResult again =
      run_random_search(cfg, 5000, in.matrix, in.sp, in.weeks);
  CHECK(res.best.plant_day == again.best.plant_day);
}

TEST_CASE("random search scores each candidate under its own adaptive capacity") {
  const PairInstance in;
  EsConfig cfg = pair_config(17, 0);
  cfg.scenario.kind = ScenarioKind::kActiveWeekShare;
  const BaselineResult res =
      run_random_search(cfg, 64, in.matrix, in.sp, in.weeks);

  const WeeklyYield weekly =
      weekly_yield(res.best, in.matrix, in.sp, in.weeks).weekly;
  const double c =
      infer_capacity(cfg.scenario, total_yield(in.sp), weekly, 0);
  const LossVector direct = loss_vector(weekly, c);
  CHECK(res.best_loss.l_plus == direct.l_plus);
  CHECK(res.best_loss.l_minus == direct.l_minus);
}
