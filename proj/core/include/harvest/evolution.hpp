#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "harvest/harvest_model.hpp"
#include "harvest/loss.hpp"
#include "harvest/rng.hpp"
#include "harvest/types.hpp"

namespace harvest {

enum class ScenarioKind {
  kFixedCapacity,     // capacity given per site up front
  kActiveWeekShare,   // capacity = total yield / active weeks of the parent
  kReachableShare,    // capacity = total yield / weeks reachable at all
};

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kFixedCapacity;
  double fixed_capacity = 0.0;  // required when kind == kFixedCapacity
  bool cyclic_weeks = false;
  int week_delta = 0;
};

struct EsConfig {
  std::int64_t generations = 0;
  std::uint64_t seed = 0;
  double rho_max = 0.01;  // upper end of the mutation-rate oscillation
  double omega = 5e-4;    // oscillation frequency per rejection step
  ScenarioSpec scenario;
  std::int64_t log_stride = 0;  // >0: additionally log every k-th generation
};

struct LossHistoryEntry {
  std::int64_t generation = 0;
  double l_plus = 0.0;
  double l_minus = 0.0;
  double rate = 0.0;
};

struct EsState {
  Schedule parent;
  LossVector parent_loss;
  double c_target = 0.0;          // capacity the parent was last scored under
  std::int64_t stagnation = 0;    // rejections since the last improvement
  std::int64_t generation = 0;
  std::vector<LossHistoryEntry> improvements;    // strict improvements only
  std::vector<LossHistoryEntry> stride_log;      // filled when log_stride > 0
};

// Per-generation view handed to the optional observer (tests, tracing).
struct EsStep {
  std::int64_t generation = 0;
  double rate = 0.0;
  double c_target = 0.0;
  LossVector child_loss;
  LossVector parent_loss;  // after the accept/reject decision
  bool accepted = false;
  bool improved = false;
};

using EsObserver = std::function<void(const EsStep&)>;

// Oscillating rate (1/n) * (1 + (rho_max*n - 1) * sin^2(omega*j)); j counts
// rejections since the last strict improvement. Clamped into
// [1/n, rho_max] so the band holds under rounding.
double mutation_rate(std::int64_t j, std::size_t n_species, double rho_max,
                     double omega);

// Uniform draw inside every species' planting window.
Schedule init_schedule(std::span<const SpeciesRecord> species, Rng& rng);

// Redraws each gene with probability `rate` uniformly inside its window; if
// no gene fires, one uniformly chosen gene is redrawn so the child is never
// a guaranteed copy. A redraw may repeat the old value.
Schedule mutate_schedule(const Schedule& parent, double rate,
                         std::span<const SpeciesRecord> species, Rng& rng);

// Capacity for scoring under the given scenario. `parent_weekly` is only
// consulted for kActiveWeekShare; `reachable_weeks` (from
// count_reachable_weeks) only for kReachableShare.
double infer_capacity(const ScenarioSpec& scenario, double total_yield,
                      const WeeklyYield& parent_weekly, int reachable_weeks);

// (1+1) evolution strategy with lexicographic acceptance: a child replaces
// the parent when its loss vector is better or exactly equal (plateau moves
// keep the search from stalling). Under kActiveWeekShare the capacity is
// re-derived from the current parent each generation and both parent and
// child are scored against it.
EsState run_one_plus_one_es(const EsConfig& config,
                            const HarvestMatrix& matrix,
                            std::span<const SpeciesRecord> species,
                            const WeekMapping& weeks,
                            const EsObserver& observer = {});

}  // namespace harvest
