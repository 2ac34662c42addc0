#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "harvest/types.hpp"

namespace harvest {

// First day d >= d_plant whose running GDU sum from d_plant reaches
// g_harvest, or DayIndex::invalid() when the horizon ends first. The sum is
// a plain left-to-right accumulation; g_harvest == 0 is met on the planting
// day itself.
DayIndex compute_harvest_date(const GduAccumulation& g_acc, double g_harvest,
                              DayIndex d_plant);

// Harvest day for every species and every planting day inside its window.
// Species windows must lie inside [0, d_max).
HarvestMatrix build_harvest_matrix(const GduAccumulation& g_acc,
                                   std::span<const SpeciesRecord> species);

WeekMapping build_week_mapping(int d_max, int delta, WeekKind kind);

struct WeeklyYieldResult {
  WeeklyYield weekly;
  // Species whose planting never matures inside the horizon; they contribute
  // zero yield but are surfaced so callers can report them.
  std::vector<std::size_t> unharvested;
};

// Aggregates per-species yields into the harvest week of each species.
// Throws if the schedule leaves any planting window.
WeeklyYieldResult weekly_yield(const Schedule& schedule,
                               const HarvestMatrix& matrix,
                               std::span<const SpeciesRecord> species,
                               const WeekMapping& weeks);

struct WindowViolation {
  std::size_t species_index;
  DayIndex plant_day;
};

std::vector<WindowViolation> validate_schedule(
    const Schedule& schedule, std::span<const SpeciesRecord> species);

double total_yield(std::span<const SpeciesRecord> species);

// Distinct weeks reachable by at least one valid matrix entry.
int count_reachable_weeks(const HarvestMatrix& matrix,
                          const WeekMapping& weeks);

}  // namespace harvest
