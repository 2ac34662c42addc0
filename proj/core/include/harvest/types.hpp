#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harvest/calendar.hpp"
#include "harvest/day_index.hpp"

namespace harvest {

struct SpeciesRecord {
  std::string species_id;
  int site_id = 0;
  DayIndex d_early;  // planting window, inclusive on both ends
  DayIndex d_late;
  double g_harvest = 0.0;  // accumulated GDUs needed to reach maturity
  double yield_q = 0.0;    // quantity harvested on the harvest day
  std::optional<DayIndex> original_plant;  // grower's historical choice
};

// Daily GDU accumulation over the horizon, day 0 = horizon start.
struct GduAccumulation {
  std::vector<double> daily;

  int d_max() const { return static_cast<int>(daily.size()); }
};

// Precomputed harvest day per species and planting day. Entries outside a
// species' planting window, and plantings whose requirement is never met
// before the horizon ends, hold DayIndex::invalid().
class HarvestMatrix {
 public:
  HarvestMatrix(std::size_t n_species, int d_max)
      : n_species_(n_species),
        d_max_(d_max),
        entries_(n_species * static_cast<std::size_t>(d_max),
                 DayIndex::invalid()) {
    if (d_max <= 0) throw std::domain_error("HarvestMatrix: d_max must be positive");
  }

  std::size_t n_species() const { return n_species_; }
  int d_max() const { return d_max_; }

  DayIndex at(std::size_t species, int day) const {
    return entries_[species * static_cast<std::size_t>(d_max_) +
                    static_cast<std::size_t>(day)];
  }
  void set(std::size_t species, int day, DayIndex h) {
    entries_[species * static_cast<std::size_t>(d_max_) +
             static_cast<std::size_t>(day)] = h;
  }

 private:
  std::size_t n_species_;
  int d_max_;
  std::vector<DayIndex> entries_;
};

enum class WeekKind {
  kOneShot,  // consecutive 7-day bins over the whole horizon
  kCyclic,   // 7-day bins folded onto a repeating 52-week year
};

struct WeekMapping {
  WeekKind kind = WeekKind::kOneShot;
  int delta = 0;    // alignment offset of day 0 within its week
  int n_weeks = 0;
  std::vector<std::int32_t> week_of_day;  // size d_max

  int d_max() const { return static_cast<int>(week_of_day.size()); }
  int week_of(DayIndex d) const { return week_of_day[d.value()]; }
};

// One planting day per species, aligned with the species table order.
struct Schedule {
  std::vector<DayIndex> plant_day;
};

struct WeeklyYield {
  std::vector<double> per_week;

  double total() const {
    double s = 0.0;
    for (double v : per_week) s += v;
    return s;
  }
};

struct GduForecast {
  CivilDate horizon_start;
  std::vector<double> mean;  // length d_max
  std::vector<double> sd;    // same length, >= 0 elementwise

  int d_max() const { return static_cast<int>(mean.size()); }
};

}  // namespace harvest
