#include "harvest/harvest_model.hpp"

#include <stdexcept>
#include <string>

namespace harvest {

DayIndex compute_harvest_date(const GduAccumulation& g_acc, double g_harvest,
                              DayIndex d_plant) {
  if (!d_plant.is_valid()) {
    throw std::domain_error("compute_harvest_date: planting day is invalid");
  }
  if (g_harvest < 0.0) {
    throw std::domain_error(
        "compute_harvest_date: GDU requirement must be non-negative");
  }
  const auto& g = g_acc.daily;
  const int d_max = g_acc.d_max();
  if (d_plant.value() < 0 || d_plant.value() >= d_max) {
    throw std::domain_error("compute_harvest_date: planting day " +
                            std::to_string(d_plant.value()) +
                            " outside horizon of " + std::to_string(d_max) +
                            " days");
  }
  double sum = 0.0;
  for (int d = d_plant.value(); d < d_max; ++d) {
    sum += g[static_cast<std::size_t>(d)];
    if (sum >= g_harvest) return DayIndex(d);
  }
  return DayIndex::invalid();
}

HarvestMatrix build_harvest_matrix(const GduAccumulation& g_acc,
                                   std::span<const SpeciesRecord> species) {
  const int d_max = g_acc.d_max();
  if (d_max <= 0) {
    throw std::domain_error("build_harvest_matrix: empty accumulation");
  }
  HarvestMatrix m(species.size(), d_max);
  for (std::size_t i = 0; i < species.size(); ++i) {
    const SpeciesRecord& sp = species[i];
    if (!sp.d_early.is_valid() || !sp.d_late.is_valid() ||
        sp.d_early > sp.d_late) {
      throw std::domain_error("build_harvest_matrix: species '" +
                              sp.species_id + "' has a malformed window");
    }
    if (sp.d_early.value() < 0 || sp.d_late.value() >= d_max) {
      throw std::domain_error("build_harvest_matrix: window of species '" +
                              sp.species_id + "' exceeds the horizon");
    }
    for (int j = sp.d_early.value(); j <= sp.d_late.value(); ++j) {
      m.set(i, j, compute_harvest_date(g_acc, sp.g_harvest, DayIndex(j)));
    }
  }
  return m;
}

WeekMapping build_week_mapping(int d_max, int delta, WeekKind kind) {
  if (d_max <= 0) {
    throw std::domain_error("build_week_mapping: horizon must be positive");
  }
  if (delta < 0) {
    throw std::domain_error("build_week_mapping: delta must be non-negative");
  }
  WeekMapping w;
  w.kind = kind;
  w.delta = delta;
  w.week_of_day.resize(static_cast<std::size_t>(d_max));
  if (kind == WeekKind::kOneShot) {
    w.n_weeks = (d_max - 1 + delta) / 7 + 1;
    for (int i = 0; i < d_max; ++i) {
      w.week_of_day[static_cast<std::size_t>(i)] = (i + delta) / 7;
    }
  } else {
    w.n_weeks = 52;
    for (int i = 0; i < d_max; ++i) {
      w.week_of_day[static_cast<std::size_t>(i)] = ((i + delta) / 7) % 52;
    }
  }
  return w;
}

WeeklyYieldResult weekly_yield(const Schedule& schedule,
                               const HarvestMatrix& matrix,
                               std::span<const SpeciesRecord> species,
                               const WeekMapping& weeks) {
  if (schedule.plant_day.size() != species.size() ||
      species.size() != matrix.n_species()) {
    throw std::invalid_argument(
        "weekly_yield: schedule, species table and matrix disagree on size");
  }
  if (weeks.d_max() != matrix.d_max()) {
    throw std::invalid_argument(
        "weekly_yield: week mapping and matrix disagree on horizon length");
  }
  WeeklyYieldResult result;
  result.weekly.per_week.assign(static_cast<std::size_t>(weeks.n_weeks), 0.0);
  for (std::size_t i = 0; i < species.size(); ++i) {
    const DayIndex d = schedule.plant_day[i];
    const SpeciesRecord& sp = species[i];
    if (!d.is_valid() || d < sp.d_early || d > sp.d_late) {
      throw std::domain_error("weekly_yield: schedule plants species '" +
                              sp.species_id + "' outside its window");
    }
    const DayIndex h = matrix.at(i, d.value());
    if (!h.is_valid()) {
      result.unharvested.push_back(i);
      continue;
    }
    result.weekly.per_week[static_cast<std::size_t>(weeks.week_of(h))] +=
        sp.yield_q;
  }
  return result;
}

std::vector<WindowViolation> validate_schedule(
    const Schedule& schedule, std::span<const SpeciesRecord> species) {
  if (schedule.plant_day.size() != species.size()) {
    throw std::invalid_argument(
        "validate_schedule: schedule and species table disagree on size");
  }
  std::vector<WindowViolation> violations;
  for (std::size_t i = 0; i < species.size(); ++i) {
    const DayIndex d = schedule.plant_day[i];
    if (!d.is_valid() || d < species[i].d_early || d > species[i].d_late) {
      violations.push_back({i, d});
    }
  }
  return violations;
}

double total_yield(std::span<const SpeciesRecord> species) {
  double s = 0.0;
  for (const auto& sp : species) s += sp.yield_q;
  return s;
}

int count_reachable_weeks(const HarvestMatrix& matrix,
                          const WeekMapping& weeks) {
  if (weeks.d_max() != matrix.d_max()) {
    throw std::invalid_argument(
        "count_reachable_weeks: week mapping and matrix disagree on horizon");
  }
  std::vector<char> seen(static_cast<std::size_t>(weeks.n_weeks), 0);
  for (std::size_t i = 0; i < matrix.n_species(); ++i) {
    for (int j = 0; j < matrix.d_max(); ++j) {
      const DayIndex h = matrix.at(i, j);
      if (h.is_valid()) seen[static_cast<std::size_t>(weeks.week_of(h))] = 1;
    }
  }
  int n = 0;
  for (char c : seen) n += c;
  return n;
}

}  // namespace harvest
