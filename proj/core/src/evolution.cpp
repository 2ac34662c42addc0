#include "harvest/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harvest {

namespace {

void check_rate_params(std::size_t n_species, double rho_max) {
  if (n_species == 0) {
    throw std::invalid_argument("mutation_rate: empty genome");
  }
  if (rho_max * static_cast<double>(n_species) < 1.0) {
    throw std::invalid_argument(
        "mutation_rate: rho_max below 1/n leaves no room to oscillate");
  }
}

DayIndex draw_in_window(const SpeciesRecord& sp, Rng& rng) {
  std::uniform_int_distribution<std::int32_t> dist(sp.d_early.value(),
                                                   sp.d_late.value());
  return DayIndex(dist(rng));
}

}  // namespace

double mutation_rate(std::int64_t j, std::size_t n_species, double rho_max,
                     double omega) {
  check_rate_params(n_species, rho_max);
  if (j < 0) {
    throw std::invalid_argument("mutation_rate: negative step counter");
  }
  const double n = static_cast<double>(n_species);
  const double s = std::sin(omega * static_cast<double>(j));
  const double rate = (1.0 / n) * (1.0 + (rho_max * n - 1.0) * s * s);
  return std::clamp(rate, 1.0 / n, rho_max);
}

Schedule init_schedule(std::span<const SpeciesRecord> species, Rng& rng) {
  Schedule s;
  s.plant_day.reserve(species.size());
  for (const auto& sp : species) {
    if (!sp.d_early.is_valid() || !sp.d_late.is_valid() ||
        sp.d_early > sp.d_late) {
      throw std::domain_error("init_schedule: species '" + sp.species_id +
                              "' has a malformed window");
    }
    s.plant_day.push_back(draw_in_window(sp, rng));
  }
  return s;
}

Schedule mutate_schedule(const Schedule& parent, double rate,
                         std::span<const SpeciesRecord> species, Rng& rng) {
  if (parent.plant_day.size() != species.size()) {
    throw std::invalid_argument(
        "mutate_schedule: schedule and species table disagree on size");
  }
  if (species.empty()) {
    throw std::invalid_argument("mutate_schedule: empty genome");
  }
  if (!(rate > 0.0) || rate > 1.0) {
    throw std::invalid_argument("mutate_schedule: rate must be in (0, 1]");
  }
  Schedule child = parent;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  bool any = false;
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (u01(rng) < rate) {
      child.plant_day[i] = draw_in_window(species[i], rng);
      any = true;
    }
  }
  if (!any) {
    std::uniform_int_distribution<std::size_t> pick(0, species.size() - 1);
    const std::size_t i = pick(rng);
    child.plant_day[i] = draw_in_window(species[i], rng);
  }
  return child;
}

double infer_capacity(const ScenarioSpec& scenario, double total_yield,
                      const WeeklyYield& parent_weekly, int reachable_weeks) {
  switch (scenario.kind) {
    case ScenarioKind::kFixedCapacity:
      if (!(scenario.fixed_capacity > 0.0)) {
        throw std::invalid_argument(
            "infer_capacity: fixed scenario needs a positive capacity");
      }
      return scenario.fixed_capacity;
    case ScenarioKind::kActiveWeekShare: {
      if (!(total_yield > 0.0)) {
        throw std::domain_error("infer_capacity: total yield must be positive");
      }
      int active = 0;
      for (double v : parent_weekly.per_week) {
        if (v > 0.0) ++active;
      }
      if (active == 0) {
        throw std::domain_error(
            "infer_capacity: no active week to spread the yield over");
      }
      return total_yield / static_cast<double>(active);
    }
    case ScenarioKind::kReachableShare:
      if (!(total_yield > 0.0)) {
        throw std::domain_error("infer_capacity: total yield must be positive");
      }
      if (reachable_weeks <= 0) {
        throw std::domain_error(
            "infer_capacity: no reachable week to spread the yield over");
      }
      return total_yield / static_cast<double>(reachable_weeks);
  }
  throw std::logic_error("infer_capacity: unknown scenario kind");
}

EsState run_one_plus_one_es(const EsConfig& config,
                            const HarvestMatrix& matrix,
                            std::span<const SpeciesRecord> species,
                            const WeekMapping& weeks,
                            const EsObserver& observer) {
  if (config.generations < 0) {
    throw std::invalid_argument("run_one_plus_one_es: negative budget");
  }
  check_rate_params(species.size(), config.rho_max);

  const double total = total_yield(species);
  const bool adaptive_c =
      config.scenario.kind == ScenarioKind::kActiveWeekShare;
  const int reachable =
      config.scenario.kind == ScenarioKind::kReachableShare
          ? count_reachable_weeks(matrix, weeks)
          : 0;

  Rng rng = make_rng(config.seed);
  EsState st;
  st.parent = init_schedule(species, rng);
  WeeklyYield parent_weekly =
      weekly_yield(st.parent, matrix, species, weeks).weekly;
  st.c_target =
      infer_capacity(config.scenario, total, parent_weekly, reachable);
  st.parent_loss = loss_vector(parent_weekly, st.c_target);

  for (std::int64_t gen = 1; gen <= config.generations; ++gen) {
    const double rate =
        mutation_rate(st.stagnation, species.size(), config.rho_max,
                      config.omega);
    Schedule child = mutate_schedule(st.parent, rate, species, rng);
    WeeklyYield child_weekly =
        weekly_yield(child, matrix, species, weeks).weekly;
    const double c_used = st.c_target;
    const LossVector child_loss = loss_vector(child_weekly, c_used);

    const LossOrder order = compare_loss(child_loss, st.parent_loss);
    const bool improved = order == LossOrder::kFirstBetter;
    const bool accepted = improved || order == LossOrder::kTie;

    if (accepted) {
      st.parent = std::move(child);
      parent_weekly = std::move(child_weekly);
      if (adaptive_c) {
        st.c_target =
            infer_capacity(config.scenario, total, parent_weekly, reachable);
        st.parent_loss = loss_vector(parent_weekly, st.c_target);
      } else {
        st.parent_loss = child_loss;
      }
    }
    if (improved) {
      st.stagnation = 0;
      st.improvements.push_back(
          {gen, child_loss.l_plus, child_loss.l_minus, rate});
    } else if (!accepted) {
      ++st.stagnation;
    }
    st.generation = gen;

    if (config.log_stride > 0 && gen % config.log_stride == 0) {
      st.stride_log.push_back(
          {gen, st.parent_loss.l_plus, st.parent_loss.l_minus, rate});
    }
    if (observer) {
      observer({gen, rate, c_used, child_loss, st.parent_loss, accepted,
                improved});
    }
  }
  return st;
}

}  // namespace harvest
