#include "harvest/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "harvest/harvest_model.hpp"

namespace harvest {

namespace {

// Seasonal peak in mid-July (northern hemisphere growing season).
constexpr double kSeasonPhaseDoy = 105.75;

double seasonal_mean(const SiteProfile& site, double years_since_start,
                     int doy) {
  const double phase =
      2.0 * std::numbers::pi * (static_cast<double>(doy) - kSeasonPhaseDoy) /
      static_cast<double>(kDaysPerYear);
  return site.gdu_level + site.gdu_amplitude * std::sin(phase) +
         site.gdu_trend_per_year * years_since_start;
}

void validate_site(const SiteProfile& site) {
  if (site.n_species < 1) {
    throw std::invalid_argument("datagen: site needs at least one species");
  }
  if (!(site.capacity > 0.0) || !(site.gdu_amplitude >= 0.0) ||
      !(site.gdu_noise_sd >= 0.0)) {
    throw std::invalid_argument("datagen: malformed site profile");
  }
}

}  // namespace

DatagenConfig DatagenConfig::two_site_default() {
  DatagenConfig c;
  SiteProfile s0;
  s0.site_id = 0;
  s0.n_species = 1375;
  s0.capacity = 7000.0;
  s0.gdu_level = 12.0;
  s0.gdu_amplitude = 9.5;
  s0.gdu_trend_per_year = 0.025;
  s0.gdu_noise_sd = 2.0;
  s0.bimodal_windows = true;

  SiteProfile s1;
  s1.site_id = 1;
  s1.n_species = 1194;
  s1.capacity = 6000.0;
  s1.gdu_level = 13.0;
  s1.gdu_amplitude = 10.0;
  s1.gdu_trend_per_year = 0.02;
  s1.gdu_noise_sd = 2.8;
  s1.bimodal_windows = false;

  c.sites = {s0, s1};
  return c;
}

GduHistory gen_gdu_history(const SiteProfile& site, int start_year,
                           int end_year, Rng& rng) {
  validate_site(site);
  if (end_year < start_year) {
    throw std::invalid_argument("gen_gdu_history: empty year range");
  }
  GduHistory h;
  h.site_id = site.site_id;
  for (int year = start_year; year <= end_year; ++year) {
    const std::int64_t year_start = model_day({year, 1, 1});
    for (int doy = 0; doy < kDaysPerYear; ++doy) {
      const double years_since =
          static_cast<double>(year - start_year) +
          static_cast<double>(doy) / static_cast<double>(kDaysPerYear);
      const double value = seasonal_mean(site, years_since, doy) +
                           draw_normal(rng, 0.0, site.gdu_noise_sd);
      h.days.push_back(year_start + doy);
      h.values.push_back(std::max(0.0, value));
    }
  }
  return h;
}

GduAccumulation reference_accumulation(const SiteProfile& site,
                                       int history_start_year,
                                       const HorizonSpec& horizon) {
  validate_site(site);
  if (horizon.n_days <= 0) {
    throw std::invalid_argument("reference_accumulation: empty horizon");
  }
  const std::int64_t start = model_day(horizon.start);
  const std::int64_t history_start = model_day({history_start_year, 1, 1});
  GduAccumulation acc;
  acc.daily.reserve(static_cast<std::size_t>(horizon.n_days));
  for (int k = 0; k < horizon.n_days; ++k) {
    const std::int64_t off = start + k;
    const int doy = static_cast<int>(((off % kDaysPerYear) + kDaysPerYear) %
                                     kDaysPerYear);
    const double years_since =
        static_cast<double>(off - history_start) /
        static_cast<double>(kDaysPerYear);
    acc.daily.push_back(std::max(0.0, seasonal_mean(site, years_since, doy)));
  }
  return acc;
}

std::vector<SpeciesRecord> gen_species_table(const SiteProfile& site,
                                             const YieldSpec& yields,
                                             const HorizonSpec& horizon,
                                             const GduAccumulation& reference,
                                             double duration_min_days,
                                             double duration_max_days,
                                             Rng& rng) {
  validate_site(site);
  if (!(duration_min_days > 0.0) || duration_max_days < duration_min_days) {
    throw std::invalid_argument("gen_species_table: malformed duration range");
  }
  if (reference.d_max() != horizon.n_days) {
    throw std::invalid_argument(
        "gen_species_table: reference accumulation does not match horizon");
  }
  if (!(yields.mean > 0.0) && !(yields.sd > 0.0)) {
    throw std::invalid_argument(
        "gen_species_table: yield distribution cannot produce positive draws");
  }
  const int d_max = reference.d_max();
  // Windows live in the first spring of the horizon.
  const int latest_window_day = std::min(d_max - 1, 175);
  if (latest_window_day < 30) {
    throw std::invalid_argument(
        "gen_species_table: horizon too short for planting windows");
  }

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> halfwidth_dist(3, 14);
  std::uniform_real_distribution<double> duration_dist(duration_min_days,
                                                       duration_max_days);

  std::vector<SpeciesRecord> out;
  out.reserve(static_cast<std::size_t>(site.n_species));
  for (int i = 0; i < site.n_species; ++i) {
    SpeciesRecord sp;
    sp.species_id =
        "s" + std::to_string(site.site_id) + "-" + std::to_string(i + 1);
    sp.site_id = site.site_id;

    double center;
    if (site.bimodal_windows) {
      center = u01(rng) < 0.5 ? draw_normal(rng, 35.0, 9.0)
                              : draw_normal(rng, 130.0, 11.0);
    } else {
      center = draw_normal(rng, 95.0, 36.0);
    }
    const int hw = halfwidth_dist(rng);
    int c = std::clamp(static_cast<int>(std::lround(center)), hw,
                       latest_window_day - hw);
    sp.d_early = DayIndex(c - hw);
    sp.d_late = DayIndex(c + hw);

    std::uniform_int_distribution<std::int32_t> plant_dist(
        sp.d_early.value(), sp.d_late.value());
    sp.original_plant = DayIndex(plant_dist(rng));

    double duration = duration_dist(rng);
    for (int attempt = 0;; ++attempt) {
      const int from = sp.original_plant->value();
      const int to =
          std::min(d_max, from + static_cast<int>(std::lround(duration)));
      double g = 0.0;
      for (int d = from; d < to; ++d) {
        g += reference.daily[static_cast<std::size_t>(d)];
      }
      sp.g_harvest = g;
      if (compute_harvest_date(reference, g, sp.d_late).is_valid()) break;
      if (attempt >= 60) {
        throw std::runtime_error(
            "gen_species_table: cannot fit species '" + sp.species_id +
            "' into the horizon; extend it or shorten durations");
      }
      duration *= 0.9;
    }

    do {
      sp.yield_q = draw_normal(rng, yields.mean, yields.sd);
    } while (sp.yield_q <= 0.0);

    out.push_back(std::move(sp));
  }
  return out;
}

Dataset gen_dataset(const DatagenConfig& config) {
  if (config.sites.empty()) {
    throw std::invalid_argument("gen_dataset: no sites configured");
  }
  if (config.history_end_year < config.history_start_year) {
    throw std::invalid_argument("gen_dataset: empty history year range");
  }
  Dataset ds;
  ds.config = config;
  for (std::size_t i = 0; i < config.sites.size(); ++i) {
    const SiteProfile& site = config.sites[i];
    Rng history_rng = make_stream_rng(config.seed, 2 * i);
    ds.histories.push_back(gen_gdu_history(
        site, config.history_start_year, config.history_end_year,
        history_rng));

    const GduAccumulation ref = reference_accumulation(
        site, config.history_start_year, config.horizon);
    Rng species_rng = make_stream_rng(config.seed, 2 * i + 1);
    std::vector<SpeciesRecord> table = gen_species_table(
        site, config.yields, config.horizon, ref, config.duration_min_days,
        config.duration_max_days, species_rng);
    for (auto& sp : table) ds.species.push_back(std::move(sp));
  }
  return ds;
}

}  // namespace harvest
