#pragma once

#include <cstdint>
#include <vector>

#include "harvest/gpr.hpp"
#include "harvest/rng.hpp"
#include "harvest/types.hpp"

namespace harvest {

// Shape of one synthetic site: seasonal GDU climate and planting behaviour.
struct SiteProfile {
  int site_id = 0;
  int n_species = 1375;
  double capacity = 7000.0;  // weekly processing capacity for fixed scenarios

  // Daily GDU = max(0, level + amplitude*sin(seasonal phase) + trend*years
  //                  + Normal(0, noise_sd)).
  double gdu_level = 12.0;
  double gdu_amplitude = 9.5;
  double gdu_trend_per_year = 0.025;
  double gdu_noise_sd = 2.0;

  // Planting-window placement: two overlapping populations (an early and a
  // late cluster) or one broad cluster.
  bool bimodal_windows = true;
};

struct YieldSpec {
  double mean = 250.0;
  double sd = 100.0;
};

struct DatagenConfig {
  std::vector<SiteProfile> sites;
  YieldSpec yields;
  int history_start_year = 2009;
  int history_end_year = 2019;         // inclusive
  HorizonSpec horizon{{2020, 1, 1}, 730};
  double duration_min_days = 110.0;    // target growth duration range used to
  double duration_max_days = 215.0;    // derive GDU requirements
  std::uint64_t seed = 0;

  static DatagenConfig two_site_default();
};

// Daily GDU observations for every day of the year range, noise included,
// leap days never generated (model calendar).
GduHistory gen_gdu_history(const SiteProfile& site, int start_year,
                           int end_year, Rng& rng);

// Noise-free seasonal expectation over the horizon; used as the reference
// accumulation that converts sampled growth durations into GDU requirements.
GduAccumulation reference_accumulation(const SiteProfile& site,
                                       int history_start_year,
                                       const HorizonSpec& horizon);

// Species table for one site: planting windows inside the first spring of
// the horizon, positive yields (redrawn while non-positive), GDU requirement
// back-derived so every window day matures inside the horizon, and an
// original (historical) planting day inside the window.
std::vector<SpeciesRecord> gen_species_table(const SiteProfile& site,
                                             const YieldSpec& yields,
                                             const HorizonSpec& horizon,
                                             const GduAccumulation& reference,
                                             double duration_min_days,
                                             double duration_max_days,
                                             Rng& rng);

struct Dataset {
  std::vector<GduHistory> histories;  // one per site
  std::vector<SpeciesRecord> species; // all sites concatenated
  DatagenConfig config;               // the exact inputs used
};

// Deterministic per seed: identical config and seed give identical data.
Dataset gen_dataset(const DatagenConfig& config);

}  // namespace harvest
