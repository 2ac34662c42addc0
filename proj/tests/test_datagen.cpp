#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "harvest/calendar.hpp"
#include "harvest/datagen.hpp"
#include "harvest/harvest_model.hpp"
#include "harvest/rng.hpp"

using namespace harvest;

namespace {

SiteProfile small_site(bool bimodal) {
  SiteProfile s;
  s.site_id = 0;
  s.n_species = 250;
  s.capacity = 1500.0;
  s.bimodal_windows = bimodal;
  return s;
}

}  // namespace

TEST_CASE("gdu history covers every model day of the year range") {
  SiteProfile site = small_site(true);
  Rng rng = make_rng(3);
  const GduHistory h = gen_gdu_history(site, 2009, 2019, rng);

  CHECK(h.site_id == site.site_id);
  CHECK(h.days.size() == 11u * 365u);
  CHECK(h.values.size() == h.days.size());
  CHECK(h.days.front() == model_day({2009, 1, 1}));
  CHECK(h.days.back() == model_day({2019, 12, 31}));
  for (std::size_t i = 1; i < h.days.size(); ++i) {
    CHECK(h.days[i] == h.days[i - 1] + 1);  // contiguous, no leap days
  }
  for (double v : h.values) CHECK(v >= 0.0);

  Rng empty_range = make_rng(3);
  CHECK_THROWS_AS(gen_gdu_history(site, 2019, 2009, empty_range),
                  std::invalid_argument);
}

TEST_CASE("noise-free gdu history is periodic up to the yearly trend") {
  SiteProfile site = small_site(true);
  site.gdu_noise_sd = 0.0;
  Rng rng = make_rng(0);
  const GduHistory h = gen_gdu_history(site, 2010, 2012, rng);
  for (std::size_t i = 0; i + 365 < h.values.size(); ++i) {
    // level 12, amplitude 9.5: the seasonal floor stays positive, so the
    // non-negativity clip never engages and the trend shift is exact
    CHECK(h.values[i + 365] - h.values[i] ==
          doctest::Approx(site.gdu_trend_per_year).epsilon(1e-12));
  }
}

TEST_CASE("reference accumulation continues the history clock") {
  SiteProfile site = small_site(true);
  const HorizonSpec horizon{{2020, 1, 1}, 730};
  const GduAccumulation ref = reference_accumulation(site, 2009, horizon);

  CHECK(ref.d_max() == 730);
  for (double v : ref.daily) CHECK(v > 0.0);
  for (int k = 0; k + 365 < ref.d_max(); ++k) {
    CHECK(ref.daily[static_cast<std::size_t>(k + 365)] -
              ref.daily[static_cast<std::size_t>(k)] ==
          doctest::Approx(site.gdu_trend_per_year).epsilon(1e-12));
  }

  // noise-free history and reference agree where their formulas overlap:
  // both are the seasonal mean measured from the history start
  SiteProfile quiet = site;
  quiet.gdu_noise_sd = 0.0;
  Rng rng = make_rng(0);
  const GduHistory h = gen_gdu_history(quiet, 2009, 2019, rng);
  const GduAccumulation back = reference_accumulation(
      quiet, 2009, HorizonSpec{{2009, 1, 1}, 365});
  for (int k = 0; k < 365; ++k) {
    CHECK(back.daily[static_cast<std::size_t>(k)] ==
          doctest::Approx(h.values[static_cast<std::size_t>(k)])
              .epsilon(1e-12));
  }

  CHECK_THROWS_AS(reference_accumulation(site, 2009, HorizonSpec{{2020, 1, 1}, 0}),
                  std::invalid_argument);
}

TEST_CASE("species tables satisfy the window and harvestability invariants") {
  SiteProfile site = small_site(true);
  const HorizonSpec horizon{{2020, 1, 1}, 730};
  const GduAccumulation ref = reference_accumulation(site, 2009, horizon);
  Rng rng = make_rng(11);
  const std::vector<SpeciesRecord> table =
      gen_species_table(site, YieldSpec{}, horizon, ref, 110.0, 215.0, rng);

  CHECK(table.size() == 250u);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const SpeciesRecord& sp = table[i];
    CHECK(sp.species_id == "s0-" + std::to_string(i + 1));
    CHECK(ids.insert(sp.species_id).second);
    CHECK(sp.site_id == 0);
    CHECK(sp.d_early.value() >= 0);
    CHECK(sp.d_early.value() <= sp.d_late.value());
    CHECK(sp.d_late.value() <= 175);
    const int width = sp.d_late.value() - sp.d_early.value();
    CHECK(width >= 6);   // half-width 3..14
    CHECK(width <= 28);
    REQUIRE(sp.original_plant.has_value());
    CHECK(sp.original_plant->value() >= sp.d_early.value());
    CHECK(sp.original_plant->value() <= sp.d_late.value());
    CHECK(sp.yield_q > 0.0);
    CHECK(sp.g_harvest > 0.0);
    // the whole window matures inside the horizon, not just one day
    CHECK(compute_harvest_date(ref, sp.g_harvest, sp.d_early).is_valid());
    CHECK(compute_harvest_date(ref, sp.g_harvest, sp.d_late).is_valid());
  }
}

TEST_CASE("bimodal sites cluster windows early and late, smooth sites do not") {
  const HorizonSpec horizon{{2020, 1, 1}, 730};

  SiteProfile bimodal = small_site(true);
  bimodal.n_species = 400;
  const GduAccumulation ref = reference_accumulation(bimodal, 2009, horizon);
  Rng rng_b = make_rng(5);
  const auto tb = gen_species_table(bimodal, YieldSpec{}, horizon, ref, 110.0,
                                    215.0, rng_b);
  int early = 0, late = 0;
  double early_sum = 0.0;
  for (const auto& sp : tb) {
    const double c = 0.5 * (sp.d_early.value() + sp.d_late.value());
    if (c <= 80.0) {
      ++early;
      early_sum += c;
    } else {
      ++late;
    }
  }
  CHECK(early >= 140);  // a fair coin picks each cluster
  CHECK(late >= 140);
  CHECK(early_sum / early == doctest::Approx(35.0).epsilon(0.15));

  SiteProfile smooth = small_site(false);
  smooth.n_species = 400;
  Rng rng_s = make_rng(5);
  const auto ts = gen_species_table(smooth, YieldSpec{}, horizon, ref, 110.0,
                                    215.0, rng_s);
  double mean_c = 0.0;
  for (const auto& sp : ts) {
    mean_c += 0.5 * (sp.d_early.value() + sp.d_late.value());
  }
  mean_c /= static_cast<double>(ts.size());
  CHECK(mean_c > 80.0);
  CHECK(mean_c < 110.0);
}

TEST_CASE("species table rejects malformed inputs") {
  SiteProfile site = small_site(true);
  const HorizonSpec horizon{{2020, 1, 1}, 730};
  const GduAccumulation ref = reference_accumulation(site, 2009, horizon);
  Rng rng = make_rng(1);

  CHECK_THROWS_AS(gen_species_table(site, YieldSpec{}, horizon, ref, 0.0,
                                    215.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_species_table(site, YieldSpec{}, horizon, ref, 215.0,
                                    110.0, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_species_table(site, YieldSpec{-5.0, 0.0}, horizon, ref,
                                    110.0, 215.0, rng),
                  std::invalid_argument);

  GduAccumulation wrong = ref;
  wrong.daily.pop_back();
  CHECK_THROWS_AS(gen_species_table(site, YieldSpec{}, horizon, wrong, 110.0,
                                    215.0, rng),
                  std::invalid_argument);

  const HorizonSpec tiny{{2020, 1, 1}, 20};
  const GduAccumulation tiny_ref = reference_accumulation(site, 2009, tiny);
  CHECK_THROWS_AS(gen_species_table(site, YieldSpec{}, tiny, tiny_ref, 110.0,
                                    215.0, rng),
                  std::invalid_argument);
}

TEST_CASE("datasets are deterministic per seed and concatenate sites in order") {
  DatagenConfig cfg = DatagenConfig::two_site_default();
  cfg.sites[0].n_species = 60;
  cfg.sites[1].n_species = 40;
  cfg.seed = 99;

  const Dataset a = gen_dataset(cfg);
  const Dataset b = gen_dataset(cfg);

  REQUIRE(a.histories.size() == 2u);
  CHECK(a.histories[0].site_id == 0);
  CHECK(a.histories[1].site_id == 1);
  CHECK(a.species.size() == 100u);
  CHECK(a.species[0].species_id == "s0-1");
  CHECK(a.species[59].species_id == "s0-60");
  CHECK(a.species[60].species_id == "s1-1");

  for (int s = 0; s < 2; ++s) {
    CHECK(a.histories[s].days == b.histories[s].days);
    CHECK(a.histories[s].values == b.histories[s].values);
  }
  for (std::size_t i = 0; i < a.species.size(); ++i) {
    CHECK(a.species[i].species_id == b.species[i].species_id);
    CHECK(a.species[i].d_early == b.species[i].d_early);
    CHECK(a.species[i].d_late == b.species[i].d_late);
    CHECK(a.species[i].g_harvest == b.species[i].g_harvest);
    CHECK(a.species[i].yield_q == b.species[i].yield_q);
    CHECK(a.species[i].original_plant == b.species[i].original_plant);
  }

  // the two sites draw from independent streams: changing the second site
  // leaves the first site's data untouched
  DatagenConfig cfg2 = cfg;
  cfg2.sites[1].n_species = 10;
  const Dataset c = gen_dataset(cfg2);
  CHECK(c.histories[0].values == a.histories[0].values);
  CHECK(c.species[0].g_harvest == a.species[0].g_harvest);
  CHECK(c.species[59].yield_q == a.species[59].yield_q);

  DatagenConfig empty;
  CHECK_THROWS_AS(gen_dataset(empty), std::invalid_argument);
  DatagenConfig bad_years = cfg;
  bad_years.history_start_year = 2020;
  bad_years.history_end_year = 2019;
  CHECK_THROWS_AS(gen_dataset(bad_years), std::invalid_argument);
}
