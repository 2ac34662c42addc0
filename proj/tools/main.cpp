#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "harvest/baseline.hpp"
#include "harvest/datagen.hpp"
#include "harvest/evolution.hpp"
#include "harvest/gpr.hpp"
#include "harvest/harvest_model.hpp"
#include "harvest/io.hpp"
#include "harvest/uncertainty.hpp"

namespace fs = std::filesystem;
using namespace harvest;

namespace {

CLI::Option* add_out_dir(CLI::App* cmd, std::string& out) {
  out = ".";
  return cmd->add_option("--out", out, "Output directory")
      ->envname("HARVEST_OUT")
      ->capture_default_str();
}

void note_written(const fs::path& p, const std::string& detail = "") {
  std::cout << "wrote " << p.string();
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << "\n";
}

// ---- accumulation source shared by matrix/optimize/evaluate/compare -------

struct SourceArgs {
  std::string forecast_path;
  std::string model_path;
  std::string start = "2020-01-01";
  int days = 0;
};

void add_source_options(CLI::App* cmd, SourceArgs& src) {
  auto* f = cmd->add_option("--forecast", src.forecast_path,
                            "Daily forecast CSV (day,date,mean,std)")
                ->check(CLI::ExistingFile);
  auto* m = cmd->add_option("--model", src.model_path,
                            "Fitted model JSON; the horizon is forecast on "
                            "the fly")
                ->check(CLI::ExistingFile);
  f->excludes(m);
  cmd->add_option("--start", src.start, "Horizon start date (with --model)")
      ->capture_default_str();
  cmd->add_option("--days", src.days, "Horizon length in days (with --model)");
}

GduForecast load_forecast(const SourceArgs& src) {
  if (!src.forecast_path.empty()) return read_forecast_csv(src.forecast_path);
  if (src.model_path.empty()) {
    throw std::runtime_error("need an accumulation source: --forecast or "
                             "--model");
  }
  if (src.days < 1) {
    throw std::runtime_error("--model needs a positive --days");
  }
  const GprModel model = read_model_json(src.model_path);
  return predict_forecast(model, {parse_iso_date(src.start), src.days});
}

GduAccumulation mean_accumulation(const GduForecast& f) {
  GduAccumulation acc;
  acc.daily.reserve(f.mean.size());
  for (double m : f.mean) acc.daily.push_back(std::max(0.0, m));
  return acc;
}

std::vector<SpeciesRecord> load_site_species(const std::string& path,
                                             const CivilDate& horizon_start,
                                             int site) {
  std::vector<SpeciesRecord> all = read_species_csv(path, horizon_start);
  std::vector<SpeciesRecord> out;
  std::set<int> sites;
  for (auto& sp : all) {
    sites.insert(sp.site_id);
    if (sp.site_id == site) out.push_back(std::move(sp));
  }
  if (out.empty()) {
    std::string have;
    for (int s : sites) have += (have.empty() ? "" : ", ") + std::to_string(s);
    throw std::runtime_error("no species for site " + std::to_string(site) +
                             " in " + path + " (sites present: " + have + ")");
  }
  return out;
}

const GduHistory& find_site_history(const std::vector<GduHistory>& hs,
                                    int site, const std::string& path) {
  std::string have;
  for (const auto& h : hs) {
    if (h.site_id == site) return h;
    have += (have.empty() ? "" : ", ") + std::to_string(h.site_id);
  }
  throw std::runtime_error("no history for site " + std::to_string(site) +
                           " in " + path + " (sites present: " + have + ")");
}

// ---- scenario flags --------------------------------------------------------

struct ScenarioArgs {
  std::string token = "fixed";
  double capacity = 0.0;
  bool cyclic = false;
  int week_delta = 0;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& sc) {
  cmd->add_option("--scenario", sc.token,
                  "Capacity scenario: fixed | share-active | share-reachable")
      ->capture_default_str();
  cmd->add_option("--capacity", sc.capacity,
                  "Weekly processing capacity (fixed scenario)");
  cmd->add_flag("--cyclic", sc.cyclic,
                "Fold weeks onto a repeating 52-week year");
  cmd->add_option("--week-delta", sc.week_delta,
                  "Alignment offset of day 1 within its week")
      ->check(CLI::NonNegativeNumber);
}

ScenarioSpec make_scenario(const ScenarioArgs& a) {
  ScenarioSpec s;
  s.kind = scenario_kind_from_token(a.token);
  s.fixed_capacity = a.capacity;
  s.cyclic_weeks = a.cyclic;
  s.week_delta = a.week_delta;
  if (s.kind == ScenarioKind::kFixedCapacity && !(a.capacity > 0.0)) {
    throw std::runtime_error(
        "the fixed scenario needs --capacity > 0 (or --run metadata)");
  }
  return s;
}

Schedule reference_from_original(std::span<const SpeciesRecord> species) {
  Schedule s;
  s.plant_day.reserve(species.size());
  for (const auto& sp : species) {
    if (!sp.original_plant) {
      throw std::runtime_error("species '" + sp.species_id +
                               "' has no original planting day; pass "
                               "--reference");
    }
    s.plant_day.push_back(*sp.original_plant);
  }
  return s;
}

std::string ratio_text(const std::optional<double>& r) {
  return r ? format_double(*r) : std::string("n/a");
}

void print_report(const ReportFile& rf) {
  const EvalReport& r = rf.report;
  std::cout << "scenario              " << rf.scenario << " (site "
            << rf.site_id << ")\n"
            << "capacity target       " << format_double(r.c_target) << "\n"
            << "capacity needed       " << format_double(r.c_need) << "\n"
            << "overshoot             " << format_double(r.opt.overshoot)
            << " (reference " << format_double(r.ref.overshoot) << ")\n"
            << "undershoot            " << format_double(r.opt.undershoot)
            << " (reference " << format_double(r.ref.undershoot) << ")\n"
            << "overshoot reduction   " << ratio_text(r.r_overshoot) << "\n"
            << "undershoot reduction  " << ratio_text(r.r_undershoot) << "\n"
            << "active weeks          " << r.n_active_weeks << "\n"
            << "bootstrap             " << r.n_bootstrap << " samples, seed "
            << r.bootstrap_seed << "\n";
}

void print_weekly(const WeeklyStats& ws, double c_target) {
  for (std::size_t w = 0; w < ws.mean.size(); ++w) {
    if (ws.mean[w] <= 0.0 && ws.sd[w] <= 0.0) continue;
    const int bar = std::min(
        60, static_cast<int>(std::lround(40.0 * ws.mean[w] / c_target)));
    std::cout << "week " << w + 1 << "\t" << format_double(ws.mean[w])
              << " +- " << format_double(ws.sd[w]) << "\t"
              << std::string(static_cast<std::size_t>(std::max(0, bar)), '#')
              << (ws.mean[w] > c_target ? " > capacity" : "") << "\n";
  }
}

// ---- gen-data ---------------------------------------------------------------

struct GenDataArgs {
  std::string out;
  std::uint64_t seed = 0;
  int sites = 2;
  std::vector<int> species_per_site;
  std::vector<double> capacities;
  std::string horizon_start = "2020-01-01";
  int horizon_days = 730;
  int history_start = 2009;
  int history_end = 2019;
  double yield_mean = 250.0;
  double yield_sd = 100.0;
  double duration_min = 110.0;
  double duration_max = 215.0;
};

void run_gen_data(const GenDataArgs& a) {
  DatagenConfig cfg = DatagenConfig::two_site_default();
  if (a.sites < 1 || a.sites > static_cast<int>(cfg.sites.size())) {
    throw std::runtime_error("gen-data supports --sites 1 or 2");
  }
  cfg.sites.resize(static_cast<std::size_t>(a.sites));
  if (!a.species_per_site.empty()) {
    if (a.species_per_site.size() != cfg.sites.size()) {
      throw std::runtime_error("--species-per-site needs one count per site");
    }
    for (std::size_t i = 0; i < cfg.sites.size(); ++i) {
      cfg.sites[i].n_species = a.species_per_site[i];
    }
  }
  if (!a.capacities.empty()) {
    if (a.capacities.size() != cfg.sites.size()) {
      throw std::runtime_error("--capacity needs one value per site");
    }
    for (std::size_t i = 0; i < cfg.sites.size(); ++i) {
      cfg.sites[i].capacity = a.capacities[i];
    }
  }
  cfg.yields = {a.yield_mean, a.yield_sd};
  cfg.history_start_year = a.history_start;
  cfg.history_end_year = a.history_end;
  cfg.horizon = {parse_iso_date(a.horizon_start), a.horizon_days};
  cfg.duration_min_days = a.duration_min;
  cfg.duration_max_days = a.duration_max;
  cfg.seed = a.seed;

  const Dataset ds = gen_dataset(cfg);
  const fs::path out(a.out);

  std::size_t rows = 0;
  for (const auto& h : ds.histories) rows += h.size();
  write_gdu_history_csv(out / "gdu_history.csv", ds.histories);
  note_written(out / "gdu_history.csv",
               std::to_string(ds.histories.size()) +
                   (ds.histories.size() == 1 ? " site, " : " sites, ") +
                   std::to_string(rows) + " rows");
  write_species_csv(out / "species.csv", ds.species, cfg.horizon.start);
  note_written(out / "species.csv",
               std::to_string(ds.species.size()) + " species");

  ScenarioFile sf;
  sf.horizon_start = cfg.horizon.start;
  sf.d_max = cfg.horizon.n_days;
  for (const auto& s : cfg.sites) {
    sf.sites.push_back({s.site_id, s.capacity, s.n_species});
  }
  sf.yields = cfg.yields;
  sf.history_start_year = cfg.history_start_year;
  sf.history_end_year = cfg.history_end_year;
  sf.seed = cfg.seed;
  write_scenario_json(out / "scenario.json", sf);
  note_written(out / "scenario.json");
}

void setup_gen_data(CLI::App& app) {
  auto a = std::make_shared<GenDataArgs>();
  auto* cmd = app.add_subcommand(
      "gen-data", "Generate a synthetic GDU history and species table");
  add_out_dir(cmd, a->out);
  cmd->add_option("--seed", a->seed, "Generation seed")->capture_default_str();
  cmd->add_option("--sites", a->sites, "Number of sites (1 or 2)")
      ->capture_default_str();
  cmd->add_option("--species-per-site", a->species_per_site,
                  "Species counts, one per site")
      ->delimiter(',');
  cmd->add_option("--capacity", a->capacities,
                  "Weekly capacities, one per site")
      ->delimiter(',');
  cmd->add_option("--horizon-start", a->horizon_start,
                  "First day of the planning horizon")
      ->capture_default_str();
  cmd->add_option("--horizon-days", a->horizon_days, "Horizon length in days")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--history-start", a->history_start,
                  "First year of the observed history")
      ->capture_default_str();
  cmd->add_option("--history-end", a->history_end,
                  "Last year of the observed history (inclusive)")
      ->capture_default_str();
  cmd->add_option("--yield-mean", a->yield_mean, "Mean per-species yield")
      ->capture_default_str();
  cmd->add_option("--yield-sd", a->yield_sd, "Yield standard deviation")
      ->capture_default_str();
  cmd->add_option("--duration-min", a->duration_min,
                  "Shortest target growth duration in days")
      ->capture_default_str();
  cmd->add_option("--duration-max", a->duration_max,
                  "Longest target growth duration in days")
      ->capture_default_str();
  cmd->callback([a] { run_gen_data(*a); });
}

// ---- fit ---------------------------------------------------------------------

struct FitArgs {
  std::string history;
  int site = 0;
  std::string out;
  GprFitConfig cfg;
};

void run_fit(const FitArgs& a) {
  const auto histories = read_gdu_history_csv(a.history);
  const GduHistory& h = find_site_history(histories, a.site, a.history);
  const GprModel model = fit_gpr(h, a.cfg);

  const fs::path out(a.out);
  write_model_json(out / "model.json", model, a.site, a.cfg.subsample_stride);
  std::cout << "site " << a.site << ": fitted on " << model.train_t().size()
            << " of " << h.size() << " observations (stride "
            << a.cfg.subsample_stride << "), log marginal likelihood "
            << format_double(model.log_marginal_likelihood()) << "\n";
  note_written(out / "model.json");
}

void setup_fit(CLI::App& app) {
  auto a = std::make_shared<FitArgs>();
  auto* cmd = app.add_subcommand(
      "fit", "Fit the GDU accumulation model to one site's history");
  cmd->add_option("--history", a->history, "GDU history CSV (site,date,gdu)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--site", a->site, "Site id")->capture_default_str();
  add_out_dir(cmd, a->out);
  cmd->add_option("--stride", a->cfg.subsample_stride,
                  "Keep every k-th observation for training")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--starts", a->cfg.n_starts, "Multi-start count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iter", a->cfg.max_iterations,
                  "Simplex iterations per start")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol", a->cfg.tolerance, "Simplex convergence tolerance")
      ->capture_default_str();
  cmd->add_option("--seed", a->cfg.seed, "Seed for the restart draws")
      ->capture_default_str();
  cmd->callback([a] { run_fit(*a); });
}

// ---- forecast ------------------------------------------------------------------

struct ForecastArgs {
  std::string method = "gp";
  std::string model;
  std::string history;
  int site = 0;
  std::string start = "2020-01-01";
  int days = 0;
  std::string out;
};

void run_forecast(const ForecastArgs& a) {
  const HorizonSpec horizon{parse_iso_date(a.start), a.days};
  GduForecast f;
  if (a.method == "gp") {
    if (a.model.empty()) {
      throw std::runtime_error("the gp forecast needs --model");
    }
    f = predict_forecast(read_model_json(a.model), horizon);
  } else if (a.method == "climatology") {
    if (a.history.empty()) {
      throw std::runtime_error("the climatology forecast needs --history");
    }
    const auto histories = read_gdu_history_csv(a.history);
    f = naive_forecast(find_site_history(histories, a.site, a.history),
                       horizon);
  } else {
    throw std::runtime_error("unknown method '" + a.method +
                             "' (expected gp or climatology)");
  }
  const fs::path out(a.out);
  write_forecast_csv(out / "forecast.csv", f);
  note_written(out / "forecast.csv",
               std::to_string(a.days) + " days from " + a.start);
}

void setup_forecast(CLI::App& app) {
  auto a = std::make_shared<ForecastArgs>();
  auto* cmd = app.add_subcommand(
      "forecast", "Write the daily GDU forecast over a horizon");
  cmd->add_option("--method", a->method, "gp | climatology")
      ->capture_default_str();
  cmd->add_option("--model", a->model, "Fitted model JSON (gp method)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--history", a->history,
                  "GDU history CSV (climatology method)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--site", a->site, "Site id (climatology method)")
      ->capture_default_str();
  cmd->add_option("--start", a->start, "Horizon start date")
      ->capture_default_str();
  cmd->add_option("--days", a->days, "Horizon length in days")
      ->required()
      ->check(CLI::PositiveNumber);
  add_out_dir(cmd, a->out);
  cmd->callback([a] { run_forecast(*a); });
}

// ---- matrix --------------------------------------------------------------------

struct MatrixArgs {
  SourceArgs src;
  std::string species;
  int site = 0;
  std::string out;
};

void run_matrix(const MatrixArgs& a) {
  const GduForecast f = load_forecast(a.src);
  const auto sp = load_site_species(a.species, f.horizon_start, a.site);
  const HarvestMatrix m = build_harvest_matrix(mean_accumulation(f), sp);
  const fs::path out(a.out);
  write_matrix_csv(out / "matrix.csv", m, sp);
  note_written(out / "matrix.csv", std::to_string(sp.size()) +
                                       " species, horizon " +
                                       std::to_string(m.d_max()) + " days");
}

void setup_matrix(CLI::App& app) {
  auto a = std::make_shared<MatrixArgs>();
  auto* cmd = app.add_subcommand(
      "matrix", "Precompute the harvest day for every planting choice");
  add_source_options(cmd, a->src);
  cmd->add_option("--species", a->species, "Species table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--site", a->site, "Site id")->capture_default_str();
  add_out_dir(cmd, a->out);
  cmd->callback([a] { run_matrix(*a); });
}

// ---- optimize ------------------------------------------------------------------

struct OptimizeArgs {
  SourceArgs src;
  std::string species;
  int site = 0;
  ScenarioArgs sc;
  std::int64_t generations = 100000;
  std::uint64_t seed = 0;
  double rho_max = 0.01;
  double omega = 5e-4;
  std::int64_t log_stride = 0;
  std::string out;
};

void run_optimize(const OptimizeArgs& a) {
  const GduForecast f = load_forecast(a.src);
  const auto sp = load_site_species(a.species, f.horizon_start, a.site);
  const HarvestMatrix matrix = build_harvest_matrix(mean_accumulation(f), sp);
  const ScenarioSpec scenario = make_scenario(a.sc);
  const WeekMapping weeks = build_week_mapping(
      matrix.d_max(), scenario.week_delta,
      scenario.cyclic_weeks ? WeekKind::kCyclic : WeekKind::kOneShot);

  EsConfig cfg;
  cfg.generations = a.generations;
  cfg.seed = a.seed;
  cfg.rho_max = a.rho_max;
  cfg.omega = a.omega;
  cfg.scenario = scenario;
  cfg.log_stride = a.log_stride;
  const EsState st = run_one_plus_one_es(cfg, matrix, sp, weeks);

  const fs::path out(a.out);
  write_schedule_csv(out / "schedule.csv", st.parent, sp, matrix);
  const auto& entries =
      a.log_stride > 0 ? st.stride_log : st.improvements;
  write_loss_history_csv(out / "loss_history.csv", entries);

  EsRunFile rf;
  rf.seed = a.seed;
  rf.generations = a.generations;
  rf.scenario = to_token(scenario.kind);
  rf.site_id = a.site;
  rf.capacity = st.c_target;
  rf.rho_max = a.rho_max;
  rf.omega = a.omega;
  rf.week_delta = scenario.week_delta;
  rf.cyclic_weeks = scenario.cyclic_weeks;
  rf.final_l_plus = st.parent_loss.l_plus;
  rf.final_l_minus = st.parent_loss.l_minus;
  write_es_run_json(out / "es_run.json", rf);

  std::cout << "generation " << st.generation << ": l_plus "
            << format_double(st.parent_loss.l_plus) << ", l_minus "
            << format_double(st.parent_loss.l_minus) << ", capacity "
            << format_double(st.c_target) << " ("
            << st.improvements.size() << " improvements)\n";
  note_written(out / "schedule.csv");
  note_written(out / "loss_history.csv",
               std::to_string(entries.size()) + " entries");
  note_written(out / "es_run.json");
}

void setup_optimize(CLI::App& app) {
  auto a = std::make_shared<OptimizeArgs>();
  auto* cmd = app.add_subcommand(
      "optimize", "Search planting days that level the weekly harvest");
  add_source_options(cmd, a->src);
  cmd->add_option("--species", a->species, "Species table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--site", a->site, "Site id")->capture_default_str();
  add_scenario_options(cmd, a->sc);
  cmd->add_option("--generations", a->generations, "Mutation budget")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--seed", a->seed, "Search seed")->capture_default_str();
  cmd->add_option("--rho-max", a->rho_max,
                  "Upper end of the mutation-rate oscillation")
      ->capture_default_str();
  cmd->add_option("--omega", a->omega,
                  "Oscillation frequency per rejection step")
      ->capture_default_str();
  cmd->add_option("--log-stride", a->log_stride,
                  "Log the parent loss every N generations (default: log "
                  "improvements only)")
      ->check(CLI::NonNegativeNumber);
  add_out_dir(cmd, a->out);
  cmd->callback([a] { run_optimize(*a); });
}

// ---- evaluate ------------------------------------------------------------------

struct EvaluateArgs {
  SourceArgs src;
  std::string species;
  int site = 0;
  std::string schedule;
  std::string reference;
  std::string run;
  ScenarioArgs sc;
  int n_bootstrap = 200;
  std::uint64_t bootstrap_seed = 0;
  std::string out;
};

void run_evaluate(const EvaluateArgs& a) {
  const GduForecast f = load_forecast(a.src);
  const auto sp = load_site_species(a.species, f.horizon_start, a.site);
  const Schedule optimized = read_schedule_csv(a.schedule, sp);
  const Schedule reference = a.reference.empty()
                                 ? reference_from_original(sp)
                                 : read_schedule_csv(a.reference, sp);

  ScenarioSpec scenario;
  std::uint64_t opt_seed = 0;
  std::int64_t budget = 0;
  std::string token;
  if (!a.run.empty()) {
    const EsRunFile run = read_es_run_json(a.run);
    scenario.kind = scenario_kind_from_token(run.scenario);
    scenario.fixed_capacity = run.capacity;
    scenario.cyclic_weeks = run.cyclic_weeks;
    scenario.week_delta = run.week_delta;
    opt_seed = run.seed;
    budget = run.generations;
    token = run.scenario;
  } else {
    scenario = make_scenario(a.sc);
    token = to_token(scenario.kind);
  }

  const EvalReport rep = evaluate_schedules(optimized, reference, f, sp,
                                            scenario, a.n_bootstrap,
                                            a.bootstrap_seed);
  const fs::path out(a.out);
  write_weekly_csv(out / "weekly.csv", rep.weekly);

  ReportFile rf;
  rf.report = rep;
  rf.seed = opt_seed;
  rf.budget = budget;
  rf.scenario = token;
  rf.site_id = a.site;
  write_report_json(out / "report.json", rf);

  print_report(rf);
  note_written(out / "weekly.csv");
  note_written(out / "report.json");
}

void setup_evaluate(CLI::App& app) {
  auto a = std::make_shared<EvaluateArgs>();
  auto* cmd = app.add_subcommand(
      "evaluate", "Score a schedule against a reference with error bars");
  add_source_options(cmd, a->src);
  cmd->add_option("--species", a->species, "Species table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--site", a->site, "Site id")->capture_default_str();
  cmd->add_option("--schedule", a->schedule, "Optimized schedule CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--reference", a->reference,
                  "Reference schedule CSV (default: the original plantings "
                  "from the species table)")
      ->check(CLI::ExistingFile);
  auto* run = cmd->add_option("--run", a->run,
                              "Optimizer metadata JSON; supplies the "
                              "scenario and capacity")
                  ->check(CLI::ExistingFile);
  ScenarioArgs& sc = a->sc;
  add_scenario_options(cmd, sc);
  run->excludes("--scenario", "--capacity", "--cyclic", "--week-delta");
  cmd->add_option("--bootstrap", a->n_bootstrap,
                  "Bootstrap sample count for the weekly error bars")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--bootstrap-seed", a->bootstrap_seed, "Bootstrap seed")
      ->capture_default_str();
  add_out_dir(cmd, a->out);
  cmd->callback([a] { run_evaluate(*a); });
}

// ---- compare -------------------------------------------------------------------

struct CompareArgs {
  SourceArgs src;
  std::string species;
  int site = 0;
  ScenarioArgs sc;
  std::int64_t generations = 100000;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  double lambda = 1.0;
  std::string out;
};

void run_compare(const CompareArgs& a) {
  const GduForecast f = load_forecast(a.src);
  const auto sp = load_site_species(a.species, f.horizon_start, a.site);
  const HarvestMatrix matrix = build_harvest_matrix(mean_accumulation(f), sp);
  const ScenarioSpec scenario = make_scenario(a.sc);
  const WeekMapping weeks = build_week_mapping(
      matrix.d_max(), scenario.week_delta,
      scenario.cyclic_weeks ? WeekKind::kCyclic : WeekKind::kOneShot);

  std::vector<CompareRow> rows;
  for (const std::uint64_t seed : a.seeds) {
    EsConfig cfg;
    cfg.generations = a.generations;
    cfg.seed = seed;
    cfg.scenario = scenario;

    const EsState st = run_one_plus_one_es(cfg, matrix, sp, weeks);
    rows.push_back({"hierarchical_es", seed, a.generations + 1,
                    st.parent_loss.l_plus, st.parent_loss.l_minus});

    const BaselineResult ws =
        run_weighted_sum_es(cfg, a.lambda, matrix, sp, weeks);
    rows.push_back({ws.method, seed, ws.evaluations, ws.best_loss.l_plus,
                    ws.best_loss.l_minus});

    const BaselineResult rs =
        run_random_search(cfg, a.generations + 1, matrix, sp, weeks);
    rows.push_back({rs.method, seed, rs.evaluations, rs.best_loss.l_plus,
                    rs.best_loss.l_minus});

    std::cout << "seed " << seed << ": hierarchical l_plus "
              << format_double(st.parent_loss.l_plus) << ", l_minus "
              << format_double(st.parent_loss.l_minus) << " | weighted-sum "
              << format_double(ws.best_loss.l_plus) << ", "
              << format_double(ws.best_loss.l_minus) << " | random "
              << format_double(rs.best_loss.l_plus) << ", "
              << format_double(rs.best_loss.l_minus) << "\n";
  }

  const fs::path out(a.out);
  write_compare_csv(out / "compare.csv", rows);
  note_written(out / "compare.csv", std::to_string(rows.size()) + " rows");
}

void setup_compare(CLI::App& app) {
  auto a = std::make_shared<CompareArgs>();
  auto* cmd = app.add_subcommand(
      "compare", "Run the optimizer against baselines at equal budgets");
  add_source_options(cmd, a->src);
  cmd->add_option("--species", a->species, "Species table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--site", a->site, "Site id")->capture_default_str();
  add_scenario_options(cmd, a->sc);
  cmd->add_option("--generations", a->generations,
                  "Mutation budget per method")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--seeds", a->seeds, "Seeds, one run of each method per "
                                       "seed")
      ->delimiter(',');
  cmd->add_option("--lambda", a->lambda,
                  "Undershoot weight of the weighted-sum baseline")
      ->capture_default_str();
  add_out_dir(cmd, a->out);
  cmd->callback([a] { run_compare(*a); });
}

// ---- report --------------------------------------------------------------------

struct ReportArgs {
  std::string dir;
};

void run_report(const ReportArgs& a) {
  const fs::path dir(a.dir);
  const ReportFile rf = read_report_json(dir / "report.json");
  print_report(rf);
  const fs::path weekly = dir / "weekly.csv";
  if (fs::exists(weekly)) {
    std::cout << "\n";
    print_weekly(read_weekly_csv(weekly), rf.report.c_target);
  }
}

void setup_report(CLI::App& app) {
  auto a = std::make_shared<ReportArgs>();
  auto* cmd = app.add_subcommand(
      "report", "Print an evaluation report in readable form");
  a->dir = ".";
  cmd->add_option("--dir", a->dir,
                  "Directory holding report.json (and weekly.csv)")
      ->envname("HARVEST_OUT")
      ->capture_default_str();
  cmd->callback([a] { run_report(*a); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GDU forecasting and harvest-schedule optimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");
  app.set_config("--config", "", "Read options from an INI/TOML file");

  setup_gen_data(app);
  setup_fit(app);
  setup_forecast(app);
  setup_matrix(app);
  setup_optimize(app);
  setup_evaluate(app);
  setup_compare(app);
  setup_report(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
