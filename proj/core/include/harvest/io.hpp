#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harvest/datagen.hpp"
#include "harvest/evolution.hpp"
#include "harvest/gpr.hpp"
#include "harvest/types.hpp"
#include "harvest/uncertainty.hpp"

namespace harvest {

// All text artifacts are written to a temp file in the target directory and
// renamed into place, so readers never observe partial files.
void atomic_write_text(const std::filesystem::path& path,
                       std::string_view content);

// Shortest round-trip decimal form (via std::to_chars).
std::string format_double(double v);

// In every file format, day columns are 1-based offsets from the horizon
// start (or ISO dates where noted) and -1 marks a missing/invalid day; the
// 0-based in-memory convention never leaks into files.

// ---- gdu_history.csv: site,date,gdu ------------------------------------
struct IngestStats {
  int leap_rows_dropped = 0;
};

std::vector<GduHistory> read_gdu_history_csv(const std::filesystem::path& path,
                                             IngestStats* stats = nullptr);
void write_gdu_history_csv(const std::filesystem::path& path,
                           std::span<const GduHistory> histories);

// ---- species.csv: species_id,site,early_plant,late_plant,required_gdu,
//                   yield,original_plant ---------------------------------
// Day columns accept 1-based integers or ISO dates on input; written as
// 1-based integers. original_plant may be -1 (unknown).
std::vector<SpeciesRecord> read_species_csv(const std::filesystem::path& path,
                                            const CivilDate& horizon_start);
void write_species_csv(const std::filesystem::path& path,
                       std::span<const SpeciesRecord> species,
                       const CivilDate& horizon_start);

// ---- forecast.csv: day,date,mean,std ------------------------------------
GduForecast read_forecast_csv(const std::filesystem::path& path);
void write_forecast_csv(const std::filesystem::path& path,
                        const GduForecast& forecast);

// ---- matrix.csv: species_id,plant_day,harvest_day (window entries only) --
void write_matrix_csv(const std::filesystem::path& path,
                      const HarvestMatrix& matrix,
                      std::span<const SpeciesRecord> species);
HarvestMatrix read_matrix_csv(const std::filesystem::path& path,
                              std::span<const SpeciesRecord> species,
                              int d_max);

// ---- schedule.csv: species_id,plant_day,harvest_day ----------------------
void write_schedule_csv(const std::filesystem::path& path,
                        const Schedule& schedule,
                        std::span<const SpeciesRecord> species,
                        const HarvestMatrix& matrix);
// Rows are matched to `species` by species_id; harvest_day is ignored.
Schedule read_schedule_csv(const std::filesystem::path& path,
                           std::span<const SpeciesRecord> species);

// ---- weekly.csv: week,yield_mean,yield_std -------------------------------
void write_weekly_csv(const std::filesystem::path& path,
                      const WeeklyStats& stats);
WeeklyStats read_weekly_csv(const std::filesystem::path& path);

// ---- loss_history.csv: generation,l_plus,l_minus,mutation_rate -----------
void write_loss_history_csv(const std::filesystem::path& path,
                            std::span<const LossHistoryEntry> entries);
std::vector<LossHistoryEntry> read_loss_history_csv(
    const std::filesystem::path& path);

// ---- compare.csv: method,seed,evaluations,l_plus,l_minus -----------------
struct CompareRow {
  std::string method;
  std::uint64_t seed = 0;
  std::int64_t evaluations = 0;
  double l_plus = 0.0;
  double l_minus = 0.0;
};
void write_compare_csv(const std::filesystem::path& path,
                       std::span<const CompareRow> rows);
std::vector<CompareRow> read_compare_csv(const std::filesystem::path& path);

// ---- report.json ---------------------------------------------------------
struct ReportFile {
  EvalReport report;
  std::uint64_t seed = 0;     // optimization seed
  std::int64_t budget = 0;    // optimization generations
  std::string scenario;       // "fixed" | "share-active" | "share-reachable"
  int site_id = 0;
};
void write_report_json(const std::filesystem::path& path,
                       const ReportFile& rf);
ReportFile read_report_json(const std::filesystem::path& path);

// ---- model.json ----------------------------------------------------------
void write_model_json(const std::filesystem::path& path, const GprModel& model,
                      int site_id, int subsample_stride);
GprModel read_model_json(const std::filesystem::path& path,
                         int* site_id = nullptr);

// ---- scenario.json (dataset bundle metadata) ------------------------------
struct ScenarioFile {
  CivilDate horizon_start;
  int d_max = 0;
  struct SiteEntry {
    int site_id = 0;
    double capacity = 0.0;
    int n_species = 0;
  };
  std::vector<SiteEntry> sites;
  YieldSpec yields;
  int history_start_year = 0;
  int history_end_year = 0;
  std::uint64_t seed = 0;
};
void write_scenario_json(const std::filesystem::path& path,
                         const ScenarioFile& sf);
ScenarioFile read_scenario_json(const std::filesystem::path& path);

// ---- optimizer run metadata (es_run.json) ---------------------------------
struct EsRunFile {
  std::uint64_t seed = 0;
  std::int64_t generations = 0;
  std::string scenario;
  int site_id = 0;
  double capacity = 0.0;  // capacity in effect at the end of the run
  double rho_max = 0.0;
  double omega = 0.0;
  int week_delta = 0;
  bool cyclic_weeks = false;
  double final_l_plus = 0.0;
  double final_l_minus = 0.0;
};
void write_es_run_json(const std::filesystem::path& path, const EsRunFile& rf);
EsRunFile read_es_run_json(const std::filesystem::path& path);

std::string to_token(ScenarioKind kind);
ScenarioKind scenario_kind_from_token(const std::string& token);

}  // namespace harvest
