#include "harvest/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace harvest {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const fs::path& path, std::size_t line,
                       const std::string& message) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           message);
}

[[noreturn]] void fail(const fs::path& path, const std::string& message) {
  throw std::runtime_error(path.string() + ": " + message);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

class CsvReader {
 public:
  CsvReader(const fs::path& path, const std::vector<std::string>& header)
      : path_(path), in_(path) {
    if (!in_) fail(path_, "cannot open file");
    std::string first;
    if (!std::getline(in_, first)) fail(path_, "empty file, header expected");
    ++line_;
    const auto cells = split_csv_line(first);
    if (cells != header) {
      std::string want;
      for (std::size_t i = 0; i < header.size(); ++i) {
        want += (i ? "," : "") + header[i];
      }
      fail(path_, line_, "unexpected header, want '" + want + "'");
    }
    n_cols_ = header.size();
  }

  bool next(std::vector<std::string>& cells) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (line.empty() || line == "\r") continue;
      cells = split_csv_line(line);
      if (cells.size() != n_cols_) {
        fail(path_, line_,
             "expected " + std::to_string(n_cols_) + " columns, got " +
                 std::to_string(cells.size()));
      }
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }
  const fs::path& path() const { return path_; }

  std::int64_t as_int(const std::string& cell, const char* col) const {
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size()) {
      fail(path_, line_, std::string("column '") + col +
                             "': expected integer, got '" + cell + "'");
    }
    return v;
  }

  double as_double(const std::string& cell, const char* col) const {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size()) {
      fail(path_, line_, std::string("column '") + col +
                             "': expected number, got '" + cell + "'");
    }
    return v;
  }

  std::uint64_t as_uint(const std::string& cell, const char* col) const {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size()) {
      fail(path_, line_, std::string("column '") + col +
                             "': expected unsigned integer, got '" + cell + "'");
    }
    return v;
  }

 private:
  fs::path path_;
  std::ifstream in_;
  std::size_t line_ = 0;
  std::size_t n_cols_ = 0;
};

bool looks_like_iso_date(const std::string& cell) {
  return cell.size() == 10 && cell[4] == '-' && cell[7] == '-';
}

// 1-based day number or ISO date -> 0-based horizon offset.
DayIndex parse_day_cell(const CsvReader& r, const std::string& cell,
                        const char* col, const CivilDate& horizon_start,
                        bool allow_missing) {
  if (looks_like_iso_date(cell)) {
    const CivilDate d = parse_iso_date(cell);
    return DayIndex(
        static_cast<std::int32_t>(model_day(d) - model_day(horizon_start)));
  }
  const std::int64_t v = r.as_int(cell, col);
  if (v == -1) {
    if (allow_missing) return DayIndex::invalid();
  }
  if (v < 1) {
    throw std::runtime_error(r.path().string() + ":" +
                             std::to_string(r.line()) + ": column '" + col +
                             "': day numbers are 1-based, got " +
                             std::to_string(v));
  }
  return DayIndex(static_cast<std::int32_t>(v - 1));
}

std::string day_cell(DayIndex d) {
  return d.is_valid() ? std::to_string(d.value() + 1) : "-1";
}

ordered_json parse_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  try {
    return ordered_json::parse(in);
  } catch (const std::exception& e) {
    fail(path, std::string("invalid JSON: ") + e.what());
  }
}

void write_json_file(const fs::path& path, const ordered_json& j) {
  atomic_write_text(path, j.dump(2) + "\n");
}

}  // namespace

void atomic_write_text(const fs::path& path, std::string_view content) {
  const fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(tmp, "cannot open for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) fail(tmp, "short write");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(path, "rename failed: " + ec.message());
}

std::string format_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::logic_error("format_double: overflow");
  return std::string(buf, p);
}

// ---- gdu_history.csv ------------------------------------------------------

std::vector<GduHistory> read_gdu_history_csv(const fs::path& path,
                                             IngestStats* stats) {
  CsvReader r(path, {"site", "date", "gdu"});
  std::map<int, std::vector<std::pair<std::int64_t, double>>> by_site;
  int dropped = 0;
  std::vector<std::string> cells;
  while (r.next(cells)) {
    const int site = static_cast<int>(r.as_int(cells[0], "site"));
    const CivilDate date = parse_iso_date(cells[1]);
    const double gdu = r.as_double(cells[2], "gdu");
    if (is_leap_day(date)) {
      ++dropped;
      continue;
    }
    if (gdu < 0.0) {
      fail(path, r.line(), "negative GDU value " + cells[2]);
    }
    by_site[site].push_back({model_day(date), gdu});
  }
  if (stats) stats->leap_rows_dropped = dropped;

  std::vector<GduHistory> out;
  for (auto& [site, rows] : by_site) {
    std::sort(rows.begin(), rows.end());
    GduHistory h;
    h.site_id = site;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].first == rows[i - 1].first) {
        fail(path, "duplicate observation for site " + std::to_string(site) +
                       " on " +
                       format_iso_date(date_from_model_day(rows[i].first)));
      }
      h.days.push_back(rows[i].first);
      h.values.push_back(rows[i].second);
    }
    out.push_back(std::move(h));
  }
  return out;
}

void write_gdu_history_csv(const fs::path& path,
                           std::span<const GduHistory> histories) {
  std::string s = "site,date,gdu\n";
  for (const auto& h : histories) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      s += std::to_string(h.site_id);
      s += ',';
      s += format_iso_date(date_from_model_day(h.days[i]));
      s += ',';
      s += format_double(h.values[i]);
      s += '\n';
    }
  }
  atomic_write_text(path, s);
}

// ---- species.csv ------------------------------------------------------------

std::vector<SpeciesRecord> read_species_csv(const fs::path& path,
                                            const CivilDate& horizon_start) {
  CsvReader r(path, {"species_id", "site", "early_plant", "late_plant",
                     "required_gdu", "yield", "original_plant"});
  std::vector<SpeciesRecord> out;
  std::vector<std::string> cells;
  while (r.next(cells)) {
    SpeciesRecord sp;
    sp.species_id = cells[0];
    if (sp.species_id.empty()) fail(path, r.line(), "empty species_id");
    sp.site_id = static_cast<int>(r.as_int(cells[1], "site"));
    sp.d_early = parse_day_cell(r, cells[2], "early_plant", horizon_start,
                                false);
    sp.d_late = parse_day_cell(r, cells[3], "late_plant", horizon_start,
                               false);
    sp.g_harvest = r.as_double(cells[4], "required_gdu");
    sp.yield_q = r.as_double(cells[5], "yield");
    const DayIndex op = parse_day_cell(r, cells[6], "original_plant",
                                       horizon_start, true);
    if (op.is_valid()) sp.original_plant = op;

    if (sp.d_early > sp.d_late) {
      fail(path, r.line(), "species '" + sp.species_id +
                               "': early_plant after late_plant");
    }
    if (sp.g_harvest < 0.0) {
      fail(path, r.line(), "species '" + sp.species_id +
                               "': negative required_gdu");
    }
    if (sp.yield_q < 0.0) {
      fail(path, r.line(), "species '" + sp.species_id + "': negative yield");
    }
    if (sp.original_plant &&
        (*sp.original_plant < sp.d_early || *sp.original_plant > sp.d_late)) {
      fail(path, r.line(), "species '" + sp.species_id +
                               "': original_plant outside planting window");
    }
    out.push_back(std::move(sp));
  }
  return out;
}

void write_species_csv(const fs::path& path,
                       std::span<const SpeciesRecord> species,
                       const CivilDate& /*horizon_start*/) {
  std::string s =
      "species_id,site,early_plant,late_plant,required_gdu,yield,"
      "original_plant\n";
  for (const auto& sp : species) {
    s += sp.species_id;
    s += ',';
    s += std::to_string(sp.site_id);
    s += ',';
    s += day_cell(sp.d_early);
    s += ',';
    s += day_cell(sp.d_late);
    s += ',';
    s += format_double(sp.g_harvest);
    s += ',';
    s += format_double(sp.yield_q);
    s += ',';
    s += day_cell(sp.original_plant.value_or(DayIndex::invalid()));
    s += '\n';
  }
  atomic_write_text(path, s);
}

// ---- forecast.csv -----------------------------------------------------------

GduForecast read_forecast_csv(const fs::path& path) {
  CsvReader r(path, {"day", "date", "mean", "std"});
  GduForecast f;
  std::vector<std::string> cells;
  std::int64_t start_day = 0;
  while (r.next(cells)) {
    const std::int64_t day = r.as_int(cells[0], "day");
    const CivilDate date = parse_iso_date(cells[1]);
    const std::int64_t expect =
        static_cast<std::int64_t>(f.mean.size()) + 1;
    if (day != expect) {
      fail(path, r.line(), "day column must run 1.." + std::string("n, got ") +
                               std::to_string(day));
    }
    if (f.mean.empty()) {
      f.horizon_start = date;
      start_day = model_day(date);
    } else if (model_day(date) != start_day + expect - 1) {
      fail(path, r.line(), "date column not consecutive at " + cells[1]);
    }
    const double sd = r.as_double(cells[3], "std");
    if (sd < 0.0) fail(path, r.line(), "negative std");
    f.mean.push_back(r.as_double(cells[2], "mean"));
    f.sd.push_back(sd);
  }
  if (f.mean.empty()) fail(path, "forecast has no rows");
  return f;
}

void write_forecast_csv(const fs::path& path, const GduForecast& forecast) {
  std::string s = "day,date,mean,std\n";
  const std::int64_t start = model_day(forecast.horizon_start);
  for (std::size_t k = 0; k < forecast.mean.size(); ++k) {
    s += std::to_string(k + 1);
    s += ',';
    s += format_iso_date(date_from_model_day(start + static_cast<std::int64_t>(k)));
    s += ',';
    s += format_double(forecast.mean[k]);
    s += ',';
    s += format_double(forecast.sd[k]);
    s += '\n';
  }
  atomic_write_text(path, s);
}

// ---- matrix.csv -------------------------------------------------------------

void write_matrix_csv(const fs::path& path, const HarvestMatrix& matrix,
                      std::span<const SpeciesRecord> species) {
  if (matrix.n_species() != species.size()) {
    throw std::invalid_argument(
        "write_matrix_csv: matrix and species table disagree on size");
  }
  std::string s = "species_id,plant_day,harvest_day\n";
  for (std::size_t i = 0; i < species.size(); ++i) {
    for (int j = species[i].d_early.value(); j <= species[i].d_late.value();
         ++j) {
      s += species[i].species_id;
      s += ',';
      s += day_cell(DayIndex(j));
      s += ',';
      s += day_cell(matrix.at(i, j));
      s += '\n';
    }
  }
  atomic_write_text(path, s);
}

HarvestMatrix read_matrix_csv(const fs::path& path,
                              std::span<const SpeciesRecord> species,
                              int d_max) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < species.size(); ++i) {
    index[species[i].species_id] = i;
  }
  HarvestMatrix m(species.size(), d_max);
  CsvReader r(path, {"species_id", "plant_day", "harvest_day"});
  std::vector<std::string> cells;
  while (r.next(cells)) {
    const auto it = index.find(cells[0]);
    if (it == index.end()) {
      fail(path, r.line(), "unknown species_id '" + cells[0] + "'");
    }
    const std::int64_t plant = r.as_int(cells[1], "plant_day");
    const std::int64_t h = r.as_int(cells[2], "harvest_day");
    if (plant < 1 || plant > d_max) {
      fail(path, r.line(), "plant_day outside horizon");
    }
    if (h != -1 && (h < 1 || h > d_max)) {
      fail(path, r.line(), "harvest_day outside horizon");
    }
    m.set(it->second, static_cast<int>(plant - 1),
          h == -1 ? DayIndex::invalid()
                  : DayIndex(static_cast<std::int32_t>(h - 1)));
  }
  return m;
}

// ---- schedule.csv -----------------------------------------------------------

void write_schedule_csv(const fs::path& path, const Schedule& schedule,
                        std::span<const SpeciesRecord> species,
                        const HarvestMatrix& matrix) {
  if (schedule.plant_day.size() != species.size() ||
      matrix.n_species() != species.size()) {
    throw std::invalid_argument(
        "write_schedule_csv: schedule, species and matrix disagree on size");
  }
  std::string s = "species_id,plant_day,harvest_day\n";
  for (std::size_t i = 0; i < species.size(); ++i) {
    const DayIndex d = schedule.plant_day[i];
    s += species[i].species_id;
    s += ',';
    s += day_cell(d);
    s += ',';
    s += day_cell(d.is_valid() ? matrix.at(i, d.value())
                               : DayIndex::invalid());
    s += '\n';
  }
  atomic_write_text(path, s);
}

Schedule read_schedule_csv(const fs::path& path,
                           std::span<const SpeciesRecord> species) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < species.size(); ++i) {
    index[species[i].species_id] = i;
  }
  Schedule sched;
  sched.plant_day.assign(species.size(), DayIndex::invalid());
  std::vector<char> seen(species.size(), 0);

  CsvReader r(path, {"species_id", "plant_day", "harvest_day"});
  std::vector<std::string> cells;
  while (r.next(cells)) {
    const auto it = index.find(cells[0]);
    if (it == index.end()) {
      fail(path, r.line(), "unknown species_id '" + cells[0] + "'");
    }
    if (seen[it->second]) {
      fail(path, r.line(), "duplicate species_id '" + cells[0] + "'");
    }
    seen[it->second] = 1;
    const std::int64_t plant = r.as_int(cells[1], "plant_day");
    if (plant < 1) {
      fail(path, r.line(), "schedule rows need a planting day (1-based)");
    }
    sched.plant_day[it->second] =
        DayIndex(static_cast<std::int32_t>(plant - 1));
  }
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (!seen[i]) {
      fail(path, "no schedule row for species '" + species[i].species_id +
                     "'");
    }
  }
  return sched;
}

// ---- weekly.csv -------------------------------------------------------------

void write_weekly_csv(const fs::path& path, const WeeklyStats& stats) {
  std::string s = "week,yield_mean,yield_std\n";
  for (std::size_t w = 0; w < stats.mean.size(); ++w) {
    s += std::to_string(w + 1);
    s += ',';
    s += format_double(stats.mean[w]);
    s += ',';
    s += format_double(stats.sd[w]);
    s += '\n';
  }
  atomic_write_text(path, s);
}

WeeklyStats read_weekly_csv(const fs::path& path) {
  CsvReader r(path, {"week", "yield_mean", "yield_std"});
  WeeklyStats stats;
  std::vector<std::string> cells;
  while (r.next(cells)) {
    const std::int64_t week = r.as_int(cells[0], "week");
    if (week != static_cast<std::int64_t>(stats.mean.size()) + 1) {
      fail(path, r.line(), "week column must run 1..n");
    }
    stats.mean.push_back(r.as_double(cells[1], "yield_mean"));
    stats.sd.push_back(r.as_double(cells[2], "yield_std"));
  }
  return stats;
}

// ---- loss_history.csv ---------------------------------------------------------

void write_loss_history_csv(const fs::path& path,
                            std::span<const LossHistoryEntry> entries) {
  std::string s = "generation,l_plus,l_minus,mutation_rate\n";
  for (const auto& e : entries) {
    s += std::to_string(e.generation);
    s += ',';
    s += format_double(e.l_plus);
    s += ',';
    s += format_double(e.l_minus);
    s += ',';
    s += format_double(e.rate);
    s += '\n';
  }
  atomic_write_text(path, s);
}

std::vector<LossHistoryEntry> read_loss_history_csv(const fs::path& path) {
  CsvReader r(path, {"generation", "l_plus", "l_minus", "mutation_rate"});
  std::vector<LossHistoryEntry> out;
  std::vector<std::string> cells;
  while (r.next(cells)) {
    LossHistoryEntry e;
    e.generation = r.as_int(cells[0], "generation");
    e.l_plus = r.as_double(cells[1], "l_plus");
    e.l_minus = r.as_double(cells[2], "l_minus");
    e.rate = r.as_double(cells[3], "mutation_rate");
    out.push_back(e);
  }
  return out;
}

// ---- compare.csv --------------------------------------------------------------

void write_compare_csv(const fs::path& path,
                       std::span<const CompareRow> rows) {
  std::string s = "method,seed,evaluations,l_plus,l_minus\n";
  for (const auto& row : rows) {
    s += row.method;
    s += ',';
    s += std::to_string(row.seed);
    s += ',';
    s += std::to_string(row.evaluations);
    s += ',';
    s += format_double(row.l_plus);
    s += ',';
    s += format_double(row.l_minus);
    s += '\n';
  }
  atomic_write_text(path, s);
}

std::vector<CompareRow> read_compare_csv(const fs::path& path) {
  CsvReader r(path, {"method", "seed", "evaluations", "l_plus", "l_minus"});
  std::vector<CompareRow> out;
  std::vector<std::string> cells;
  while (r.next(cells)) {
    CompareRow row;
    row.method = cells[0];
    row.seed = r.as_uint(cells[1], "seed");
    row.evaluations = r.as_int(cells[2], "evaluations");
    row.l_plus = r.as_double(cells[3], "l_plus");
    row.l_minus = r.as_double(cells[4], "l_minus");
    out.push_back(std::move(row));
  }
  return out;
}

// ---- report.json ----------------------------------------------------------------

void write_report_json(const fs::path& path, const ReportFile& rf) {
  ordered_json j;
  j["c_target"] = rf.report.c_target;
  j["c_need"] = rf.report.c_need;
  j["overshoot_opt"] = rf.report.opt.overshoot;
  j["undershoot_opt"] = rf.report.opt.undershoot;
  j["overshoot_ref"] = rf.report.ref.overshoot;
  j["undershoot_ref"] = rf.report.ref.undershoot;
  j["r_overshoot"] = rf.report.r_overshoot
                         ? ordered_json(*rf.report.r_overshoot)
                         : ordered_json(nullptr);
  j["r_undershoot"] = rf.report.r_undershoot
                          ? ordered_json(*rf.report.r_undershoot)
                          : ordered_json(nullptr);
  j["n_active_weeks"] = rf.report.n_active_weeks;
  j["seed"] = rf.seed;
  j["budget"] = rf.budget;
  j["scenario"] = rf.scenario;
  j["site"] = rf.site_id;
  j["n_bootstrap"] = rf.report.n_bootstrap;
  j["bootstrap_seed"] = rf.report.bootstrap_seed;
  write_json_file(path, j);
}

ReportFile read_report_json(const fs::path& path) {
  const ordered_json j = parse_json_file(path);
  ReportFile rf;
  try {
    rf.report.c_target = j.at("c_target").get<double>();
    rf.report.c_need = j.at("c_need").get<double>();
    rf.report.opt.overshoot = j.at("overshoot_opt").get<double>();
    rf.report.opt.undershoot = j.at("undershoot_opt").get<double>();
    rf.report.ref.overshoot = j.at("overshoot_ref").get<double>();
    rf.report.ref.undershoot = j.at("undershoot_ref").get<double>();
    if (!j.at("r_overshoot").is_null()) {
      rf.report.r_overshoot = j.at("r_overshoot").get<double>();
    }
    if (!j.at("r_undershoot").is_null()) {
      rf.report.r_undershoot = j.at("r_undershoot").get<double>();
    }
    rf.report.n_active_weeks = j.at("n_active_weeks").get<int>();
    rf.seed = j.at("seed").get<std::uint64_t>();
    rf.budget = j.at("budget").get<std::int64_t>();
    rf.scenario = j.at("scenario").get<std::string>();
    rf.site_id = j.at("site").get<int>();
    rf.report.n_bootstrap = j.at("n_bootstrap").get<int>();
    rf.report.bootstrap_seed = j.at("bootstrap_seed").get<std::uint64_t>();
  } catch (const ordered_json::exception& e) {
    fail(path, std::string("bad report schema: ") + e.what());
  }
  return rf;
}

// ---- model.json -----------------------------------------------------------------

void write_model_json(const fs::path& path, const GprModel& model, int site_id,
                      int subsample_stride) {
  ordered_json j;
  j["kind"] = "gdu_gp";
  j["site"] = site_id;
  ordered_json p;
  p["periodic_variance"] = model.params().periodic_variance;
  p["periodic_lengthscale"] = model.params().periodic_lengthscale;
  p["linear_variance"] = model.params().linear_variance;
  p["bias_variance"] = model.params().bias_variance;
  p["noise_variance"] = model.params().noise_variance;
  j["params"] = p;
  j["center"] = model.center();
  j["subsample_stride"] = subsample_stride;
  j["log_marginal_likelihood"] = model.log_marginal_likelihood();
  j["train_t"] = std::vector<double>(model.train_t().begin(),
                                     model.train_t().end());
  j["train_y"] = std::vector<double>(model.train_y().begin(),
                                     model.train_y().end());
  write_json_file(path, j);
}

GprModel read_model_json(const fs::path& path, int* site_id) {
  const ordered_json j = parse_json_file(path);
  try {
    if (j.at("kind").get<std::string>() != "gdu_gp") {
      fail(path, "not a GDU model file");
    }
    const auto& p = j.at("params");
    KernelParams params{
        p.at("periodic_variance").get<double>(),
        p.at("periodic_lengthscale").get<double>(),
        p.at("linear_variance").get<double>(),
        p.at("bias_variance").get<double>(),
        p.at("noise_variance").get<double>(),
    };
    if (site_id) *site_id = j.at("site").get<int>();
    return GprModel(params, j.at("train_t").get<std::vector<double>>(),
                    j.at("train_y").get<std::vector<double>>(),
                    j.at("center").get<double>());
  } catch (const ordered_json::exception& e) {
    fail(path, std::string("bad model schema: ") + e.what());
  }
}

// ---- scenario.json ----------------------------------------------------------------

void write_scenario_json(const fs::path& path, const ScenarioFile& sf) {
  ordered_json j;
  j["horizon_start"] = format_iso_date(sf.horizon_start);
  j["d_max"] = sf.d_max;
  ordered_json sites = ordered_json::array();
  for (const auto& s : sf.sites) {
    ordered_json e;
    e["site"] = s.site_id;
    e["capacity"] = s.capacity;
    e["n_species"] = s.n_species;
    sites.push_back(e);
  }
  j["sites"] = sites;
  j["yields"] = {{"mean", sf.yields.mean}, {"sd", sf.yields.sd}};
  j["history_years"] = {sf.history_start_year, sf.history_end_year};
  j["seed"] = sf.seed;
  write_json_file(path, j);
}

ScenarioFile read_scenario_json(const fs::path& path) {
  const ordered_json j = parse_json_file(path);
  ScenarioFile sf;
  try {
    sf.horizon_start = parse_iso_date(j.at("horizon_start").get<std::string>());
    sf.d_max = j.at("d_max").get<int>();
    for (const auto& e : j.at("sites")) {
      sf.sites.push_back({e.at("site").get<int>(),
                          e.at("capacity").get<double>(),
                          e.at("n_species").get<int>()});
    }
    sf.yields.mean = j.at("yields").at("mean").get<double>();
    sf.yields.sd = j.at("yields").at("sd").get<double>();
    sf.history_start_year = j.at("history_years").at(0).get<int>();
    sf.history_end_year = j.at("history_years").at(1).get<int>();
    sf.seed = j.at("seed").get<std::uint64_t>();
  } catch (const ordered_json::exception& e) {
    fail(path, std::string("bad scenario schema: ") + e.what());
  }
  return sf;
}

// ---- es_run.json ------------------------------------------------------------------

void write_es_run_json(const fs::path& path, const EsRunFile& rf) {
  ordered_json j;
  j["seed"] = rf.seed;
  j["generations"] = rf.generations;
  j["scenario"] = rf.scenario;
  j["site"] = rf.site_id;
  j["capacity"] = rf.capacity;
  j["rho_max"] = rf.rho_max;
  j["omega"] = rf.omega;
  j["week_delta"] = rf.week_delta;
  j["cyclic_weeks"] = rf.cyclic_weeks;
  j["final_l_plus"] = rf.final_l_plus;
  j["final_l_minus"] = rf.final_l_minus;
  write_json_file(path, j);
}

EsRunFile read_es_run_json(const fs::path& path) {
  const ordered_json j = parse_json_file(path);
  EsRunFile rf;
  try {
    rf.seed = j.at("seed").get<std::uint64_t>();
    rf.generations = j.at("generations").get<std::int64_t>();
    rf.scenario = j.at("scenario").get<std::string>();
    rf.site_id = j.at("site").get<int>();
    rf.capacity = j.at("capacity").get<double>();
    rf.rho_max = j.at("rho_max").get<double>();
    rf.omega = j.at("omega").get<double>();
    rf.week_delta = j.at("week_delta").get<int>();
    rf.cyclic_weeks = j.at("cyclic_weeks").get<bool>();
    rf.final_l_plus = j.at("final_l_plus").get<double>();
    rf.final_l_minus = j.at("final_l_minus").get<double>();
  } catch (const ordered_json::exception& e) {
    fail(path, std::string("bad run-metadata schema: ") + e.what());
  }
  return rf;
}

std::string to_token(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kFixedCapacity:
      return "fixed";
    case ScenarioKind::kActiveWeekShare:
      return "share-active";
    case ScenarioKind::kReachableShare:
      return "share-reachable";
  }
  throw std::logic_error("to_token: unknown scenario kind");
}

ScenarioKind scenario_kind_from_token(const std::string& token) {
  if (token == "fixed") return ScenarioKind::kFixedCapacity;
  if (token == "share-active") return ScenarioKind::kActiveWeekShare;
  if (token == "share-reachable") return ScenarioKind::kReachableShare;
  throw std::invalid_argument(
      "unknown scenario '" + token +
      "' (expected fixed, share-active or share-reachable)");
}

}  // namespace harvest
