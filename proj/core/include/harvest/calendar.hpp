#pragma once

#include <cstdint>
#include <string>

namespace harvest {

// All date arithmetic runs on a 365-day model calendar: Feb 29 is removed at
// ingestion, every model year has exactly 365 days, and one model year maps
// to exactly 1.0 on the normalized time axis. This keeps annual periodicity
// and year shifts exact.
struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31, validated against the month

  friend bool operator==(const CivilDate&, const CivilDate&) = default;
};

inline constexpr int kDaysPerYear = 365;
inline constexpr int kEpochYear = 2000;

bool is_leap_day(const CivilDate& d);

// 0-based position within a 365-day year; rejects Feb 29.
int day_of_year(const CivilDate& d);

// Days since kEpochYear-01-01 on the model calendar; rejects Feb 29.
std::int64_t model_day(const CivilDate& d);
CivilDate date_from_model_day(std::int64_t offset);

// Normalized time axis used by the forecaster: model years since the epoch.
// Computed as whole_years + day_fraction so a 365-day shift changes the
// result by exactly 1.0.
double years_from_model_day(std::int64_t offset);

// Strict ISO "YYYY-MM-DD". Accepts Feb 29 (callers decide whether to drop).
CivilDate parse_iso_date(const std::string& text);
std::string format_iso_date(const CivilDate& d);

}  // namespace harvest
