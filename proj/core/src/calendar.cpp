#include "harvest/calendar.hpp"

#include <cstdio>
#include <stdexcept>

namespace harvest {

namespace {

// Month lengths on the model calendar (no leap years).
constexpr int kMonthDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
constexpr int kMonthStart[12] = {0,   31,  59,  90,  120, 151,
                                 181, 212, 243, 273, 304, 334};

void validate_civil(const CivilDate& d, bool allow_leap_day) {
  if (d.month < 1 || d.month > 12) {
    throw std::domain_error("calendar: month out of range in " +
                            format_iso_date(d));
  }
  int max_day = kMonthDays[d.month - 1];
  if (allow_leap_day && d.month == 2) max_day = 29;
  if (d.day < 1 || d.day > max_day) {
    throw std::domain_error("calendar: day out of range in " +
                            format_iso_date(d));
  }
}

}  // namespace

bool is_leap_day(const CivilDate& d) { return d.month == 2 && d.day == 29; }

int day_of_year(const CivilDate& d) {
  if (is_leap_day(d)) {
    throw std::domain_error(
        "calendar: Feb 29 does not exist on the 365-day model calendar");
  }
  validate_civil(d, false);
  return kMonthStart[d.month - 1] + d.day - 1;
}

std::int64_t model_day(const CivilDate& d) {
  return static_cast<std::int64_t>(d.year - kEpochYear) * kDaysPerYear +
         day_of_year(d);
}

CivilDate date_from_model_day(std::int64_t offset) {
  std::int64_t y = offset / kDaysPerYear;
  std::int64_t doy = offset % kDaysPerYear;
  if (doy < 0) {
    doy += kDaysPerYear;
    y -= 1;
  }
  CivilDate d;
  d.year = static_cast<int>(kEpochYear + y);
  int m = 11;
  while (kMonthStart[m] > doy) --m;
  d.month = m + 1;
  d.day = static_cast<int>(doy - kMonthStart[m] + 1);
  return d;
}

double years_from_model_day(std::int64_t offset) {
  std::int64_t y = offset / kDaysPerYear;
  std::int64_t doy = offset % kDaysPerYear;
  if (doy < 0) {
    doy += kDaysPerYear;
    y -= 1;
  }
  return static_cast<double>(y) +
         static_cast<double>(doy) / static_cast<double>(kDaysPerYear);
}

CivilDate parse_iso_date(const std::string& text) {
  CivilDate d;
  char extra = 0;
  if (text.size() != 10 ||
      std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &d.year, &d.month, &d.day,
                  &extra) != 3) {
    throw std::invalid_argument("calendar: expected YYYY-MM-DD, got '" + text +
                                "'");
  }
  validate_civil(d, true);
  return d;
}

std::string format_iso_date(const CivilDate& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

}  // namespace harvest
