#pragma once

#include <compare>
#include <cstdint>
#include <limits>

namespace harvest {

// 0-based offset into the optimization horizon. File formats use 1-based day
// numbers with -1 as the missing marker; conversion happens at the I/O
// boundary only, so the in-memory sentinel can never collide with real data.
class DayIndex {
 public:
  constexpr DayIndex() = default;
  constexpr explicit DayIndex(std::int32_t v) : value_(v) {}

  static constexpr DayIndex invalid() { return DayIndex(); }

  constexpr bool is_valid() const { return value_ != kInvalid; }
  constexpr std::int32_t value() const { return value_; }

  friend constexpr bool operator==(DayIndex, DayIndex) = default;
  friend constexpr auto operator<=>(DayIndex, DayIndex) = default;

 private:
  static constexpr std::int32_t kInvalid =
      std::numeric_limits<std::int32_t>::min();
  std::int32_t value_ = kInvalid;
};

}  // namespace harvest
