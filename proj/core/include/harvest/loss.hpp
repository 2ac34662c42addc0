#pragma once

#include "harvest/types.hpp"

namespace harvest {

// Penalty for one week's harvest h against capacity c_target: a concave
// bump h/c * (1 - h/c) below capacity (zero at 0 and at capacity, maximal
// in between) and exponential growth exp(h/c) - e above it.
double interval_loss(double h, double c_target);

// Over-capacity and under-capacity penalties accumulated separately so they
// can be compared lexicographically: overshoot is never traded against
// undershoot.
struct LossVector {
  double l_plus = 0.0;   // sum over weeks with h >= c_target
  double l_minus = 0.0;  // sum over weeks with h < c_target

  friend bool operator==(const LossVector&, const LossVector&) = default;
};

LossVector loss_vector(const WeeklyYield& weekly, double c_target);

enum class LossOrder {
  kFirstBetter,
  kSecondBetter,
  kTie,
};

// Strict lexicographic order on (l_plus, l_minus) with exact float
// comparison; ties require bit-equal components.
LossOrder compare_loss(const LossVector& a, const LossVector& b);

}  // namespace harvest
