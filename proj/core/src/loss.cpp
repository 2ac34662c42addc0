#include "harvest/loss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harvest {

double interval_loss(double h, double c_target) {
  if (!(c_target > 0.0)) {
    throw std::domain_error("interval_loss: capacity must be positive");
  }
  if (h < 0.0) {
    throw std::domain_error("interval_loss: harvest must be non-negative");
  }
  // Both branches are written so the cancellation near h == c_target happens
  // in (c - h) resp. (h - c), which is exact there; the naive forms
  // x*(1-x) and exp(x)-e lose up to half their digits at the boundary.
  if (h < c_target) {
    return (h / c_target) * ((c_target - h) / c_target);
  }
  return std::numbers::e * std::expm1((h - c_target) / c_target);
}

LossVector loss_vector(const WeeklyYield& weekly, double c_target) {
  LossVector v;
  for (double h : weekly.per_week) {
    if (h >= c_target) {
      v.l_plus += interval_loss(h, c_target);
    } else {
      v.l_minus += interval_loss(h, c_target);
    }
  }
  return v;
}

LossOrder compare_loss(const LossVector& a, const LossVector& b) {
  if (a.l_plus < b.l_plus) return LossOrder::kFirstBetter;
  if (b.l_plus < a.l_plus) return LossOrder::kSecondBetter;
  if (a.l_minus < b.l_minus) return LossOrder::kFirstBetter;
  if (b.l_minus < a.l_minus) return LossOrder::kSecondBetter;
  return LossOrder::kTie;
}

}  // namespace harvest
