#pragma once

#include <span>
#include <string>

#include "harvest/evolution.hpp"

namespace harvest {

struct BaselineResult {
  std::string method;
  Schedule best;
  LossVector best_loss;  // hierarchical loss of `best`, for comparability
  std::int64_t evaluations = 0;
};

// Same (1+1) scheme as the hierarchical optimizer but accepting on the
// scalar l_plus + lambda * l_minus (ties accepted); the returned loss is
// still the loss vector of the final parent so methods compare on one scale.
BaselineResult run_weighted_sum_es(const EsConfig& config, double lambda,
                                   const HarvestMatrix& matrix,
                                   std::span<const SpeciesRecord> species,
                                   const WeekMapping& weeks);

// Uniform independent draws; keeps the lexicographically best. `budget` is
// the total number of loss evaluations.
BaselineResult run_random_search(const EsConfig& config, std::int64_t budget,
                                 const HarvestMatrix& matrix,
                                 std::span<const SpeciesRecord> species,
                                 const WeekMapping& weeks);

}  // namespace harvest
