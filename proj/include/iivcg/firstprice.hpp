#pragma once

#include "iivcg/core.hpp"
#include "iivcg/grids.hpp"

namespace iivcg {

// Each principal pays her own bid for the realized outcome.
PaymentRule first_price_rule(const Setting& s);

// Finite deviation candidates per principal; always contains the current bid.
struct DeviationGrid {
  std::vector<std::vector<Valuation>> per_principal;
};

DeviationGrid deviation_grid(const Setting& s, const BidProfile& current, const GridSpec& spec);

struct FpDeviation {
  size_t principal;
  Valuation bid;
  Rat gain;
};

// First strictly profitable grid deviation under the first-price rule, or
// nullopt. A nullopt is an equilibrium certificate relative to the grid only;
// continuous deviations are not enumerated.
std::optional<FpDeviation> find_profitable_deviation(const Setting& s, const BidProfile& values,
                                                     const BidProfile& bids,
                                                     const DeviationGrid& grid);

struct PoaReport {
  Rat eq_welfare;
  Rat opt_welfare;
  Rat ratio;
  size_t eq_action;
  size_t opt_action;
};

// Equilibrium welfare at true values over optimal welfare; refuses profiles
// that fail the grid equilibrium check.
PoaReport price_of_anarchy(const Setting& s, const BidProfile& values, const BidProfile& eq_bids,
                           const DeviationGrid& grid);

struct UtilitySlice {
  std::optional<Rat> max_utility;
  std::optional<Valuation> argmax;
  size_t slice_size = 0;
};

// Single-principal scan: over candidate bids whose induced action index is at
// least min_action_index, the maximum expected principal utility.
UtilitySlice max_fp_utility(const Setting& s, const Valuation& value,
                            const std::vector<Valuation>& candidates, size_t min_action_index);

}  // namespace iivcg
