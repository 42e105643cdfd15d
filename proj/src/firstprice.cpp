#include "iivcg/firstprice.hpp"

#include <algorithm>

namespace iivcg {

PaymentRule first_price_rule(const Setting& s) {
  (void)s;
  return [](const BidProfile& profile) -> std::optional<PaymentMatrix> {
    return PaymentMatrix(profile.bids.begin(), profile.bids.end());
  };
}

DeviationGrid deviation_grid(const Setting& s, const BidProfile& current, const GridSpec& spec) {
  DeviationGrid grid;
  grid.per_principal.resize(s.num_principals());
  for (size_t ell = 0; ell < s.num_principals(); ++ell) {
    auto cands = domain_candidates(s, ell, spec);
    if (std::find(cands.begin(), cands.end(), current.bids[ell]) == cands.end())
      cands.insert(cands.begin(), current.bids[ell]);
    grid.per_principal[ell] = std::move(cands);
  }
  return grid;
}

namespace {

Rat fp_utility(const Setting& s, const Valuation& value, const BidProfile& bids, size_t ell) {
  PaymentMatrix t(bids.bids.begin(), bids.bids.end());
  size_t x = agent_best_response(s, bids, t);
  return expected_value(s.row(x), value) - expected_value(s.row(x), bids.bids[ell]);
}

}  // namespace

std::optional<FpDeviation> find_profitable_deviation(const Setting& s, const BidProfile& values,
                                                     const BidProfile& bids,
                                                     const DeviationGrid& grid) {
  for (size_t ell = 0; ell < s.num_principals(); ++ell) {
    if (!s.domains[ell].contains(bids.bids[ell]))
      throw ValidationError("bid outside its domain");
    Rat current = fp_utility(s, values.bids[ell], bids, ell);
    for (const auto& candidate : grid.per_principal[ell]) {
      if (candidate == bids.bids[ell]) continue;
      BidProfile deviated = with_replaced_bid(bids, ell, candidate);
      Rat utility = fp_utility(s, values.bids[ell], deviated, ell);
      if (utility > current) return FpDeviation{ell, candidate, utility - current};
    }
  }
  return std::nullopt;
}

PoaReport price_of_anarchy(const Setting& s, const BidProfile& values, const BidProfile& eq_bids,
                           const DeviationGrid& grid) {
  if (auto dev = find_profitable_deviation(s, values, eq_bids, grid))
    throw ValidationError("bid profile fails the equilibrium check: principal " +
                          std::to_string(dev->principal + 1) + " gains " +
                          to_fraction(dev->gain));
  PoaReport report;
  PaymentMatrix t(eq_bids.bids.begin(), eq_bids.bids.end());
  report.eq_action = agent_best_response(s, eq_bids, t);
  report.opt_action = efficient_action(s, values);
  report.eq_welfare = welfare(s, report.eq_action, values);
  report.opt_welfare = welfare(s, report.opt_action, values);
  if (report.opt_welfare == 0) throw ValidationError("optimal welfare is zero; ratio undefined");
  report.ratio = report.eq_welfare / report.opt_welfare;
  return report;
}

UtilitySlice max_fp_utility(const Setting& s, const Valuation& value,
                            const std::vector<Valuation>& candidates, size_t min_action_index) {
  if (s.num_principals() != 1)
    throw ValidationError("utility scan expects a single-principal setting");
  UtilitySlice out;
  for (const auto& bid : candidates) {
    BidProfile profile{{bid}};
    PaymentMatrix t{bid};
    size_t x = agent_best_response(s, profile, t);
    if (x < min_action_index) continue;
    Rat u = expected_value(s.row(x), value) - expected_value(s.row(x), bid);
    ++out.slice_size;
    if (!out.max_utility || u > *out.max_utility) {
      out.max_utility = u;
      out.argmax = bid;
    }
  }
  return out;
}

}  // namespace iivcg
