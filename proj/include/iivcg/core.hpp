#pragma once

#include "iivcg/setting.hpp"

namespace iivcg {

// Sum over outcomes of row(o) * v(o). Exact.
Rat expected_value(const std::vector<Rat>& row, const Valuation& v);

// Total expected value of all bids under the given action, less its cost.
Rat welfare(const Setting& s, size_t action, const BidProfile& profile);

// Welfare with principal `ell`'s bid replaced by `replacement`.
Rat welfare_with(const Setting& s, size_t action, const BidProfile& profile, size_t ell,
                 const Valuation& replacement);

// Welfare with principal `ell`'s bid zeroed: the welfare that falls on the
// remaining principals.
Rat welfare_without(const Setting& s, size_t action, const BidProfile& profile, size_t ell);

// The welfare-maximizing action; welfare ties resolve to the costliest
// action, which is unique because costs are pairwise distinct.
size_t efficient_action(const Setting& s, const BidProfile& profile);

// efficient_action after replacing principal `ell`'s bid.
size_t efficient_action_with(const Setting& s, const BidProfile& profile, size_t ell,
                             const Valuation& replacement);

// The agent's chosen action under a payment rule: maximizes expected total
// payment less cost; ties go to the highest declared welfare and then to the
// highest cost. Throws InternalError if the rule is undefined at the profile.
size_t agent_best_response(const Setting& s, const BidProfile& profile, const PaymentRule& rule);

// Same, given an already evaluated payment matrix for this profile.
size_t agent_best_response(const Setting& s, const BidProfile& profile,
                           const PaymentMatrix& payments);

// Membership in the incentive set of `action`: does paying w(o) per outcome
// make `action` one of the agent's expected-utility maximizers? Pure set
// membership, no tie-breaking.
bool in_incentive_set(const Setting& s, const std::vector<Rat>& w, size_t action);

BidProfile with_replaced_bid(const BidProfile& profile, size_t ell, const Valuation& bid);

// Sum of the other principals' bids, entrywise.
Valuation others_total(const BidProfile& profile, size_t ell);

}  // namespace iivcg
