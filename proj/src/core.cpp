#include "iivcg/core.hpp"

namespace iivcg {

Rat expected_value(const std::vector<Rat>& row, const Valuation& v) {
  if (row.size() != v.size()) throw ValidationError("expected_value: dimension mismatch");
  return dot(row, v);
}

Rat welfare(const Setting& s, size_t action, const BidProfile& profile) {
  Rat total(0);
  for (const auto& bid : profile.bids) total += expected_value(s.row(action), bid);
  return total - s.cost(action);
}

Rat welfare_with(const Setting& s, size_t action, const BidProfile& profile, size_t ell,
                 const Valuation& replacement) {
  Rat total(0);
  for (size_t l = 0; l < profile.size(); ++l)
    total += expected_value(s.row(action), l == ell ? replacement : profile.bids[l]);
  return total - s.cost(action);
}

Rat welfare_without(const Setting& s, size_t action, const BidProfile& profile, size_t ell) {
  Rat total(0);
  for (size_t l = 0; l < profile.size(); ++l)
    if (l != ell) total += expected_value(s.row(action), profile.bids[l]);
  return total - s.cost(action);
}

namespace {

// argmax over actions of score(), costliest action among ties.
template <typename Score>
size_t argmax_cost_tiebreak(const Setting& s, Score score) {
  size_t best = 0;
  Rat best_score = score(0);
  for (size_t j = 1; j < s.num_actions(); ++j) {
    Rat v = score(j);
    if (v > best_score || (v == best_score && s.cost(j) > s.cost(best))) {
      best = j;
      best_score = v;
    }
  }
  return best;
}

}  // namespace

size_t efficient_action(const Setting& s, const BidProfile& profile) {
  return argmax_cost_tiebreak(s, [&](size_t j) { return welfare(s, j, profile); });
}

size_t efficient_action_with(const Setting& s, const BidProfile& profile, size_t ell,
                             const Valuation& replacement) {
  return argmax_cost_tiebreak(
      s, [&](size_t j) { return welfare_with(s, j, profile, ell, replacement); });
}

size_t agent_best_response(const Setting& s, const BidProfile& profile,
                           const PaymentMatrix& payments) {
  const size_t m = s.num_outcomes();
  std::vector<Rat> total_paid(m, Rat(0));
  for (const auto& per_principal : payments)
    for (size_t o = 0; o < m; ++o) total_paid[o] += per_principal[o];

  std::vector<Rat> utility(s.num_actions());
  for (size_t j = 0; j < s.num_actions(); ++j)
    utility[j] = dot(s.row(j), total_paid) - s.cost(j);

  size_t best = 0;
  for (size_t j = 1; j < s.num_actions(); ++j) {
    if (utility[j] > utility[best]) {
      best = j;
      continue;
    }
    if (utility[j] < utility[best]) continue;
    Rat wj = welfare(s, j, profile);
    Rat wb = welfare(s, best, profile);
    if (wj > wb || (wj == wb && s.cost(j) > s.cost(best))) best = j;
  }
  return best;
}

size_t agent_best_response(const Setting& s, const BidProfile& profile, const PaymentRule& rule) {
  auto payments = rule(profile);
  if (!payments) throw InternalError("payment rule undefined at profile");
  return agent_best_response(s, profile, *payments);
}

bool in_incentive_set(const Setting& s, const std::vector<Rat>& w, size_t action) {
  for (const auto& x : w)
    if (x < 0) throw ValidationError("in_incentive_set: negative payment vector");
  Rat target = dot(s.row(action), w) - s.cost(action);
  for (size_t j = 0; j < s.num_actions(); ++j)
    if (dot(s.row(j), w) - s.cost(j) > target) return false;
  return true;
}

BidProfile with_replaced_bid(const BidProfile& profile, size_t ell, const Valuation& bid) {
  BidProfile out = profile;
  out.bids[ell] = bid;
  return out;
}

Valuation others_total(const BidProfile& profile, size_t ell) {
  if (profile.size() == 0) throw ValidationError("empty profile");
  Valuation total(profile.bids[0].size(), Rat(0));
  for (size_t l = 0; l < profile.size(); ++l) {
    if (l == ell) continue;
    for (size_t o = 0; o < total.size(); ++o) total[o] += profile.bids[l][o];
  }
  return total;
}

}  // namespace iivcg
