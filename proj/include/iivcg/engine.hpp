#pragma once

#include <map>
#include <mutex>
#include <variant>

#include "iivcg/core.hpp"
#include "iivcg/lp.hpp"

namespace iivcg {

// h: the smallest achievable optimal declared welfare over principal ell's
// own domain, holding the others' bids fixed. bound: the cap on ell's
// expected payment compatible with individual rationality; never negative.
struct PaymentBound {
  Rat h;
  Rat bound;
};

// Minimum expected joint payment that still makes `action` an expected-utility
// maximizer for the agent, with a lexicographically smallest minimizer.
struct IncentiveCost {
  Rat k;
  std::vector<Rat> w;
};

struct ContractParams {
  std::vector<Rat> h;         // one per principal
  std::vector<Rat> m_bounds;  // one per principal
  Rat k;
  std::vector<Rat> w_base;    // one per outcome
  std::vector<Rat> shares;    // one per principal, sums to 1
  size_t star;                // the declared-welfare-maximizing action
};

struct ImpossibleWitness {
  size_t action;
  BidProfile profile;
  Rat k;
  std::vector<Rat> m_bounds;
  Rat sum_m;
};

struct Alg1Contract {
  ContractParams params;
  PaymentMatrix payments;  // all outcomes, per principal
};

using Alg1Outcome = std::variant<Alg1Contract, ImpossibleWitness>;

struct Verdict {
  bool possible = false;
  std::optional<ImpossibleWitness> witness;
};

struct MinTotalBound {
  Rat value;
  BidProfile witness;
};

struct ExistenceOptions {
  // Shift applied to the efficiency constraints in strict mode, standing in
  // for the strict inequalities of the exact action region.
  Rat strict_eps = rat(1, 1 << 20);
};

// h^ell and the expected-payment cap for one principal at this profile.
PaymentBound payment_upper_bound(const Setting& s, size_t ell, const BidProfile& profile);

// Same with the welfare-maximizing action already known.
PaymentBound payment_upper_bound(const Setting& s, size_t ell, const BidProfile& profile,
                                 size_t star);

// nullopt when no nonnegative payment vector incentivizes `action`.
std::optional<IncentiveCost> min_incentive_cost(const Setting& s, size_t action);

// Largest total share split subject to share_l * k <= bound_l; the greedy
// vertex is returned (first principals get as much as fits). Total is 1
// exactly when k <= sum of bounds or k == 0.
std::vector<Rat> split_shares(const Rat& k, const std::vector<Rat>& bounds);

// Payment formula shared by the algorithmic contract and the closed forms:
// h - Wel^star(profile with ell's bid replaced by w) + w(outcome).
Rat assemble_payment(const Setting& s, const Rat& h, size_t star, const BidProfile& profile,
                     size_t ell, const std::vector<Rat>& w, size_t outcome);

// The algorithmic contract at one bid profile: either the full payment matrix
// with its parameters, or an exactly re-verified impossibility witness.
Alg1Outcome algorithmic_payments(const Setting& s, const BidProfile& profile);

// Smallest sum of payment caps over profiles whose efficient action is
// `action` (closure form; optionally shifted strictly inside). nullopt when
// the region is empty.
std::optional<MinTotalBound> min_total_upper_bound(const Setting& s, size_t action,
                                                   const std::optional<Rat>& strict_eps = {});

// Decides whether some contract in the family is simultaneously limited
// liability and individually rational for this setting.
Verdict contract_exists(const Setting& s, const ExistenceOptions& opts = {});

// Payment rule wrapper around algorithmic_payments with h and incentive-cost
// memoization (both are pure functions of their keys). Thread safe.
class Alg1Rule {
 public:
  explicit Alg1Rule(const Setting& s);

  std::optional<Alg1Contract> evaluate(const BidProfile& profile) const;
  PaymentRule rule() const;

 private:
  PaymentBound bound_for(size_t ell, const BidProfile& profile, size_t star) const;
  const IncentiveCost* cost_for(size_t action) const;

  const Setting& setting_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<size_t, std::vector<Rat>>, Rat> h_memo_;
  mutable std::map<size_t, std::optional<IncentiveCost>> k_memo_;
};

}  // namespace iivcg
