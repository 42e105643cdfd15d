#include "iivcg/engine.hpp"

#include <algorithm>
#include <numeric>

namespace iivcg {

namespace {

// min over the principal's own domain of h subject to
//   F_j . (others + v~) - cost_j <= h   for every action j,
// i.e. the smallest optimal declared welfare the principal can force.
Rat solve_min_h(const Setting& s, size_t ell, const Valuation& others) {
  const size_t m = s.num_outcomes();
  LinearProgram lp(m + 1);  // v~ block then h
  lp.objective[m] = Rat(1);
  for (size_t j = 0; j < s.num_actions(); ++j) {
    std::vector<Rat> a(m + 1, Rat(0));
    for (size_t o = 0; o < m; ++o) a[o] = s.row(j)[o];
    a[m] = Rat(-1);
    lp.add(std::move(a), Rel::Le, s.cost(j) - dot(s.row(j), others));
  }
  for (auto& c : domain_constraints(s.domains[ell], 0, m + 1)) lp.constraints.push_back(std::move(c));
  LPResult r = solve(lp);
  if (!r.optimal()) throw InternalError("payment bound program did not solve");
  return r.value;
}

Rat bound_from_h(const Setting& s, const Rat& h, const Valuation& others, size_t star) {
  Rat bound = h - (dot(s.row(star), others) - s.cost(star));
  if (bound < 0) throw InternalError("negative payment cap");
  return bound;
}

struct Alg1Inputs {
  size_t star;
  std::vector<Rat> h;
  std::vector<Rat> m_bounds;
  IncentiveCost cost;
};

Alg1Outcome finish_alg1(const Setting& s, const BidProfile& profile, Alg1Inputs in) {
  const size_t n = s.num_principals();
  const size_t m = s.num_outcomes();

  Rat sum_m = std::accumulate(in.m_bounds.begin(), in.m_bounds.end(), Rat(0));
  if (in.cost.k > sum_m)
    return ImpossibleWitness{in.star, profile, in.cost.k, in.m_bounds, sum_m};

  ContractParams params;
  params.h = in.h;
  params.m_bounds = in.m_bounds;
  params.k = in.cost.k;
  params.w_base = in.cost.w;
  params.star = in.star;
  params.shares = split_shares(in.cost.k, in.m_bounds);

  Rat total_share = std::accumulate(params.shares.begin(), params.shares.end(), Rat(0));
  if (total_share != 1) throw InternalError("share split fell short despite feasibility");

  PaymentMatrix payments(n, std::vector<Rat>(m));
  for (size_t ell = 0; ell < n; ++ell) {
    std::vector<Rat> w_ell(m);
    for (size_t o = 0; o < m; ++o) w_ell[o] = params.shares[ell] * params.w_base[o];
    for (size_t o = 0; o < m; ++o) {
      payments[ell][o] =
          assemble_payment(s, params.h[ell], in.star, profile, ell, w_ell, o);
      if (payments[ell][o] < 0) throw InternalError("limited liability violated by construction");
    }
    Rat expected = dot(s.row(in.star), payments[ell]);
    if (expected != params.h[ell] - welfare_without(s, in.star, profile, ell))
      throw InternalError("expected payment identity violated by construction");
  }
  return Alg1Contract{std::move(params), std::move(payments)};
}

}  // namespace

PaymentBound payment_upper_bound(const Setting& s, size_t ell, const BidProfile& profile) {
  return payment_upper_bound(s, ell, profile, efficient_action(s, profile));
}

PaymentBound payment_upper_bound(const Setting& s, size_t ell, const BidProfile& profile,
                                 size_t star) {
  Valuation others = others_total(profile, ell);
  Rat h = solve_min_h(s, ell, others);
  return {h, bound_from_h(s, h, others, star)};
}

std::optional<IncentiveCost> min_incentive_cost(const Setting& s, size_t action) {
  const size_t m = s.num_outcomes();
  LinearProgram lp(m);
  for (size_t o = 0; o < m; ++o) {
    lp.objective[o] = s.row(action)[o];
    lp.lower[o] = Rat(0);
  }
  for (size_t j = 0; j < s.num_actions(); ++j) {
    if (j == action) continue;
    std::vector<Rat> a(m);
    for (size_t o = 0; o < m; ++o) a[o] = s.row(j)[o] - s.row(action)[o];
    lp.add(std::move(a), Rel::Le, s.cost(j) - s.cost(action));
  }
  LPResult r = solve(lp);
  if (r.status == LPResult::Status::Infeasible) return std::nullopt;
  if (!r.optimal()) throw InternalError("incentive cost program unbounded");

  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  IncentiveCost out;
  out.k = r.value;
  out.w = lex_min_optimal_point(lp, r.value, order);
  return out;
}

std::vector<Rat> split_shares(const Rat& k, const std::vector<Rat>& bounds) {
  if (k < 0) throw ValidationError("split_shares: negative incentive cost");
  std::vector<Rat> x(bounds.size(), Rat(0));
  if (bounds.empty()) return x;
  if (k == 0) {
    x[0] = Rat(1);
    return x;
  }
  Rat remaining(1);
  for (size_t ell = 0; ell < bounds.size(); ++ell) {
    if (bounds[ell] < 0) throw ValidationError("split_shares: negative bound");
    Rat cap = bounds[ell] / k;
    x[ell] = std::min(remaining, cap);
    remaining -= x[ell];
    if (remaining == 0) break;
  }
  return x;
}

Rat assemble_payment(const Setting& s, const Rat& h, size_t star, const BidProfile& profile,
                     size_t ell, const std::vector<Rat>& w, size_t outcome) {
  for (const auto& entry : w)
    if (entry < 0) throw ValidationError("assemble_payment: negative payment vector");
  return h - welfare_with(s, star, profile, ell, w) + w[outcome];
}

Alg1Outcome algorithmic_payments(const Setting& s, const BidProfile& profile) {
  Alg1Inputs in;
  in.star = efficient_action(s, profile);
  for (size_t ell = 0; ell < s.num_principals(); ++ell) {
    PaymentBound pb = payment_upper_bound(s, ell, profile, in.star);
    in.h.push_back(pb.h);
    in.m_bounds.push_back(pb.bound);
  }
  auto cost = min_incentive_cost(s, in.star);
  if (!cost) throw InternalError("incentive set empty for the efficient action");
  in.cost = *cost;
  return finish_alg1(s, profile, std::move(in));
}

std::optional<MinTotalBound> min_total_upper_bound(const Setting& s, size_t action,
                                                   const std::optional<Rat>& strict_eps) {
  const size_t n = s.num_principals();
  const size_t m = s.num_outcomes();
  const size_t bid_off = 0;
  const size_t tilde_off = n * m;
  const size_t h_off = 2 * n * m;
  const size_t total = 2 * n * m + n;

  LinearProgram lp(total);
  for (size_t ell = 0; ell < n; ++ell) {
    lp.objective[h_off + ell] = Rat(1);
    for (auto& c : domain_constraints(s.domains[ell], bid_off + ell * m, total))
      lp.constraints.push_back(std::move(c));
    for (auto& c : domain_constraints(s.domains[ell], tilde_off + ell * m, total))
      lp.constraints.push_back(std::move(c));
  }
  if (n > 1) {
    for (size_t ell = 0; ell < n; ++ell)
      for (size_t o = 0; o < m; ++o)
        lp.objective[bid_off + ell * m + o] = -Rat(static_cast<long>(n - 1)) * s.row(action)[o];
  }

  for (size_t ell = 0; ell < n; ++ell) {
    for (size_t j = 0; j < s.num_actions(); ++j) {
      std::vector<Rat> a(total, Rat(0));
      for (size_t l2 = 0; l2 < n; ++l2) {
        if (l2 == ell) continue;
        for (size_t o = 0; o < m; ++o) a[bid_off + l2 * m + o] = s.row(j)[o];
      }
      for (size_t o = 0; o < m; ++o) a[tilde_off + ell * m + o] = s.row(j)[o];
      a[h_off + ell] = Rat(-1);
      lp.add(std::move(a), Rel::Le, s.cost(j));
    }
  }

  for (size_t j = 0; j < s.num_actions(); ++j) {
    if (j == action) continue;
    std::vector<Rat> a(total, Rat(0));
    for (size_t ell = 0; ell < n; ++ell)
      for (size_t o = 0; o < m; ++o)
        a[bid_off + ell * m + o] = s.row(j)[o] - s.row(action)[o];
    Rat rhs = s.cost(j) - s.cost(action);
    if (strict_eps && s.cost(j) > s.cost(action)) rhs -= *strict_eps;
    lp.add(std::move(a), Rel::Le, std::move(rhs));
  }

  LPResult r = solve(lp);
  if (r.status == LPResult::Status::Infeasible) return std::nullopt;
  if (!r.optimal()) throw InternalError("payment cap minimization unbounded");

  MinTotalBound out;
  out.value = r.value + Rat(static_cast<long>(n)) * s.cost(action);
  out.witness.bids.resize(n);
  for (size_t ell = 0; ell < n; ++ell)
    out.witness.bids[ell] =
        Valuation(r.point.begin() + static_cast<long>(bid_off + ell * m),
                  r.point.begin() + static_cast<long>(bid_off + (ell + 1) * m));
  return out;
}

namespace {

// The per-profile predicate, targeted at the profile's actual efficient
// action. Returns an exact witness when the profile proves impossibility.
std::optional<ImpossibleWitness> check_profile(const Setting& s, const BidProfile& profile) {
  size_t star = efficient_action(s, profile);
  std::vector<Rat> bounds;
  Rat sum(0);
  for (size_t ell = 0; ell < s.num_principals(); ++ell) {
    PaymentBound pb = payment_upper_bound(s, ell, profile, star);
    bounds.push_back(pb.bound);
    sum += pb.bound;
  }
  auto cost = min_incentive_cost(s, star);
  if (!cost) throw InternalError("incentive set empty for the efficient action");
  if (cost->k > sum) return ImpossibleWitness{star, profile, cost->k, std::move(bounds), sum};
  return std::nullopt;
}

}  // namespace

Verdict contract_exists(const Setting& s, const ExistenceOptions& opts) {
  for (size_t a = 0; a < s.num_actions(); ++a) {
    auto cost = min_incentive_cost(s, a);
    if (!cost) continue;  // no payment vector incentivizes a; its region is empty

    auto weak = min_total_upper_bound(s, a);
    if (!weak) continue;
    if (cost->k <= weak->value) continue;

    // The closure minimizer may land on a tie face where the agent picks a
    // costlier action, so the witness is re-verified with the real
    // tie-breaking before impossibility is reported.
    if (auto witness = check_profile(s, weak->witness)) return {false, std::move(witness)};

    auto strict = min_total_upper_bound(s, a, opts.strict_eps);
    if (!strict) continue;
    if (cost->k <= strict->value) continue;
    if (auto witness = check_profile(s, strict->witness)) return {false, std::move(witness)};
  }
  return {true, std::nullopt};
}

Alg1Rule::Alg1Rule(const Setting& s) : setting_(s) {}

PaymentBound Alg1Rule::bound_for(size_t ell, const BidProfile& profile, size_t star) const {
  constexpr size_t kMemoCap = 1 << 16;
  Valuation others = others_total(profile, ell);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = h_memo_.find({ell, others});
    if (it != h_memo_.end())
      return {it->second, bound_from_h(setting_, it->second, others, star)};
  }
  Rat h = solve_min_h(setting_, ell, others);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (h_memo_.size() < kMemoCap) h_memo_.emplace(std::make_pair(ell, others), h);
  }
  return {h, bound_from_h(setting_, h, others, star)};
}

const IncentiveCost* Alg1Rule::cost_for(size_t action) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = k_memo_.find(action);
    if (it != k_memo_.end()) return it->second ? &*it->second : nullptr;
  }
  auto cost = min_incentive_cost(setting_, action);
  std::lock_guard<std::mutex> lock(mu_);
  auto it = k_memo_.emplace(action, std::move(cost)).first;
  return it->second ? &*it->second : nullptr;
}

std::optional<Alg1Contract> Alg1Rule::evaluate(const BidProfile& profile) const {
  Alg1Inputs in;
  in.star = efficient_action(setting_, profile);
  for (size_t ell = 0; ell < setting_.num_principals(); ++ell) {
    PaymentBound pb = bound_for(ell, profile, in.star);
    in.h.push_back(pb.h);
    in.m_bounds.push_back(pb.bound);
  }
  const IncentiveCost* cost = cost_for(in.star);
  if (!cost) throw InternalError("incentive set empty for the efficient action");
  in.cost = *cost;
  Alg1Outcome out = finish_alg1(setting_, profile, std::move(in));
  if (auto* contract = std::get_if<Alg1Contract>(&out)) return std::move(*contract);
  return std::nullopt;
}

PaymentRule Alg1Rule::rule() const {
  return [this](const BidProfile& profile) -> std::optional<PaymentMatrix> {
    auto contract = evaluate(profile);
    if (!contract) return std::nullopt;
    return std::move(contract->payments);
  };
}

}  // namespace iivcg
