#include "iivcg/audit.hpp"

#include <algorithm>

#include "iivcg/firstprice.hpp"

namespace iivcg {

std::string contract_name(ContractKind kind) {
  switch (kind) {
    case ContractKind::Algorithmic: return "alg1";
    case ContractKind::AuctionInspired: return "auction";
    case ContractKind::Weighted: return "weighted";
    case ContractKind::FirstPrice: return "fp";
  }
  return "?";
}

namespace {

// Evaluates fn over [0, count) and keeps per-index results so the serial and
// OpenMP paths report the same minimal-index counterexample.
template <typename Fn>
void sweep(size_t count, bool parallel, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(count); ++i) {
      try {
        fn(static_cast<size_t>(i));
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct ProfileOutcome {
  std::optional<Counterexample> ce;
  size_t checks = 0;
};

PropertyResult collect(std::vector<ProfileOutcome>& results) {
  PropertyResult out;
  for (auto& r : results) {
    out.checks += r.checks;
    if (!out.counterexample && r.ce) {
      out.counterexample = std::move(r.ce);
      out.pass = false;
    }
  }
  return out;
}

Counterexample undefined_at(const BidProfile& profile) {
  Counterexample ce;
  ce.profile = profile;
  ce.what = "contract undefined at profile (impossibility witness)";
  return ce;
}

// Expected utility of principal ell with true value `value`, when the agent
// best-responds to the rule at `bids`.
std::optional<Rat> expected_utility(const Setting& s, const PaymentRule& rule,
                                    const BidProfile& bids, size_t ell, const Valuation& value) {
  auto payments = rule(bids);
  if (!payments) return std::nullopt;
  size_t x = agent_best_response(s, bids, *payments);
  return expected_value(s.row(x), value) - expected_value(s.row(x), (*payments)[ell]);
}

}  // namespace

PropertyResult audit_truthful(const Setting& s, const PaymentRule& rule,
                              const std::vector<BidProfile>& profiles,
                              const std::vector<std::vector<Valuation>>& deviations,
                              bool parallel) {
  std::vector<ProfileOutcome> results(profiles.size());
  sweep(profiles.size(), parallel, [&](size_t i) {
    const BidProfile& truth = profiles[i];
    ProfileOutcome& r = results[i];
    for (size_t ell = 0; ell < s.num_principals() && !r.ce; ++ell) {
      auto truthful = expected_utility(s, rule, truth, ell, truth.bids[ell]);
      if (!truthful) {
        r.ce = undefined_at(truth);
        break;
      }
      for (const auto& candidate : deviations[ell]) {
        if (candidate == truth.bids[ell]) continue;
        BidProfile deviated = with_replaced_bid(truth, ell, candidate);
        auto shaded = expected_utility(s, rule, deviated, ell, truth.bids[ell]);
        ++r.checks;
        if (!shaded) {
          r.ce = undefined_at(deviated);
          break;
        }
        if (*shaded > *truthful) {
          Counterexample ce;
          ce.profile = truth;
          ce.principal = ell;
          ce.deviation = candidate;
          ce.lhs = *shaded;
          ce.rhs = *truthful;
          ce.what = "profitable misreport";
          r.ce = std::move(ce);
          break;
        }
      }
    }
  });
  return collect(results);
}

PropertyResult audit_ir(const Setting& s, const PaymentRule& rule,
                        const std::vector<BidProfile>& profiles, bool parallel) {
  std::vector<ProfileOutcome> results(profiles.size());
  sweep(profiles.size(), parallel, [&](size_t i) {
    const BidProfile& profile = profiles[i];
    ProfileOutcome& r = results[i];
    for (size_t ell = 0; ell < s.num_principals(); ++ell) {
      auto utility = expected_utility(s, rule, profile, ell, profile.bids[ell]);
      ++r.checks;
      if (!utility) {
        r.ce = undefined_at(profile);
        break;
      }
      if (*utility < 0) {
        Counterexample ce;
        ce.profile = profile;
        ce.principal = ell;
        ce.lhs = *utility;
        ce.rhs = Rat(0);
        ce.what = "negative truthful expected utility";
        r.ce = std::move(ce);
        break;
      }
    }
  });
  return collect(results);
}

std::pair<PropertyResult, PropertyResult> audit_ll(const Setting& s, const PaymentRule& rule,
                                                   const std::vector<BidProfile>& profiles,
                                                   bool parallel) {
  std::vector<ProfileOutcome> entry(profiles.size()), aggregate(profiles.size());
  sweep(profiles.size(), parallel, [&](size_t i) {
    const BidProfile& profile = profiles[i];
    auto payments = rule(profile);
    if (!payments) {
      entry[i].ce = undefined_at(profile);
      aggregate[i].ce = undefined_at(profile);
      return;
    }
    for (size_t ell = 0; ell < s.num_principals() && !entry[i].ce; ++ell) {
      for (size_t o = 0; o < s.num_outcomes(); ++o) {
        ++entry[i].checks;
        if ((*payments)[ell][o] < 0) {
          Counterexample ce;
          ce.profile = profile;
          ce.principal = ell;
          ce.outcome = o;
          ce.lhs = (*payments)[ell][o];
          ce.rhs = Rat(0);
          ce.what = "negative payment entry";
          entry[i].ce = std::move(ce);
          break;
        }
      }
    }
    for (size_t o = 0; o < s.num_outcomes(); ++o) {
      Rat total(0);
      for (size_t ell = 0; ell < s.num_principals(); ++ell) total += (*payments)[ell][o];
      ++aggregate[i].checks;
      if (total < 0) {
        Counterexample ce;
        ce.profile = profile;
        ce.outcome = o;
        ce.lhs = total;
        ce.rhs = Rat(0);
        ce.what = "negative aggregate payment";
        aggregate[i].ce = std::move(ce);
        break;
      }
    }
  });
  return {collect(entry), collect(aggregate)};
}

PropertyResult audit_efficiency(const Setting& s, const PaymentRule& rule,
                                const std::vector<BidProfile>& profiles, bool parallel) {
  std::vector<ProfileOutcome> results(profiles.size());
  sweep(profiles.size(), parallel, [&](size_t i) {
    const BidProfile& profile = profiles[i];
    auto payments = rule(profile);
    ++results[i].checks;
    if (!payments) {
      results[i].ce = undefined_at(profile);
      return;
    }
    size_t chosen = agent_best_response(s, profile, *payments);
    size_t best = efficient_action(s, profile);
    if (chosen != best) {
      Counterexample ce;
      ce.profile = profile;
      ce.lhs = welfare(s, chosen, profile);
      ce.rhs = welfare(s, best, profile);
      ce.what = "agent picks " + s.actions[chosen].name + " but " + s.actions[best].name +
                " maximizes declared welfare";
      results[i].ce = std::move(ce);
    }
  });
  return collect(results);
}

std::optional<Counterexample> identity_violation(const Setting& s, const ContractParams& params,
                                                 const PaymentMatrix& payments,
                                                 const BidProfile& profile) {
  for (size_t ell = 0; ell < s.num_principals(); ++ell) {
    Rat expected = dot(s.row(params.star), payments[ell]);
    Rat target = params.h[ell] - welfare_without(s, params.star, profile, ell);
    if (expected != target) {
      Counterexample ce;
      ce.profile = profile;
      ce.principal = ell;
      ce.lhs = expected;
      ce.rhs = target;
      ce.what = "expected payment differs from its characterization";
      return ce;
    }
  }
  return std::nullopt;
}

PropertyResult audit_payment_identity(const Setting& s, const Alg1Rule& rule,
                                      const std::vector<BidProfile>& profiles, bool parallel) {
  std::vector<ProfileOutcome> results(profiles.size());
  sweep(profiles.size(), parallel, [&](size_t i) {
    auto contract = rule.evaluate(profiles[i]);
    results[i].checks += s.num_principals();
    if (!contract) {
      results[i].ce = undefined_at(profiles[i]);
      return;
    }
    results[i].ce = identity_violation(s, contract->params, contract->payments, profiles[i]);
  });
  return collect(results);
}

AuditReport run_audit(const Setting& s, ContractKind kind, const AuditOptions& opts) {
  AuditReport report;
  report.contract = contract_name(kind);

  std::vector<BidProfile> profiles = profile_grid(s, opts.grid, &report.grid);
  std::vector<std::vector<Valuation>> deviations(s.num_principals());
  for (size_t ell = 0; ell < s.num_principals(); ++ell)
    deviations[ell] = domain_candidates(s, ell, opts.grid);

  std::optional<Alg1Rule> alg1;
  PaymentRule rule;
  switch (kind) {
    case ContractKind::Algorithmic:
      alg1.emplace(s);
      rule = alg1->rule();
      break;
    case ContractKind::AuctionInspired:
      rule = auction_inspired_rule(s);
      break;
    case ContractKind::Weighted: {
      CorrelationGraph g = opts.graph ? *opts.graph
                                      : uniform_graph(s.num_principals(), GraphKind::Complete);
      g.validate();
      rule = weighted_rule(s, g);
      break;
    }
    case ContractKind::FirstPrice:
      rule = first_price_rule(s);
      break;
  }

  report.truthful = audit_truthful(s, rule, profiles, deviations, opts.parallel);
  report.ir = audit_ir(s, rule, profiles, opts.parallel);
  std::tie(report.ll, report.aggregate_ll) = audit_ll(s, rule, profiles, opts.parallel);
  report.efficiency = audit_efficiency(s, rule, profiles, opts.parallel);
  if (alg1) report.identity = audit_payment_identity(s, *alg1, profiles, opts.parallel);
  return report;
}

}  // namespace iivcg
