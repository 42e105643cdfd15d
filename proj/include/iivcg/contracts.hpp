#pragma once

#include "iivcg/core.hpp"

namespace iivcg {

// Directed weighted graph over principals: zero diagonal, every column sums
// to exactly 1, entries in [0,1].
struct CorrelationGraph {
  std::vector<std::vector<Rat>> d;

  size_t size() const { return d.size(); }
  void validate() const;
};

enum class GraphKind { Cycle, Complete };

CorrelationGraph uniform_graph(size_t n, GraphKind kind);

// v minus its smallest entry; nonnegative with at least one zero.
Valuation shifted_valuation(const Valuation& v);

// Row-ell weighted sum of the other principals' shifted bids. Independent of
// bid ell itself since d(ell,ell) = 0.
Valuation weighted_valuation(const CorrelationGraph& g, const BidProfile& profile, size_t ell);

// Each principal pays her externality plus her own bid for the realized
// outcome. Individually rational, but payments can go negative.
PaymentMatrix auction_inspired_payments(const Setting& s, const BidProfile& profile);

// Payments built from graph-weighted proxy valuations. Entrywise nonnegative
// by construction (asserted).
PaymentMatrix weighted_payments(const Setting& s, const CorrelationGraph& g,
                                const BidProfile& profile);

// The returned rules hold a reference to the setting; it must outlive them.
PaymentRule auction_inspired_rule(const Setting& s);
PaymentRule weighted_rule(const Setting& s, const CorrelationGraph& g);

struct CorrelationCounterexample {
  size_t principal;
  BidProfile profile;
  Rat proxy_welfare;   // optimum after substituting the weighted valuation
  Rat actual_welfare;  // optimum at the profile itself
};

// Searches the samples for a profile where substituting some principal's
// weighted valuation beats the actual optimal welfare. A nullopt result is
// evidence over the samples, not a proof.
std::optional<CorrelationCounterexample> falsify_g_correlation(
    const Setting& s, const CorrelationGraph& g, const std::vector<BidProfile>& samples);

struct SufficientConditions {
  bool same_expected_value = false;
  bool narrow_box = false;
  std::optional<CorrelationGraph> witness_graph;
};

// Two checkable conditions, either of which guarantees some graph makes the
// setting correlated: singleton domains with equal expected values per
// action, or a shared box [lo,hi]^m with hi - lo <= lo.
SufficientConditions correlation_sufficient_conditions(const Setting& s);

}  // namespace iivcg
