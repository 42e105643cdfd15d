#pragma once

#include <json.hpp>

#include "iivcg/contracts.hpp"

namespace iivcg {

using Json = nlohmann::ordered_json;

// Rationals travel as strings ("p/q", integer, or decimal literal); integers
// may also appear as JSON integers. JSON floats are rejected so nothing is
// ever rounded on the way in.
Rat rat_from_json(const Json& j);
Json rat_to_json(const Rat& value);

Setting setting_from_json(const Json& j);
Json setting_to_json(const Setting& s);
Setting load_setting(const std::string& path);
void save_setting(const Setting& s, const std::string& path);

BidProfile bids_from_json(const Json& j, const Setting& s);
Json bids_to_json(const BidProfile& profile);
BidProfile load_bids(const std::string& path, const Setting& s);

CorrelationGraph graph_from_json(const Json& j, size_t n);
Json graph_to_json(const CorrelationGraph& g);
CorrelationGraph load_graph(const std::string& path, size_t n);

// Parameterized fixtures.

// Deterministic-outcome race between n principals; the stated bid profile is
// an equilibrium with welfare 1 while truthful welfare is n-2.
Setting make_poa_setting(size_t n, const Rat& gamma, const Rat& eps);
BidProfile poa_truthful_values(size_t n, const Rat& gamma, const Rat& eps);
BidProfile poa_equilibrium_bids(size_t n, const Rat& gamma, const Rat& eps);

// Single-principal ladder of q actions over two outcomes where first-price
// play stalls on the cheapest action.
Setting make_pos_setting(long q, const Rat& gamma, const Rat& eps);
Valuation pos_truthful_value(long q, const Rat& gamma);

// Two actions, two outcomes, one unbounded principal: no contract in the
// family is simultaneously limited-liability and individually rational.
Setting make_tradeoff_setting(const Rat& eps);

// Three principals on a shared [10,15]^2 box with the partially specified
// correlation graph completed into valid column sums.
Setting make_weighted_setting();
BidProfile weighted_truthful_values();
CorrelationGraph weighted_example_graph();

}  // namespace iivcg
