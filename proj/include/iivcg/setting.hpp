#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iivcg/rational.hpp"

namespace iivcg {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Action {
  std::string name;
  Rat cost;
};

// Per-outcome value vector; length m, entries >= 0.
using Valuation = std::vector<Rat>;

// One linear row coeffs . x <= rhs.
struct HalfSpace {
  std::vector<Rat> coeffs;
  Rat rhs;
};

// Convex set of admissible valuations for one principal. Either an axis box
// (upper bounds may be absent, meaning unbounded above) or a polytope given
// by <= rows intersected with the nonnegative orthant.
class ValuationDomain {
 public:
  enum class Kind { Box, Polytope };

  static ValuationDomain box(std::vector<Rat> lower, std::vector<std::optional<Rat>> upper);
  static ValuationDomain polytope(size_t dim, std::vector<HalfSpace> rows);

  Kind kind() const { return kind_; }
  size_t dim() const { return dim_; }
  bool contains(const Valuation& v) const;

  // All coordinates bounded above (trivially true for any polytope row set
  // only if derived elsewhere; boxes answer exactly).
  bool box_bounded() const;

  const std::vector<Rat>& lower() const { return lower_; }
  const std::vector<std::optional<Rat>>& upper() const { return upper_; }
  const std::vector<HalfSpace>& rows() const { return rows_; }

 private:
  Kind kind_ = Kind::Box;
  size_t dim_ = 0;
  std::vector<Rat> lower_;
  std::vector<std::optional<Rat>> upper_;
  std::vector<HalfSpace> rows_;
};

struct BidProfile {
  std::vector<Valuation> bids;

  size_t size() const { return bids.size(); }
  bool operator==(const BidProfile& other) const { return bids == other.bids; }
};

// A common agency instance: actions with distinct costs (one of them zero),
// outcomes, per-action outcome distributions, and one valuation domain per
// principal.
struct Setting {
  std::vector<Action> actions;
  std::vector<std::string> outcomes;
  std::vector<std::vector<Rat>> dist;  // dist[j] is the outcome distribution of action j
  std::vector<ValuationDomain> domains;

  size_t num_actions() const { return actions.size(); }
  size_t num_outcomes() const { return outcomes.size(); }
  size_t num_principals() const { return domains.size(); }

  const std::vector<Rat>& row(size_t action) const { return dist[action]; }
  const Rat& cost(size_t action) const { return actions[action].cost; }

  std::optional<size_t> action_index(const std::string& name) const;
  std::optional<size_t> outcome_index(const std::string& name) const;

  // Structural checks: matrix shapes, row sums exactly 1, entries in [0,1],
  // pairwise distinct costs with a zero-cost action, box bounds ordered.
  // Polytope nonemptiness needs the LP solver and lives in lp.hpp.
  void validate_structure() const;
};

// payments[principal][outcome]
using PaymentMatrix = std::vector<std::vector<Rat>>;

// A contract piece: full payment matrix for a bid profile, or nullopt when
// the contract is undefined there (the algorithmic contract signals
// impossibility this way).
using PaymentRule = std::function<std::optional<PaymentMatrix>(const BidProfile&)>;

}  // namespace iivcg
