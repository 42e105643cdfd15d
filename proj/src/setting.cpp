#include "iivcg/setting.hpp"

#include <algorithm>
#include <set>

namespace iivcg {

ValuationDomain ValuationDomain::box(std::vector<Rat> lower,
                                     std::vector<std::optional<Rat>> upper) {
  if (lower.size() != upper.size())
    throw ValidationError("box domain: lower/upper length mismatch");
  ValuationDomain d;
  d.kind_ = Kind::Box;
  d.dim_ = lower.size();
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  for (size_t i = 0; i < d.dim_; ++i) {
    if (d.lower_[i] < 0) throw ValidationError("box domain: negative lower bound");
    if (d.upper_[i] && *d.upper_[i] < d.lower_[i])
      throw ValidationError("box domain: upper bound below lower bound");
  }
  return d;
}

ValuationDomain ValuationDomain::polytope(size_t dim, std::vector<HalfSpace> rows) {
  ValuationDomain d;
  d.kind_ = Kind::Polytope;
  d.dim_ = dim;
  d.rows_ = std::move(rows);
  for (const auto& r : d.rows_)
    if (r.coeffs.size() != dim) throw ValidationError("polytope row: wrong dimension");
  return d;
}

bool ValuationDomain::contains(const Valuation& v) const {
  if (v.size() != dim_) return false;
  for (const auto& x : v)
    if (x < 0) return false;
  if (kind_ == Kind::Box) {
    for (size_t i = 0; i < dim_; ++i) {
      if (v[i] < lower_[i]) return false;
      if (upper_[i] && v[i] > *upper_[i]) return false;
    }
    return true;
  }
  for (const auto& r : rows_)
    if (dot(r.coeffs, v) > r.rhs) return false;
  return true;
}

bool ValuationDomain::box_bounded() const {
  if (kind_ != Kind::Box) return false;
  return std::all_of(upper_.begin(), upper_.end(),
                     [](const std::optional<Rat>& u) { return u.has_value(); });
}

std::optional<size_t> Setting::action_index(const std::string& name) const {
  for (size_t j = 0; j < actions.size(); ++j)
    if (actions[j].name == name) return j;
  return std::nullopt;
}

std::optional<size_t> Setting::outcome_index(const std::string& name) const {
  for (size_t i = 0; i < outcomes.size(); ++i)
    if (outcomes[i] == name) return i;
  return std::nullopt;
}

void Setting::validate_structure() const {
  const size_t q = num_actions();
  const size_t m = num_outcomes();
  const size_t n = num_principals();
  if (q < 1) throw ValidationError("setting needs at least one action");
  if (m < 1) throw ValidationError("setting needs at least one outcome");
  if (n < 1) throw ValidationError("setting needs at least one principal");
  if (dist.size() != q) throw ValidationError("distribution must have one row per action");

  for (size_t j = 0; j < q; ++j) {
    if (dist[j].size() != m)
      throw ValidationError("distribution row " + std::to_string(j) + " has wrong length");
    Rat sum(0);
    for (const auto& p : dist[j]) {
      if (p < 0 || p > 1)
        throw ValidationError("distribution row " + std::to_string(j) +
                              " has an entry outside [0,1]");
      sum += p;
    }
    if (sum != 1)
      throw ValidationError("distribution row " + std::to_string(j) + " does not sum to 1");
  }

  bool has_zero_cost = false;
  for (size_t j = 0; j < q; ++j) {
    if (actions[j].cost < 0) throw ValidationError("negative action cost");
    if (actions[j].cost == 0) has_zero_cost = true;
    for (size_t j2 = j + 1; j2 < q; ++j2)
      if (actions[j].cost == actions[j2].cost)
        throw ValidationError("actions " + actions[j].name + " and " + actions[j2].name +
                              " share the same cost");
  }
  if (!has_zero_cost) throw ValidationError("no action with zero cost");

  std::set<std::string> names;
  for (const auto& a : actions)
    if (!names.insert(a.name).second) throw ValidationError("duplicate action name " + a.name);
  names.clear();
  for (const auto& o : outcomes)
    if (!names.insert(o).second) throw ValidationError("duplicate outcome name " + o);

  for (const auto& d : domains)
    if (d.dim() != m) throw ValidationError("valuation domain has wrong dimension");
}

}  // namespace iivcg
