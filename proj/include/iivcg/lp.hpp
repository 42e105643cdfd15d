#pragma once

#include "iivcg/setting.hpp"

namespace iivcg {

enum class Sense { Minimize, Maximize };
enum class Rel { Le, Ge, Eq };

struct LinConstraint {
  std::vector<Rat> coeffs;
  Rel rel = Rel::Le;
  Rat rhs;
};

struct LinearProgram {
  size_t num_vars = 0;
  Sense sense = Sense::Minimize;
  std::vector<Rat> objective;
  std::vector<LinConstraint> constraints;
  std::vector<std::optional<Rat>> lower;  // per-variable, absent = free below
  std::vector<std::optional<Rat>> upper;  // per-variable, absent = free above

  explicit LinearProgram(size_t vars = 0)
      : num_vars(vars), objective(vars, Rat(0)), lower(vars), upper(vars) {}

  void add(std::vector<Rat> coeffs, Rel rel, Rat rhs) {
    constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

struct LPResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rat value;
  std::vector<Rat> point;

  // Dual certificate in minimize form (populated for Optimal):
  //   sum_i duals[i]*a_i + sum_j (upper_duals[j] - lower_duals[j])*e_j = -c
  //   sum_i duals[i]*rhs_i + sum_j (upper_duals[j]*u_j - lower_duals[j]*l_j) = -value
  // with duals[i] >= 0 for Le rows, <= 0 for Ge rows, free for Eq rows,
  // and lower_duals, upper_duals >= 0 (zero where the bound is absent).
  std::vector<Rat> duals;
  std::vector<Rat> lower_duals;
  std::vector<Rat> upper_duals;

  bool optimal() const { return status == Status::Optimal; }
};

// Exact two-phase primal simplex with Bland's rule. Optimal points are
// re-substituted into every constraint before returning.
LPResult solve(const LinearProgram& lp);

// Checks the dual certificate of an Optimal result against the primal data.
bool verify_dual_certificate(const LinearProgram& lp, const LPResult& result);

// Rows placing the variable block [offset, offset+d.dim()) inside the domain:
// box bounds, or polytope rows plus nonnegativity. Coefficient vectors have
// length total_vars.
std::vector<LinConstraint> domain_constraints(const ValuationDomain& d, size_t offset,
                                              size_t total_vars);

// Phase-1 feasibility of a domain (boxes are feasible by construction).
bool domain_feasible(const ValuationDomain& d);

// Lexicographically smallest optimal point: pins the objective at its optimum
// and then minimizes the coordinates in `order`, one at a time.
std::vector<Rat> lex_min_optimal_point(const LinearProgram& lp, const Rat& optimum,
                                       const std::vector<size_t>& order);

}  // namespace iivcg
