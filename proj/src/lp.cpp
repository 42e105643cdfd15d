#include "iivcg/lp.hpp"

#include <algorithm>

namespace iivcg {

namespace {

struct RowTag {
  enum class Src { Constraint, LowerBound, UpperBound } src;
  size_t index;   // constraint index or variable index
  int sign;       // +1: row is a <= rhs as given; -1: row is the negated Ge side
};

// One <= row over the original variables.
struct LeRow {
  std::vector<Rat> a;
  Rat beta;
  RowTag tag;
};

class Tableau {
 public:
  Tableau(const std::vector<LeRow>& rows, size_t n_orig)
      : n_orig_(n_orig), n_rows_(rows.size()), n_struct_(2 * n_orig), n_slack_(rows.size()) {
    n_cols_ = n_struct_ + n_slack_;  // artificials appended below
    mat_.assign(n_rows_, std::vector<Rat>(n_cols_ + 1, Rat(0)));
    basis_.assign(n_rows_, 0);
    row_active_.assign(n_rows_, true);

    std::vector<size_t> artificial_rows;
    for (size_t i = 0; i < n_rows_; ++i) {
      int flip = rows[i].beta < 0 ? -1 : 1;
      for (size_t j = 0; j < n_orig_; ++j) {
        mat_[i][j] = flip * rows[i].a[j];
        mat_[i][n_orig_ + j] = -mat_[i][j];
      }
      mat_[i][n_struct_ + i] = Rat(flip);
      mat_[i][n_cols_] = flip * rows[i].beta;
      if (flip == 1) {
        basis_[i] = n_struct_ + i;  // slack starts basic
      } else {
        artificial_rows.push_back(i);
      }
    }
    n_art_ = artificial_rows.size();
    if (n_art_ > 0) {
      size_t art0 = n_cols_;
      n_cols_ += n_art_;
      for (auto& row : mat_) row.insert(row.end() - 1, n_art_, Rat(0));
      for (size_t k = 0; k < n_art_; ++k) {
        size_t i = artificial_rows[k];
        mat_[i][art0 + k] = Rat(1);
        basis_[i] = art0 + k;
      }
    }
    col_allowed_.assign(n_cols_, true);
  }

  bool run_phase1() {
    if (n_art_ == 0) return true;
    std::vector<Rat> cost(n_cols_, Rat(0));
    for (size_t c = art_begin(); c < n_cols_; ++c) cost[c] = Rat(1);
    load_objective(cost);
    iterate(/*phase1=*/true);
    if (-obj_[n_cols_] != 0) return false;  // positive infeasibility residue
    drive_out_artificials();
    for (size_t c = art_begin(); c < n_cols_; ++c) col_allowed_[c] = false;
    return true;
  }

  // Returns false on unbounded.
  bool run_phase2(const std::vector<Rat>& c_min) {
    std::vector<Rat> cost(n_cols_, Rat(0));
    for (size_t j = 0; j < n_orig_; ++j) {
      cost[j] = c_min[j];
      cost[n_orig_ + j] = -c_min[j];
    }
    load_objective(cost);
    return iterate(/*phase1=*/false);
  }

  std::vector<Rat> extract_point() const {
    std::vector<Rat> x(n_orig_, Rat(0));
    for (size_t i = 0; i < n_rows_; ++i) {
      if (!row_active_[i]) continue;
      size_t b = basis_[i];
      if (b < n_orig_)
        x[b] += mat_[i][n_cols_];
      else if (b < n_struct_)
        x[b - n_orig_] -= mat_[i][n_cols_];
    }
    return x;
  }

  // Reduced cost of the slack of internal row i at optimality; this is the
  // row's nonnegative multiplier in the <= certificate.
  Rat slack_multiplier(size_t i) const {
    if (!row_active_[i]) return Rat(0);
    return obj_[n_struct_ + i];
  }

 private:
  size_t art_begin() const { return n_struct_ + n_slack_; }

  void load_objective(const std::vector<Rat>& cost) {
    obj_.assign(n_cols_ + 1, Rat(0));
    for (size_t j = 0; j < n_cols_; ++j) obj_[j] = cost[j];
    for (size_t i = 0; i < n_rows_; ++i) {
      if (!row_active_[i]) continue;
      const Rat& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (size_t j = 0; j <= n_cols_; ++j) obj_[j] -= cb * mat_[i][j];
    }
  }

  void pivot(size_t r, size_t s) {
    Rat inv = Rat(1) / mat_[r][s];
    for (auto& v : mat_[r]) v *= inv;
    for (size_t i = 0; i < n_rows_; ++i) {
      if (i == r || mat_[i][s] == 0) continue;
      Rat factor = mat_[i][s];
      for (size_t j = 0; j <= n_cols_; ++j) mat_[i][j] -= factor * mat_[r][j];
    }
    if (obj_[s] != 0) {
      Rat factor = obj_[s];
      for (size_t j = 0; j <= n_cols_; ++j) obj_[j] -= factor * mat_[r][j];
    }
    basis_[r] = s;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost,
  // leaving = lowest-index basic variable among minimal ratios. The guard
  // turns a pivot rule regression into an error instead of a hang.
  bool iterate(bool phase1) {
    size_t pivots = 0;
    const size_t pivot_cap = 2000 * (n_rows_ + n_cols_ + 1);
    for (;;) {
      if (++pivots > pivot_cap) throw InternalError("simplex exceeded its pivot budget");
      size_t s = n_cols_;
      for (size_t j = 0; j < n_cols_; ++j) {
        if (!col_allowed_[j]) continue;
        if (!phase1 && j >= art_begin()) break;
        if (obj_[j] < 0) {
          s = j;
          break;
        }
      }
      if (s == n_cols_) return true;  // optimal

      size_t r = n_rows_;
      Rat best_ratio;
      for (size_t i = 0; i < n_rows_; ++i) {
        if (!row_active_[i] || mat_[i][s] <= 0) continue;
        Rat ratio = mat_[i][n_cols_] / mat_[i][s];
        if (r == n_rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[r])) {
          r = i;
          best_ratio = ratio;
        }
      }
      if (r == n_rows_) return false;  // unbounded (cannot happen in phase 1)
      if (basis_[r] >= art_begin()) col_allowed_[basis_[r]] = false;
      pivot(r, s);
    }
  }

  // Any artificial still basic sits at value zero; pivot it out on a nonzero
  // entry, or retire the row as redundant.
  void drive_out_artificials() {
    for (size_t i = 0; i < n_rows_; ++i) {
      if (!row_active_[i] || basis_[i] < art_begin()) continue;
      size_t s = n_cols_;
      for (size_t j = 0; j < art_begin(); ++j) {
        if (mat_[i][j] != 0) {
          s = j;
          break;
        }
      }
      if (s == n_cols_) {
        row_active_[i] = false;
      } else {
        pivot(i, s);
      }
    }
  }

  size_t n_orig_, n_rows_, n_struct_, n_slack_, n_art_ = 0, n_cols_;
  std::vector<std::vector<Rat>> mat_;
  std::vector<Rat> obj_;
  std::vector<size_t> basis_;
  std::vector<bool> row_active_;
  std::vector<bool> col_allowed_;
};

void validate_lp(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars) throw ValidationError("lp: objective length mismatch");
  if (lp.lower.size() != lp.num_vars || lp.upper.size() != lp.num_vars)
    throw ValidationError("lp: bounds length mismatch");
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != lp.num_vars) throw ValidationError("lp: constraint length mismatch");
  bool any_bound = false;
  for (size_t j = 0; j < lp.num_vars; ++j) any_bound |= lp.lower[j] || lp.upper[j];
  if (lp.constraints.empty() && !any_bound)
    throw ValidationError("lp: needs at least one constraint or bound");
}

std::vector<LeRow> le_rows(const LinearProgram& lp) {
  std::vector<LeRow> rows;
  for (size_t i = 0; i < lp.constraints.size(); ++i) {
    const auto& c = lp.constraints[i];
    std::vector<Rat> neg(c.coeffs.size());
    for (size_t j = 0; j < neg.size(); ++j) neg[j] = -c.coeffs[j];
    if (c.rel == Rel::Le || c.rel == Rel::Eq)
      rows.push_back({c.coeffs, c.rhs, {RowTag::Src::Constraint, i, +1}});
    if (c.rel == Rel::Ge || c.rel == Rel::Eq)
      rows.push_back({neg, -c.rhs, {RowTag::Src::Constraint, i, -1}});
  }
  for (size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j]) {
      std::vector<Rat> a(lp.num_vars, Rat(0));
      a[j] = Rat(-1);
      rows.push_back({std::move(a), -*lp.lower[j], {RowTag::Src::LowerBound, j, +1}});
    }
    if (lp.upper[j]) {
      std::vector<Rat> a(lp.num_vars, Rat(0));
      a[j] = Rat(1);
      rows.push_back({std::move(a), *lp.upper[j], {RowTag::Src::UpperBound, j, +1}});
    }
  }
  return rows;
}

void check_point(const LinearProgram& lp, const std::vector<Rat>& x, const Rat& value) {
  Rat obj = dot(lp.objective, x);
  if (obj != value) throw InternalError("lp: objective mismatch at optimum");
  for (const auto& c : lp.constraints) {
    Rat lhs = dot(c.coeffs, x);
    bool ok = c.rel == Rel::Le ? lhs <= c.rhs : c.rel == Rel::Ge ? lhs >= c.rhs : lhs == c.rhs;
    if (!ok) throw InternalError("lp: optimal point violates a constraint");
  }
  for (size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.lower[j] && x[j] < *lp.lower[j]) throw InternalError("lp: lower bound violated");
    if (lp.upper[j] && x[j] > *lp.upper[j]) throw InternalError("lp: upper bound violated");
  }
}

}  // namespace

LPResult solve(const LinearProgram& lp) {
  validate_lp(lp);

  std::vector<Rat> c_min = lp.objective;
  if (lp.sense == Sense::Maximize)
    for (auto& c : c_min) c = -c;

  auto rows = le_rows(lp);
  Tableau tab(rows, lp.num_vars);

  LPResult res;
  if (!tab.run_phase1()) {
    res.status = LPResult::Status::Infeasible;
    return res;
  }
  if (!tab.run_phase2(c_min)) {
    res.status = LPResult::Status::Unbounded;
    return res;
  }

  res.status = LPResult::Status::Optimal;
  res.point = tab.extract_point();
  res.value = dot(lp.objective, res.point);
  check_point(lp, res.point, res.value);

  res.duals.assign(lp.constraints.size(), Rat(0));
  res.lower_duals.assign(lp.num_vars, Rat(0));
  res.upper_duals.assign(lp.num_vars, Rat(0));
  for (size_t i = 0; i < rows.size(); ++i) {
    Rat lambda = tab.slack_multiplier(i);
    if (lambda == 0) continue;
    const RowTag& tag = rows[i].tag;
    switch (tag.src) {
      case RowTag::Src::Constraint:
        res.duals[tag.index] += tag.sign > 0 ? lambda : -lambda;
        break;
      case RowTag::Src::LowerBound:
        res.lower_duals[tag.index] += lambda;
        break;
      case RowTag::Src::UpperBound:
        res.upper_duals[tag.index] += lambda;
        break;
    }
  }
  return res;
}

bool verify_dual_certificate(const LinearProgram& lp, const LPResult& result) {
  if (!result.optimal()) return false;
  std::vector<Rat> c_min = lp.objective;
  Rat value_min = result.value;
  if (lp.sense == Sense::Maximize) {
    for (auto& c : c_min) c = -c;
    value_min = -value_min;
  }

  for (size_t i = 0; i < lp.constraints.size(); ++i) {
    if (lp.constraints[i].rel == Rel::Le && result.duals[i] < 0) return false;
    if (lp.constraints[i].rel == Rel::Ge && result.duals[i] > 0) return false;
  }
  for (size_t j = 0; j < lp.num_vars; ++j) {
    if (result.lower_duals[j] < 0 || result.upper_duals[j] < 0) return false;
    if (!lp.lower[j] && result.lower_duals[j] != 0) return false;
    if (!lp.upper[j] && result.upper_duals[j] != 0) return false;
  }

  for (size_t j = 0; j < lp.num_vars; ++j) {
    Rat lhs(0);
    for (size_t i = 0; i < lp.constraints.size(); ++i)
      lhs += result.duals[i] * lp.constraints[i].coeffs[j];
    lhs += result.upper_duals[j] - result.lower_duals[j];
    if (lhs != -c_min[j]) return false;
  }

  Rat total(0);
  for (size_t i = 0; i < lp.constraints.size(); ++i)
    total += result.duals[i] * lp.constraints[i].rhs;
  for (size_t j = 0; j < lp.num_vars; ++j) {
    if (lp.upper[j]) total += result.upper_duals[j] * *lp.upper[j];
    if (lp.lower[j]) total -= result.lower_duals[j] * *lp.lower[j];
  }
  return total == -value_min;
}

std::vector<LinConstraint> domain_constraints(const ValuationDomain& d, size_t offset,
                                              size_t total_vars) {
  if (offset + d.dim() > total_vars) throw ValidationError("domain_constraints: block out of range");
  std::vector<LinConstraint> out;
  auto unit = [&](size_t i, const Rat& coeff) {
    std::vector<Rat> a(total_vars, Rat(0));
    a[offset + i] = coeff;
    return a;
  };
  if (d.kind() == ValuationDomain::Kind::Box) {
    for (size_t i = 0; i < d.dim(); ++i) {
      out.push_back({unit(i, Rat(1)), Rel::Ge, d.lower()[i]});
      if (d.upper()[i]) out.push_back({unit(i, Rat(1)), Rel::Le, *d.upper()[i]});
    }
    return out;
  }
  for (const auto& row : d.rows()) {
    std::vector<Rat> a(total_vars, Rat(0));
    for (size_t i = 0; i < d.dim(); ++i) a[offset + i] = row.coeffs[i];
    out.push_back({std::move(a), Rel::Le, row.rhs});
  }
  for (size_t i = 0; i < d.dim(); ++i) out.push_back({unit(i, Rat(1)), Rel::Ge, Rat(0)});
  return out;
}

bool domain_feasible(const ValuationDomain& d) {
  if (d.kind() == ValuationDomain::Kind::Box) return true;  // validated structurally
  LinearProgram lp(d.dim());
  lp.constraints = domain_constraints(d, 0, d.dim());
  return solve(lp).status != LPResult::Status::Infeasible;
}

std::vector<Rat> lex_min_optimal_point(const LinearProgram& lp, const Rat& optimum,
                                       const std::vector<size_t>& order) {
  LinearProgram work = lp;
  work.add(work.objective, Rel::Eq, optimum);
  std::vector<Rat> point;
  for (size_t idx : order) {
    LinearProgram step = work;
    step.sense = Sense::Minimize;
    step.objective.assign(step.num_vars, Rat(0));
    step.objective[idx] = Rat(1);
    LPResult r = solve(step);
    if (!r.optimal()) throw InternalError("lex refinement lost feasibility");
    point = r.point;
    std::vector<Rat> pin(work.num_vars, Rat(0));
    pin[idx] = Rat(1);
    work.add(std::move(pin), Rel::Eq, r.value);
  }
  if (point.empty()) {
    LPResult r = solve(work);
    if (!r.optimal()) throw InternalError("lex refinement lost feasibility");
    point = r.point;
  }
  return point;
}

}  // namespace iivcg
