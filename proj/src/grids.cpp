#include "iivcg/grids.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace iivcg {

namespace {

constexpr size_t kLatticeCap = 20000;

// Exact solve of a square system; nullopt when singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a,
                                             std::vector<Rat> b) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    Rat inv = Rat(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    b[col] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (size_t c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  return b;
}

void push_unique(std::vector<Valuation>& out, std::set<std::vector<Rat>>& seen, Valuation v) {
  if (seen.insert(v).second) out.push_back(std::move(v));
}

// Interval sample points: both endpoints plus an even subdivision.
std::vector<Rat> axis_points(const Rat& lo, const Rat& hi, unsigned resolution) {
  if (lo == hi) return {lo};
  std::vector<Rat> pts;
  unsigned r = std::max(2u, resolution);
  for (unsigned t = 0; t < r; ++t)
    pts.push_back(lo + (hi - lo) * rat(t, 1) / rat(r - 1, 1));
  return pts;
}

void cartesian(const std::vector<std::vector<Rat>>& axes, std::vector<Valuation>& out,
               std::set<std::vector<Rat>>& seen) {
  size_t total = 1;
  for (const auto& ax : axes) {
    total *= ax.size();
    if (total > kLatticeCap) return;  // lattice too large; vertices and random points remain
  }
  Valuation cur(axes.size());
  std::vector<size_t> idx(axes.size(), 0);
  for (size_t count = 0; count < total; ++count) {
    size_t rem = count;
    for (size_t i = 0; i < axes.size(); ++i) {
      idx[i] = rem % axes[i].size();
      rem /= axes[i].size();
    }
    for (size_t i = 0; i < axes.size(); ++i) cur[i] = axes[i][idx[i]];
    push_unique(out, seen, cur);
  }
}

Rat random_fraction(std::mt19937_64& rng) {
  // numerator in [0, 256] over 256; engine output is portable by definition
  return rat(static_cast<long>(rng() % 257), 256);
}

}  // namespace

Rat default_truncation_bound(const Setting& s) {
  Rat max_cost(0);
  for (const auto& a : s.actions) max_cost = std::max(max_cost, a.cost);
  Rat max_bound(0);
  for (const auto& d : s.domains) {
    if (d.kind() == ValuationDomain::Kind::Box) {
      for (size_t i = 0; i < d.dim(); ++i) {
        max_bound = std::max(max_bound, d.lower()[i]);
        if (d.upper()[i]) max_bound = std::max(max_bound, *d.upper()[i]);
      }
    } else {
      for (const auto& row : d.rows()) max_bound = std::max(max_bound, Rat(abs(row.rhs)));
    }
  }
  return 4 * (max_cost + max_bound + 1);
}

std::vector<Valuation> polytope_vertices(const ValuationDomain& d, const Rat& bound) {
  const size_t m = d.dim();
  std::vector<HalfSpace> rows = d.rows();
  for (size_t i = 0; i < m; ++i) {
    std::vector<Rat> lo(m, Rat(0)), hi(m, Rat(0));
    lo[i] = Rat(-1);
    hi[i] = Rat(1);
    rows.push_back({std::move(lo), Rat(0)});    // -x_i <= 0
    rows.push_back({std::move(hi), bound});     // x_i <= bound
  }

  std::vector<Valuation> out;
  std::set<std::vector<Rat>> seen;

  // all m-subsets of rows
  std::vector<size_t> comb(m);
  for (size_t i = 0; i < m; ++i) comb[i] = i;
  if (rows.size() < m) return out;
  for (;;) {
    std::vector<std::vector<Rat>> a(m);
    std::vector<Rat> b(m);
    for (size_t i = 0; i < m; ++i) {
      a[i] = rows[comb[i]].coeffs;
      b[i] = rows[comb[i]].rhs;
    }
    if (auto x = solve_square(std::move(a), std::move(b))) {
      bool feasible = true;
      for (const auto& row : rows) {
        if (dot(row.coeffs, *x) > row.rhs) {
          feasible = false;
          break;
        }
      }
      if (feasible) push_unique(out, seen, *x);
    }
    // next combination
    size_t i = m;
    while (i > 0) {
      --i;
      if (comb[i] != i + rows.size() - m) {
        ++comb[i];
        for (size_t j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

std::vector<Valuation> domain_candidates(const Setting& s, size_t ell, const GridSpec& spec) {
  const ValuationDomain& d = s.domains[ell];
  const size_t m = d.dim();
  Rat bound = spec.truncation ? *spec.truncation : default_truncation_bound(s);
  std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ULL + ell + 1);

  std::vector<Valuation> out;
  std::set<std::vector<Rat>> seen;

  if (d.kind() == ValuationDomain::Kind::Box) {
    std::vector<std::vector<Rat>> axes(m);
    std::vector<Rat> lo(m), hi(m);
    for (size_t i = 0; i < m; ++i) {
      lo[i] = d.lower()[i];
      hi[i] = d.upper()[i] ? *d.upper()[i] : std::max(bound, lo[i]);
      axes[i] = axis_points(lo[i], hi[i], spec.resolution);
    }
    cartesian(axes, out, seen);
    // corners
    if (m <= 16) {
      for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        Valuation v(m);
        for (size_t i = 0; i < m; ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
        push_unique(out, seen, std::move(v));
      }
    }
    for (unsigned t = 0; t < spec.random_points; ++t) {
      Valuation v(m);
      for (size_t i = 0; i < m; ++i) v[i] = lo[i] + random_fraction(rng) * (hi[i] - lo[i]);
      push_unique(out, seen, std::move(v));
    }
    return out;
  }

  auto vertices = polytope_vertices(d, bound);
  for (auto& v : vertices) push_unique(out, seen, std::move(v));
  // lattice over the truncation box, kept only where it lands inside
  {
    std::vector<std::vector<Rat>> axes(m);
    for (size_t i = 0; i < m; ++i) axes[i] = axis_points(Rat(0), bound, spec.resolution);
    std::vector<Valuation> lattice;
    std::set<std::vector<Rat>> lattice_seen;
    cartesian(axes, lattice, lattice_seen);
    for (auto& v : lattice)
      if (d.contains(v)) push_unique(out, seen, std::move(v));
  }
  // random convex combinations of the points collected so far
  if (!out.empty()) {
    std::vector<Valuation> base = out;
    for (unsigned t = 0; t < spec.random_points; ++t) {
      std::vector<Rat> weights(base.size());
      Rat total(0);
      for (auto& w : weights) {
        w = rat(static_cast<long>(rng() % 64 + 1), 1);
        total += w;
      }
      Valuation v(m, Rat(0));
      for (size_t i = 0; i < base.size(); ++i)
        for (size_t c = 0; c < m; ++c) v[c] += weights[i] / total * base[i][c];
      if (d.contains(v)) push_unique(out, seen, std::move(v));
    }
  }
  return out;
}

std::vector<BidProfile> profile_grid(const Setting& s, const GridSpec& spec,
                                     GridMetadata* meta) {
  const size_t n = s.num_principals();
  std::vector<std::vector<Valuation>> cands(n);
  for (size_t ell = 0; ell < n; ++ell) cands[ell] = domain_candidates(s, ell, spec);

  size_t product = 1;
  bool overflow = false;
  for (const auto& c : cands) {
    if (c.empty()) throw ValidationError("empty candidate set for a principal");
    if (product > spec.max_profiles / c.size() + 1) overflow = true;
    product *= c.size();
    if (product > spec.max_profiles) overflow = true;
  }

  std::vector<BidProfile> out;
  if (!overflow && product <= spec.max_profiles) {
    std::vector<size_t> idx(n, 0);
    for (size_t count = 0; count < product; ++count) {
      size_t rem = count;
      BidProfile p;
      p.bids.resize(n);
      for (size_t ell = 0; ell < n; ++ell) {
        idx[ell] = rem % cands[ell].size();
        rem /= cands[ell].size();
        p.bids[ell] = cands[ell][idx[ell]];
      }
      out.push_back(std::move(p));
    }
  } else {
    std::set<std::vector<size_t>> chosen;
    size_t max_count = 0;
    for (const auto& c : cands) max_count = std::max(max_count, c.size());
    for (size_t i = 0; i < max_count && out.size() < spec.max_profiles; ++i) {
      std::vector<size_t> idx(n);
      for (size_t ell = 0; ell < n; ++ell) idx[ell] = std::min(i, cands[ell].size() - 1);
      if (chosen.insert(idx).second) {
        BidProfile p;
        for (size_t ell = 0; ell < n; ++ell) p.bids.push_back(cands[ell][idx[ell]]);
        out.push_back(std::move(p));
      }
    }
    std::mt19937_64 rng(spec.seed ^ 0xa5a5a5a55a5a5a5aULL);
    size_t attempts = 0;
    while (out.size() < spec.max_profiles && attempts < spec.max_profiles * 64) {
      ++attempts;
      std::vector<size_t> idx(n);
      for (size_t ell = 0; ell < n; ++ell) idx[ell] = rng() % cands[ell].size();
      if (!chosen.insert(idx).second) continue;
      BidProfile p;
      for (size_t ell = 0; ell < n; ++ell) p.bids.push_back(cands[ell][idx[ell]]);
      out.push_back(std::move(p));
    }
  }

  if (meta) {
    meta->num_profiles = out.size();
    meta->candidates_per_principal.clear();
    for (const auto& c : cands) meta->candidates_per_principal.push_back(c.size());
    meta->full_product = !overflow && product <= spec.max_profiles;
    meta->truncation = spec.truncation ? *spec.truncation : default_truncation_bound(s);
    meta->seed = spec.seed;
    meta->resolution = spec.resolution;
  }
  return out;
}

}  // namespace iivcg
