#pragma once

#include <cstdint>

#include "iivcg/setting.hpp"

namespace iivcg {

struct GridSpec {
  unsigned resolution = 5;        // lattice points per dimension
  unsigned random_points = 32;    // seeded interior samples per principal
  std::optional<Rat> truncation;  // cap for unbounded directions; default derived
  uint64_t seed = 0;
  size_t max_profiles = 256;      // profile grid cap before sampling kicks in
};

struct GridMetadata {
  size_t num_profiles = 0;
  std::vector<size_t> candidates_per_principal;
  bool full_product = true;
  Rat truncation;
  uint64_t seed = 0;
  unsigned resolution = 0;
};

// 4 * (max cost + max finite domain bound + 1): the box used to sample
// unbounded directions, recorded in grid metadata so results stay
// interpretable.
Rat default_truncation_bound(const Setting& s);

// Exact vertices of the polytope intersected with [0, bound]^m, by basic
// solution enumeration. Intended for small constraint sets.
std::vector<Valuation> polytope_vertices(const ValuationDomain& d, const Rat& bound);

// Per-principal bid candidates: box lattice, then domain vertices, then
// seeded interior points; deduplicated in that order, all inside the domain.
std::vector<Valuation> domain_candidates(const Setting& s, size_t ell, const GridSpec& spec);

// Profile grid over the per-principal candidate sets: the full product when
// it fits under max_profiles, otherwise diagonal profiles plus seeded index
// tuples. Deterministic for a fixed spec.
std::vector<BidProfile> profile_grid(const Setting& s, const GridSpec& spec,
                                     GridMetadata* meta = nullptr);

}  // namespace iivcg
