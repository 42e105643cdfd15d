#include "iivcg/contracts.hpp"

#include <algorithm>

namespace iivcg {

void CorrelationGraph::validate() const {
  const size_t n = d.size();
  for (const auto& row : d)
    if (row.size() != n) throw ValidationError("correlation graph must be square");
  for (size_t ell = 0; ell < n; ++ell) {
    if (d[ell][ell] != 0) throw ValidationError("correlation graph has a nonzero diagonal");
    Rat col_sum(0);
    for (size_t k = 0; k < n; ++k) {
      if (d[k][ell] < 0 || d[k][ell] > 1)
        throw ValidationError("correlation graph weight outside [0,1]");
      col_sum += d[k][ell];
    }
    if (col_sum != 1)
      throw ValidationError("correlation graph column " + std::to_string(ell) +
                            " does not sum to 1");
  }
}

CorrelationGraph uniform_graph(size_t n, GraphKind kind) {
  if (n < 2) throw ValidationError("uniform graph needs at least two principals");
  CorrelationGraph g;
  g.d.assign(n, std::vector<Rat>(n, Rat(0)));
  if (kind == GraphKind::Cycle) {
    for (size_t ell = 0; ell < n; ++ell) g.d[ell][(ell + 1) % n] = Rat(1);
  } else {
    Rat w = rat(1, static_cast<long>(n - 1));
    for (size_t ell = 0; ell < n; ++ell)
      for (size_t k = 0; k < n; ++k)
        if (k != ell) g.d[ell][k] = w;
  }
  g.validate();
  return g;
}

Valuation shifted_valuation(const Valuation& v) {
  if (v.empty()) return v;
  Rat min = *std::min_element(v.begin(), v.end());
  Valuation out(v.size());
  for (size_t o = 0; o < v.size(); ++o) out[o] = v[o] - min;
  return out;
}

Valuation weighted_valuation(const CorrelationGraph& g, const BidProfile& profile, size_t ell) {
  if (profile.size() != g.size()) throw ValidationError("graph size does not match profile");
  const size_t m = profile.bids.empty() ? 0 : profile.bids[0].size();
  Valuation out(m, Rat(0));
  for (size_t k = 0; k < profile.size(); ++k) {
    if (g.d[ell][k] == 0) continue;
    Valuation shifted = shifted_valuation(profile.bids[k]);
    for (size_t o = 0; o < m; ++o) out[o] += g.d[ell][k] * shifted[o];
  }
  return out;
}

PaymentMatrix auction_inspired_payments(const Setting& s, const BidProfile& profile) {
  const size_t n = s.num_principals();
  const size_t m = s.num_outcomes();
  const Valuation zero(m, Rat(0));

  size_t star = efficient_action(s, profile);
  Rat welfare_at_star = welfare(s, star, profile);

  PaymentMatrix t(n, std::vector<Rat>(m));
  for (size_t ell = 0; ell < n; ++ell) {
    size_t star_without = efficient_action_with(s, profile, ell, zero);
    Rat others_opt = welfare_without(s, star_without, profile, ell);
    for (size_t o = 0; o < m; ++o)
      t[ell][o] = others_opt - welfare_at_star + profile.bids[ell][o];
  }
  return t;
}

PaymentMatrix weighted_payments(const Setting& s, const CorrelationGraph& g,
                                const BidProfile& profile) {
  const size_t n = s.num_principals();
  const size_t m = s.num_outcomes();

  size_t star = efficient_action(s, profile);
  PaymentMatrix t(n, std::vector<Rat>(m));
  for (size_t ell = 0; ell < n; ++ell) {
    Valuation proxy = weighted_valuation(g, profile, ell);
    size_t proxy_star = efficient_action_with(s, profile, ell, proxy);
    Rat best = welfare_with(s, proxy_star, profile, ell, proxy);
    Rat at_star = welfare_with(s, star, profile, ell, proxy);
    for (size_t o = 0; o < m; ++o) {
      t[ell][o] = best - at_star + proxy[o];
      if (t[ell][o] < 0) throw InternalError("weighted payment went negative");
    }
  }
  return t;
}

PaymentRule auction_inspired_rule(const Setting& s) {
  return [&s](const BidProfile& profile) -> std::optional<PaymentMatrix> {
    return auction_inspired_payments(s, profile);
  };
}

PaymentRule weighted_rule(const Setting& s, const CorrelationGraph& g) {
  return [&s, g](const BidProfile& profile) -> std::optional<PaymentMatrix> {
    return weighted_payments(s, g, profile);
  };
}

std::optional<CorrelationCounterexample> falsify_g_correlation(
    const Setting& s, const CorrelationGraph& g, const std::vector<BidProfile>& samples) {
  for (const auto& profile : samples) {
    size_t star = efficient_action(s, profile);
    Rat actual = welfare(s, star, profile);
    for (size_t ell = 0; ell < s.num_principals(); ++ell) {
      Valuation proxy = weighted_valuation(g, profile, ell);
      size_t proxy_star = efficient_action_with(s, profile, ell, proxy);
      Rat substituted = welfare_with(s, proxy_star, profile, ell, proxy);
      if (substituted > actual)
        return CorrelationCounterexample{ell, profile, substituted, actual};
    }
  }
  return std::nullopt;
}

SufficientConditions correlation_sufficient_conditions(const Setting& s) {
  SufficientConditions out;
  const size_t n = s.num_principals();

  // Singleton domains with identical expected value per action.
  bool all_singleton = true;
  std::vector<Valuation> points;
  for (const auto& d : s.domains) {
    if (d.kind() != ValuationDomain::Kind::Box || !d.box_bounded()) {
      all_singleton = false;
      break;
    }
    Valuation p(d.dim());
    bool singleton = true;
    for (size_t i = 0; i < d.dim(); ++i) {
      if (*d.upper()[i] != d.lower()[i]) {
        singleton = false;
        break;
      }
      p[i] = d.lower()[i];
    }
    if (!singleton) {
      all_singleton = false;
      break;
    }
    points.push_back(std::move(p));
  }
  if (all_singleton) {
    out.same_expected_value = true;
    for (size_t j = 0; j < s.num_actions() && out.same_expected_value; ++j) {
      Rat first = expected_value(s.row(j), points[0]);
      for (size_t ell = 1; ell < n; ++ell)
        if (expected_value(s.row(j), points[ell]) != first) {
          out.same_expected_value = false;
          break;
        }
    }
  }

  // Shared box [lo,hi]^m with hi - lo <= lo.
  bool narrow = n >= 1;
  std::optional<Rat> lo, hi;
  for (const auto& d : s.domains) {
    if (d.kind() != ValuationDomain::Kind::Box || !d.box_bounded()) {
      narrow = false;
      break;
    }
    for (size_t i = 0; i < d.dim(); ++i) {
      if (!lo) {
        lo = d.lower()[i];
        hi = *d.upper()[i];
      }
      if (d.lower()[i] != *lo || *d.upper()[i] != *hi) {
        narrow = false;
        break;
      }
    }
    if (!narrow) break;
  }
  if (narrow && lo && *hi - *lo <= *lo) out.narrow_box = true;

  if ((out.same_expected_value || out.narrow_box) && n >= 2)
    out.witness_graph = uniform_graph(n, GraphKind::Complete);
  return out;
}

}  // namespace iivcg
