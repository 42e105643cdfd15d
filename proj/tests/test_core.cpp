#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iivcg/core.hpp"
#include "iivcg/firstprice.hpp"
#include "iivcg/io.hpp"
#include "support/oracles.hpp"

using namespace iivcg;

namespace {

Setting two_action_tie_setting() {
  Setting s;
  s.actions = {{"a1", Rat(0)}, {"a2", Rat(1)}};
  s.outcomes = {"o1", "o2"};
  s.dist = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  s.domains.push_back(ValuationDomain::box({Rat(0), Rat(0)}, {std::nullopt, std::nullopt}));
  s.validate_structure();
  return s;
}

}  // namespace

TEST_CASE("expected value is an exact dot product") {
  CHECK(expected_value({rat(1, 4), rat(3, 4)}, {Rat(12), Rat(14)}) == rat(27, 2));
  CHECK(expected_value({Rat(1), Rat(0), Rat(0)}, {rat(7, 3), Rat(5), Rat(9)}) == rat(7, 3));
  CHECK(expected_value({rat(1, 2), rat(1, 2)}, {Rat(0), Rat(0)}) == 0);
  CHECK_THROWS_AS(expected_value({Rat(1)}, {Rat(1), Rat(2)}), ValidationError);
}

TEST_CASE("welfare of the shared fixture matches its worked numbers") {
  Setting s = make_weighted_setting();
  BidProfile v = weighted_truthful_values();
  CHECK(welfare(s, 1, v) == rat(143, 4));
  CHECK(welfare(s, 0, v) == Rat(33));
  CHECK(welfare_with(s, 0, v, 0, {Rat(0), rat(21, 10)}) == Rat(22));
  CHECK(welfare_with(s, 1, v, 0, {Rat(0), rat(21, 10)}) == rat(993, 40));

  BidProfile zeros{{{Rat(0), Rat(0)}, {Rat(0), Rat(0)}, {Rat(0), Rat(0)}}};
  Setting z = make_tradeoff_setting(rat(1, 10));
  CHECK(welfare(z, 0, BidProfile{{{Rat(0), Rat(0)}}}) == 0);
}

TEST_CASE("efficient action maximizes welfare and ties break to max cost") {
  Setting s = make_weighted_setting();
  CHECK(efficient_action(s, weighted_truthful_values()) == 1);

  Setting tie = two_action_tie_setting();
  CHECK(efficient_action(tie, BidProfile{{{Rat(0), Rat(1)}}}) == 1);  // 0 vs 0: costlier wins
  CHECK(efficient_action(tie, BidProfile{{{Rat(0), Rat(0)}}}) == 0);  // all-zero: free action
}

TEST_CASE("agent best response under first-price follows the worked fixtures") {
  Rat gamma = rat(1, 2), eps = rat(1, 4);
  Setting poa = make_poa_setting(4, gamma, eps);
  BidProfile eq = poa_equilibrium_bids(4, gamma, eps);
  CHECK(agent_best_response(poa, eq, first_price_rule(poa)) == 2);

  BidProfile zeros{{{Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0)}}};
  CHECK(agent_best_response(poa, zeros, first_price_rule(poa)) == 0);

  Setting pos = make_pos_setting(3, rat(1, 4), rat(1, 12));
  BidProfile flat{{{Rat(3), Rat(3)}}};
  CHECK(agent_best_response(pos, flat, first_price_rule(pos)) == 0);
}

TEST_CASE("incentive set membership is exact") {
  Setting pos = make_pos_setting(3, rat(1, 4), rat(1, 12));
  CHECK(in_incentive_set(pos, {Rat(0), Rat(0)}, 0));

  // j = 2 witness: w2 = gamma^(1-q) - gamma^(j-q) + gamma^(j-q)*eps/(1-gamma)
  Rat gamma = rat(1, 4), eps = rat(1, 12);
  Rat w2 = rat_pow(gamma, -2) - rat_pow(gamma, -1) + rat_pow(gamma, -1) * eps / (1 - gamma);
  CHECK(w2 == rat(112, 9));
  CHECK(in_incentive_set(pos, {Rat(0), w2}, 1));

  Setting trade = make_tradeoff_setting(rat(1, 10));
  for (long d = 1; d <= 4; ++d) {
    Rat w = rat(2, 10) - rat(1, 100) * d;  // 2*eps minus a positive delta
    CHECK_FALSE(in_incentive_set(trade, {Rat(0), w}, 1));
  }
  CHECK(in_incentive_set(trade, {Rat(0), rat(2, 10)}, 1));
  CHECK_THROWS_AS(in_incentive_set(trade, {Rat(-1), Rat(0)}, 0), ValidationError);
}

TEST_CASE("property: efficient action attains the exhaustive maximum") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Setting s = testing::random_setting(rng);
    BidProfile p = testing::random_profile(s, rng);
    size_t star = efficient_action(s, p);
    Rat best = welfare(s, star, p);
    for (size_t j = 0; j < s.num_actions(); ++j) {
      CHECK(welfare(s, j, p) <= best);
      if (welfare(s, j, p) == best) CHECK(s.cost(j) <= s.cost(star));
    }
  }
}

TEST_CASE("property: first-price best response equals the efficient action") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Setting s = testing::random_setting(rng);
    BidProfile p = testing::random_profile(s, rng);
    CHECK(agent_best_response(s, p, first_price_rule(s)) == efficient_action(s, p));
  }
}

TEST_CASE("property: incentive set membership survives constant shifts") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Setting s = testing::random_setting(rng);
    std::vector<Rat> w(s.num_outcomes());
    for (auto& x : w) x = rat(static_cast<long>(rng() % 8), 2);
    Rat shift = rat(static_cast<long>(rng() % 5), 3);
    for (size_t a = 0; a < s.num_actions(); ++a) {
      std::vector<Rat> shifted = w;
      for (auto& x : shifted) x += shift;
      CHECK(in_incentive_set(s, w, a) == in_incentive_set(s, shifted, a));
    }
  }
}

TEST_CASE("property: zeroing a bid removes exactly its expected value") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    Setting s = testing::random_setting(rng);
    BidProfile p = testing::random_profile(s, rng);
    for (size_t a = 0; a < s.num_actions(); ++a)
      for (size_t ell = 0; ell < s.num_principals(); ++ell)
        CHECK(welfare(s, a, p) - welfare_without(s, a, p, ell) ==
              expected_value(s.row(a), p.bids[ell]));
  }
}
