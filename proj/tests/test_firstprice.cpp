#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iivcg/firstprice.hpp"
#include "iivcg/io.hpp"
#include "support/oracles.hpp"

using namespace iivcg;

namespace {

Setting single_outcome_setting() {
  Setting s;
  s.actions = {{"a1", Rat(0)}};
  s.outcomes = {"o1"};
  s.dist = {{Rat(1)}};
  s.domains.push_back(ValuationDomain::box({Rat(0)}, {std::nullopt}));
  s.validate_structure();
  return s;
}

}  // namespace

TEST_CASE("first-price payments are the bids themselves") {
  Setting poa = make_poa_setting(4, rat(1, 2), rat(1, 4));
  BidProfile eq = poa_equilibrium_bids(4, rat(1, 2), rat(1, 4));
  auto rule = first_price_rule(poa);
  auto t = rule(eq);
  REQUIRE(t);
  CHECK((*t)[0][2] == rat(3, 2));
  CHECK((*t)[1][1] == rat(5, 4));
  for (size_t ell = 2; ell < 4; ++ell)
    CHECK((*t)[ell] == Valuation{Rat(0), Rat(0), Rat(0)});

  BidProfile zeros{{{Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0)},
                    {Rat(0), Rat(0), Rat(0)}}};
  auto tz = rule(zeros);
  REQUIRE(tz);
  for (const auto& row : *tz) CHECK(row == Valuation{Rat(0), Rat(0), Rat(0)});
}

TEST_CASE("the anarchy fixture's stated profile is a grid equilibrium") {
  for (size_t n : {size_t{4}, size_t{10}}) {
    Setting s = make_poa_setting(n, rat(1, 2), rat(1, 4));
    BidProfile values = poa_truthful_values(n, rat(1, 2), rat(1, 4));
    BidProfile eq = poa_equilibrium_bids(n, rat(1, 2), rat(1, 4));
    GridSpec spec;
    spec.resolution = 9;
    spec.random_points = 16;
    spec.seed = 1;
    DeviationGrid grid = deviation_grid(s, eq, spec);
    CHECK_FALSE(find_profitable_deviation(s, values, eq, grid));
  }
}

TEST_CASE("raising the winning bid opens a profitable deviation") {
  Setting s = make_poa_setting(4, rat(1, 2), rat(1, 4));
  BidProfile values = poa_truthful_values(4, rat(1, 2), rat(1, 4));
  BidProfile bids = poa_equilibrium_bids(4, rat(1, 2), rat(1, 4));
  bids.bids[0][2] = Rat(2);  // overpaying for the same action
  GridSpec spec;
  spec.resolution = 9;
  spec.seed = 1;
  DeviationGrid grid = deviation_grid(s, bids, spec);
  auto dev = find_profitable_deviation(s, values, bids, grid);
  REQUIRE(dev);
  CHECK(dev->principal == 0);
  CHECK(dev->bid[2] < Rat(2));
  CHECK(dev->gain > 0);
}

TEST_CASE("a lone principal bidding above value wants out") {
  Setting s = single_outcome_setting();
  BidProfile values{{{Rat(1)}}};
  BidProfile bids{{{Rat(2)}}};
  GridSpec spec;
  spec.resolution = 5;
  spec.seed = 1;
  DeviationGrid grid = deviation_grid(s, bids, spec);
  auto dev = find_profitable_deviation(s, values, bids, grid);
  REQUIRE(dev);
  CHECK(dev->gain > 0);
}

TEST_CASE("price of anarchy reproduction: ratio is 1/(n-2) for every n tested") {
  for (size_t n : {size_t{4}, size_t{5}, size_t{7}, size_t{10}}) {
    Setting s = make_poa_setting(n, rat(1, 2), rat(1, 4));
    BidProfile values = poa_truthful_values(n, rat(1, 2), rat(1, 4));
    BidProfile eq = poa_equilibrium_bids(n, rat(1, 2), rat(1, 4));
    GridSpec spec;
    spec.resolution = 9;
    spec.seed = 1;
    auto report = price_of_anarchy(s, values, eq, deviation_grid(s, eq, spec));
    CHECK(report.eq_action == 2);
    CHECK(report.opt_action == 0);
    CHECK(report.eq_welfare == Rat(1));
    CHECK(report.opt_welfare == Rat(static_cast<long>(n - 2)));
    CHECK(report.ratio == rat(1, static_cast<long>(n - 2)));
  }
}

TEST_CASE("price of anarchy refuses non-equilibria") {
  Setting s = make_poa_setting(4, rat(1, 2), rat(1, 4));
  BidProfile values = poa_truthful_values(4, rat(1, 2), rat(1, 4));
  BidProfile bids = poa_equilibrium_bids(4, rat(1, 2), rat(1, 4));
  bids.bids[0][2] = Rat(2);
  GridSpec spec;
  spec.resolution = 9;
  spec.seed = 1;
  CHECK_THROWS_AS(price_of_anarchy(s, values, bids, deviation_grid(s, bids, spec)),
                  ValidationError);
}

TEST_CASE("a truthful single-principal equilibrium at the optimum has ratio one") {
  Setting s = single_outcome_setting();
  BidProfile values{{{Rat(5)}}};
  BidProfile eq{{{Rat(0)}}};
  GridSpec spec;
  spec.resolution = 5;
  spec.seed = 1;
  auto report = price_of_anarchy(s, values, eq, deviation_grid(s, eq, spec));
  CHECK(report.ratio == Rat(1));
}

TEST_CASE("stability fixture: utilities above the first rung stay under the bound") {
  Setting s = make_pos_setting(3, rat(1, 4), rat(1, 12));
  Valuation value = pos_truthful_value(3, rat(1, 4));
  Rat bound = 1 - rat(1, 12) / (1 - rat(1, 4));
  CHECK(bound == rat(8, 9));

  GridSpec spec;
  spec.resolution = 12;
  spec.random_points = 16;
  spec.seed = 1;
  auto candidates = domain_candidates(s, 0, spec);
  auto scan = max_fp_utility(s, value, candidates, 1);
  REQUIRE(scan.max_utility);
  CHECK(scan.slice_size > 0);
  CHECK(*scan.max_utility <= bound);

  // The flat bid at the domain corner induces the first rung with utility 1.
  auto corner = max_fp_utility(s, value, {Valuation{Rat(3), Rat(3)}}, 0);
  REQUIRE(corner.max_utility);
  CHECK(*corner.max_utility == Rat(1));

  // ... which also means the slice above rung one is empty for that bid.
  auto empty = max_fp_utility(s, value, {Valuation{Rat(3), Rat(3)}}, 1);
  CHECK_FALSE(empty.max_utility);
  CHECK(empty.slice_size == 0);
}
