#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iivcg/io.hpp"
#include "support/oracles.hpp"

using namespace iivcg;

namespace {
const std::string kFixtures = IIVCG_FIXTURES;

bool same_setting(const Setting& a, const Setting& b) {
  if (a.num_actions() != b.num_actions() || a.num_outcomes() != b.num_outcomes() ||
      a.num_principals() != b.num_principals())
    return false;
  for (size_t j = 0; j < a.num_actions(); ++j)
    if (a.actions[j].name != b.actions[j].name || a.actions[j].cost != b.actions[j].cost)
      return false;
  if (a.outcomes != b.outcomes || a.dist != b.dist) return false;
  for (size_t ell = 0; ell < a.num_principals(); ++ell) {
    const auto& da = a.domains[ell];
    const auto& db = b.domains[ell];
    if (da.kind() != db.kind() || da.dim() != db.dim()) return false;
    if (da.lower() != db.lower() || da.upper() != db.upper()) return false;
    if (da.rows().size() != db.rows().size()) return false;
    for (size_t r = 0; r < da.rows().size(); ++r)
      if (da.rows()[r].coeffs != db.rows()[r].coeffs || da.rows()[r].rhs != db.rows()[r].rhs)
        return false;
  }
  return true;
}
}  // namespace

TEST_CASE("setting round-trips exactly through its JSON form") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    Setting s = testing::random_setting(rng);
    CHECK(same_setting(s, setting_from_json(setting_to_json(s))));
  }
  for (const Setting& s :
       {make_poa_setting(5, rat(1, 2), rat(1, 4)), make_pos_setting(4, rat(1, 5), rat(1, 20)),
        make_tradeoff_setting(rat(1, 10)), make_weighted_setting()}) {
    CHECK(same_setting(s, setting_from_json(setting_to_json(s))));
  }
}

TEST_CASE("json emission is byte-stable") {
  Setting s = make_weighted_setting();
  CHECK(setting_to_json(s).dump() == setting_to_json(s).dump());
  Json j = setting_to_json(make_tradeoff_setting(rat(1, 10)));
  CHECK(j["actions"][1]["cost"] == "1/10");
}

TEST_CASE("bundled fixtures match their factories") {
  CHECK(same_setting(load_setting(kFixtures + "/tradeoff.json"),
                     make_tradeoff_setting(rat(1, 10))));
  CHECK(same_setting(load_setting(kFixtures + "/poa_example.json"),
                     make_poa_setting(10, rat(1, 2), rat(1, 4))));
  CHECK(same_setting(load_setting(kFixtures + "/poa_n4.json"),
                     make_poa_setting(4, rat(1, 2), rat(1, 4))));
  CHECK(same_setting(load_setting(kFixtures + "/pos_example.json"),
                     make_pos_setting(3, rat(1, 4), rat(1, 12))));
  CHECK(same_setting(load_setting(kFixtures + "/weighted_example.json"),
                     make_weighted_setting()));

  Setting weighted = make_weighted_setting();
  CHECK(load_bids(kFixtures + "/weighted_bids.json", weighted) == weighted_truthful_values());
  CorrelationGraph g = load_graph(kFixtures + "/weighted_graph.json", 3);
  CHECK(g.d == weighted_example_graph().d);

  Setting poa = make_poa_setting(10, rat(1, 2), rat(1, 4));
  CHECK(load_bids(kFixtures + "/poa_values.json", poa) ==
        poa_truthful_values(10, rat(1, 2), rat(1, 4)));
  CHECK(load_bids(kFixtures + "/poa_eq_bids.json", poa) ==
        poa_equilibrium_bids(10, rat(1, 2), rat(1, 4)));
}

TEST_CASE("floats and malformed rows are rejected with pointed messages") {
  Json j = setting_to_json(make_tradeoff_setting(rat(1, 10)));
  j["distribution"][0][0] = 0.5;  // bare float
  CHECK_THROWS_AS(setting_from_json(j), ValidationError);

  Json k = setting_to_json(make_tradeoff_setting(rat(1, 10)));
  k["distribution"][1] = Json::array({"1"});  // short row
  try {
    setting_from_json(k);
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }

  Json bad_sum = setting_to_json(make_tradeoff_setting(rat(1, 10)));
  bad_sum["distribution"][1] = Json::array({"1/3", "1/3"});
  CHECK_THROWS_AS(setting_from_json(bad_sum), ValidationError);

  Json dup_cost = setting_to_json(make_tradeoff_setting(rat(1, 10)));
  dup_cost["actions"][1]["cost"] = "0";
  CHECK_THROWS_AS(setting_from_json(dup_cost), ValidationError);
}

TEST_CASE("bids are validated against their domains at ingestion") {
  Setting s = make_weighted_setting();
  Json ok;
  ok["bids"] = Json::array({Json::array({"11", "13"}), Json::array({"12", "14"}),
                            Json::array({"10", "11"})});
  CHECK(bids_from_json(ok, s).bids[1][1] == Rat(14));

  Json outside = ok;
  outside["bids"][2][0] = "9";  // below the box
  CHECK_THROWS_AS(bids_from_json(outside, s), ValidationError);

  Json short_row = ok;
  short_row["bids"][0] = Json::array({"11"});
  CHECK_THROWS_AS(bids_from_json(short_row, s), ValidationError);
}

TEST_CASE("graphs are validated at ingestion") {
  Json bad;
  bad["graph"] = Json::array({Json::array({"0", "1"}), Json::array({"1/2", "0"})});
  CHECK_THROWS_AS(graph_from_json(bad, 2), ValidationError);
  Json good;
  good["graph"] = Json::array({Json::array({"0", "1"}), Json::array({"1", "0"})});
  CHECK_NOTHROW(graph_from_json(good, 2));
}

TEST_CASE("example factories enforce the parameter ranges") {
  CHECK_THROWS_AS(make_poa_setting(3, rat(1, 2), rat(1, 4)), ValidationError);
  CHECK_THROWS_AS(make_poa_setting(5, rat(1, 4), rat(1, 2)), ValidationError);  // eps > gamma
  CHECK_THROWS_AS(make_pos_setting(3, rat(1, 2), rat(1, 12)), ValidationError);  // gamma >= 1/q
  CHECK_THROWS_AS(make_pos_setting(3, rat(1, 4), rat(1, 2)), ValidationError);   // eps too big
  CHECK_THROWS_AS(make_tradeoff_setting(Rat(0)), ValidationError);
  CHECK_NOTHROW(make_pos_setting(2, rat(1, 3), rat(1, 6)));
}

TEST_CASE("polytope domains parse, validate, and reject empties") {
  Json j;
  j["actions"] = Json::array({Json{{"name", "a1"}, {"cost", "0"}}});
  j["outcomes"] = Json::array({"o1", "o2"});
  j["distribution"] = Json::array({Json::array({"1/2", "1/2"})});
  Json domain;
  domain["type"] = "polytope";
  domain["constraints"] =
      Json::array({Json{{"coeffs", Json::array({"1", "1"})}, {"rhs", "5"}}});
  j["principals"] = Json::array({Json{{"name", "p1"}, {"domain", domain}}});
  Setting s = setting_from_json(j);
  CHECK(s.domains[0].kind() == ValuationDomain::Kind::Polytope);
  CHECK(s.domains[0].contains({Rat(2), Rat(3)}));
  CHECK_FALSE(s.domains[0].contains({Rat(3), Rat(3)}));

  j["principals"][0]["domain"]["constraints"][0]["rhs"] = "-1";  // empty against x >= 0
  CHECK_THROWS_AS(setting_from_json(j), ValidationError);
}
