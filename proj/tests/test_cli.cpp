#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "iivcg/io.hpp"

using namespace iivcg;

namespace {

const std::string kCli = IIVCG_CLI_PATH;
const std::string kFixtures = IIVCG_FIXTURES;

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run(const std::string& args) {
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/iivcg_cli_test_") + name;
}

}  // namespace

TEST_CASE("check exit codes follow the contract") {
  CHECK(run("check " + kFixtures + "/poa_example.json").exit_code == 0);
  CHECK(run("check " + kFixtures + "/tradeoff.json").exit_code == 3);
  CHECK(run("check " + kFixtures + "/tradeoff.json --strict-eps 1/64").exit_code == 3);
  CHECK(run("check " + kFixtures + "/pos_example.json --strict-eps 1/64 --json").exit_code == 0);
  CHECK(run("check /nonexistent.json").exit_code == 2);
  CHECK(run("check").exit_code == 1);    // missing argument
  CHECK(run("frobnicate x").exit_code == 1);
}

TEST_CASE("malformed distribution rows are reported with their index") {
  Json j = setting_to_json(make_tradeoff_setting(rat(1, 10)));
  j["distribution"][1] = Json::array({"1/3", "1/3"});
  std::string path = temp_path("bad_setting.json");
  std::ofstream(path) << j.dump();
  std::string cmd = kCli + " check " + path + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(out.find("row 1") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("pay emits exact rationals in structured mode") {
  auto res = run("pay " + kFixtures + "/weighted_example.json --bids " + kFixtures +
                 "/weighted_bids.json --outcome o2 --contract weighted --graph " + kFixtures +
                 "/weighted_graph.json --json");
  CHECK(res.exit_code == 0);
  Json j = Json::parse(res.out);
  CHECK(j["payments"][0]["exact"] == "21/10");
  CHECK(j["payments"][0]["approx"] == "2.1");

  // weighted without a graph is a validation error
  CHECK(run("pay " + kFixtures + "/weighted_example.json --bids " + kFixtures +
            "/weighted_bids.json --outcome o2 --contract weighted")
            .exit_code == 2);
  // unknown outcome
  CHECK(run("pay " + kFixtures + "/weighted_example.json --bids " + kFixtures +
            "/weighted_bids.json --outcome o9 --contract auction")
            .exit_code == 2);
}

TEST_CASE("pay reports impossibility with exit 3") {
  std::string bids = temp_path("tradeoff_bids.json");
  std::ofstream(bids) << R"({"bids":[["0","3/10"]]})";
  auto res = run("pay " + kFixtures + "/tradeoff.json --bids " + bids +
                 " --outcome o1 --contract alg1 --json");
  CHECK(res.exit_code == 3);
  Json j = Json::parse(res.out);
  CHECK(j["verdict"] == "impossible");
  CHECK(j["witness"]["k"] == "1/5");
  std::remove(bids.c_str());
}

TEST_CASE("audit exit codes distinguish pass from failure") {
  CHECK(run("audit " + kFixtures + "/pos_example.json --contract alg1 --grid 3 --random 2")
            .exit_code == 0);
  CHECK(run("audit " + kFixtures + "/tradeoff.json --contract auction --grid 3 --random 2")
            .exit_code == 4);
  auto fp = run("audit " + kFixtures + "/pos_example.json --contract fp --grid 3 --random 2 --json");
  CHECK(fp.exit_code == 4);
  Json j = Json::parse(fp.out);
  CHECK(j["properties"]["truthful"]["pass"] == false);
  CHECK(j["properties"]["ll"]["pass"] == true);
}

TEST_CASE("structured audit output is byte-identical across runs") {
  std::string args = "audit " + kFixtures +
                     "/weighted_example.json --contract weighted --graph " + kFixtures +
                     "/weighted_graph.json --grid 3 --random 4 --seed 5 --json";
  auto a = run(args);
  auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("example emits parseable settings that round-trip") {
  std::string path = temp_path("pos_setting.json");
  CHECK(run("example pos --q 4 --gamma 1/5 --eps 1/20 -o " + path).exit_code == 0);
  Setting s = load_setting(path);
  CHECK(s.num_actions() == 4);
  CHECK(s.cost(0) == 0);
  std::remove(path.c_str());

  // out-of-range parameters are rejected
  CHECK(run("example pos --q 3 --gamma 1/2 --eps 1/12 -o " + path).exit_code == 2);
  CHECK(run("example nosuch -o " + path).exit_code == 2);
}

TEST_CASE("firstprice subcommands wire through") {
  CHECK(run("firstprice check " + kFixtures + "/poa_n4.json --values " + kFixtures +
            "/poa_n4_values.json --bids " + kFixtures + "/poa_n4_eq_bids.json --random 8")
            .exit_code == 0);
  auto poa = run("firstprice poa " + kFixtures + "/poa_example.json --values " + kFixtures +
                 "/poa_values.json --bids " + kFixtures + "/poa_eq_bids.json --random 8 --json");
  CHECK(poa.exit_code == 0);
  CHECK(Json::parse(poa.out)["ratio"] == "1/8");
  auto pos = run("firstprice pos " + kFixtures + "/pos_example.json --values " + kFixtures +
                 "/pos_values.json --grid 20 --bound 8/9 --json");
  CHECK(pos.exit_code == 0);
  Json j = Json::parse(pos.out);
  CHECK(j["within_bound"] == true);

  // truthful values over the eq bids of the anarchy fixture: deviations exist
  // when the bids are perturbed upward
  std::string bids = temp_path("poa_bad_bids.json");
  Setting s = make_poa_setting(4, rat(1, 2), rat(1, 4));
  BidProfile bad = poa_equilibrium_bids(4, rat(1, 2), rat(1, 4));
  bad.bids[0][2] = Rat(2);
  std::ofstream(bids) << bids_to_json(bad).dump();
  CHECK(run("firstprice check " + kFixtures + "/poa_n4.json --values " + kFixtures +
            "/poa_n4_values.json --bids " + bids + " --random 8")
            .exit_code == 4);
  std::remove(bids.c_str());
}
