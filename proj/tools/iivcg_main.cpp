#include <CLI11.hpp>
#include <iostream>

#include "iivcg/audit.hpp"
#include "iivcg/engine.hpp"
#include "iivcg/firstprice.hpp"
#include "iivcg/io.hpp"

namespace {

using namespace iivcg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitImpossible = 3;
constexpr int kExitAuditFail = 4;

std::string render(const Rat& r) { return to_fraction(r) + " (= " + to_decimal(r) + ")"; }

Json profile_json(const BidProfile& profile) {
  Json rows = Json::array();
  for (const auto& bid : profile.bids) {
    Json row = Json::array();
    for (const auto& x : bid) row.push_back(to_fraction(x));
    rows.push_back(row);
  }
  return rows;
}

Json witness_json(const Setting& s, const ImpossibleWitness& w) {
  Json j;
  j["action"] = s.actions[w.action].name;
  j["profile"] = profile_json(w.profile);
  j["k"] = to_fraction(w.k);
  Json bounds = Json::array();
  for (const auto& b : w.m_bounds) bounds.push_back(to_fraction(b));
  j["m_bounds"] = bounds;
  j["sum_m"] = to_fraction(w.sum_m);
  return j;
}

void print_witness(const Setting& s, const ImpossibleWitness& w) {
  std::cout << "  witness action: " << s.actions[w.action].name << "\n";
  std::cout << "  witness profile:\n";
  for (size_t ell = 0; ell < w.profile.size(); ++ell) {
    std::cout << "    p" << ell + 1 << ":";
    for (const auto& x : w.profile.bids[ell]) std::cout << " " << to_fraction(x);
    std::cout << "\n";
  }
  std::cout << "  incentive cost k = " << render(w.k) << "\n";
  std::cout << "  payment cap sum  = " << render(w.sum_m) << "  (k exceeds the cap)\n";
}

struct CheckArgs {
  std::string setting_path;
  std::string strict_eps;
  bool json = false;
};

int run_check(const CheckArgs& args) {
  Setting s = load_setting(args.setting_path);
  ExistenceOptions opts;
  if (!args.strict_eps.empty()) opts.strict_eps = parse_rat(args.strict_eps);
  Verdict verdict = contract_exists(s, opts);
  if (args.json) {
    Json j;
    j["verdict"] = verdict.possible ? "possible" : "impossible";
    if (verdict.witness) j["witness"] = witness_json(s, *verdict.witness);
    std::cout << j.dump(2) << "\n";
  } else if (verdict.possible) {
    std::cout << "Possible: a limited-liability, individually-rational contract exists.\n";
  } else {
    std::cout << "Impossible: no contract in the family satisfies both properties.\n";
    print_witness(s, *verdict.witness);
  }
  return verdict.possible ? kExitOk : kExitImpossible;
}

struct PayArgs {
  std::string setting_path, bids_path, outcome, contract, graph_path, strict_eps;
  bool json = false;
};

int run_pay(const PayArgs& args) {
  Setting s = load_setting(args.setting_path);
  BidProfile bids = load_bids(args.bids_path, s);
  auto outcome = s.outcome_index(args.outcome);
  if (!outcome) throw ValidationError("unknown outcome " + args.outcome);

  PaymentMatrix payments;
  if (args.contract == "alg1") {
    auto out = algorithmic_payments(s, bids);
    if (auto* witness = std::get_if<ImpossibleWitness>(&out)) {
      if (args.json) {
        Json j;
        j["verdict"] = "impossible";
        j["witness"] = witness_json(s, *witness);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "Impossible: the requested contract does not exist for this setting.\n";
        print_witness(s, *witness);
      }
      return kExitImpossible;
    }
    payments = std::get<Alg1Contract>(out).payments;
  } else if (args.contract == "auction") {
    payments = auction_inspired_payments(s, bids);
  } else if (args.contract == "weighted") {
    if (args.graph_path.empty())
      throw ValidationError("--graph is required for the weighted contract");
    CorrelationGraph g = load_graph(args.graph_path, s.num_principals());
    payments = weighted_payments(s, g, bids);
  } else {
    throw ValidationError("unknown contract " + args.contract);
  }

  if (args.json) {
    Json j;
    j["contract"] = args.contract;
    j["outcome"] = args.outcome;
    Json rows = Json::array();
    for (size_t ell = 0; ell < payments.size(); ++ell) {
      Json row;
      row["principal"] = "p" + std::to_string(ell + 1);
      row["exact"] = to_fraction(payments[ell][*outcome]);
      row["approx"] = to_decimal(payments[ell][*outcome]);
      rows.push_back(row);
    }
    j["payments"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "payments for outcome " << args.outcome << " under " << args.contract << ":\n";
    for (size_t ell = 0; ell < payments.size(); ++ell)
      std::cout << "  p" << ell + 1 << ": " << render(payments[ell][*outcome]) << "\n";
  }
  return kExitOk;
}

struct AuditArgs {
  std::string setting_path, contract = "alg1", graph_path, bound;
  unsigned grid = 5;
  unsigned random_points = 32;
  size_t max_profiles = 256;
  uint64_t seed = 0;
  bool serial = false;
  bool json = false;
};

Json property_json(const Setting& s, const PropertyResult& r) {
  Json j;
  j["pass"] = r.pass;
  j["checks"] = r.checks;
  if (r.counterexample) {
    Json ce;
    ce["what"] = r.counterexample->what;
    ce["profile"] = profile_json(r.counterexample->profile);
    if (r.counterexample->principal)
      ce["principal"] = "p" + std::to_string(*r.counterexample->principal + 1);
    if (r.counterexample->outcome) ce["outcome"] = s.outcomes[*r.counterexample->outcome];
    if (r.counterexample->deviation) {
      Json dev = Json::array();
      for (const auto& x : *r.counterexample->deviation) dev.push_back(to_fraction(x));
      ce["deviation"] = dev;
    }
    ce["lhs"] = to_fraction(r.counterexample->lhs);
    ce["rhs"] = to_fraction(r.counterexample->rhs);
    j["counterexample"] = ce;
  }
  return j;
}

void print_property(const Setting& s, const std::string& name, const PropertyResult& r) {
  std::cout << "  " << name << ": " << (r.pass ? "pass" : "FAIL") << " (" << r.checks
            << " checks)\n";
  if (r.counterexample) {
    const auto& ce = *r.counterexample;
    std::cout << "    " << ce.what;
    if (ce.principal) std::cout << ", principal p" << *ce.principal + 1;
    if (ce.outcome) std::cout << ", outcome " << s.outcomes[*ce.outcome];
    std::cout << "\n    profile:";
    for (const auto& bid : ce.profile.bids) {
      std::cout << " [";
      for (size_t o = 0; o < bid.size(); ++o) std::cout << (o ? " " : "") << to_fraction(bid[o]);
      std::cout << "]";
    }
    std::cout << "\n";
    if (ce.deviation) {
      std::cout << "    deviation: [";
      for (size_t o = 0; o < ce.deviation->size(); ++o)
        std::cout << (o ? " " : "") << to_fraction((*ce.deviation)[o]);
      std::cout << "]\n";
    }
  }
}

int run_audit_cmd(const AuditArgs& args) {
  Setting s = load_setting(args.setting_path);
  ContractKind kind;
  if (args.contract == "alg1") kind = ContractKind::Algorithmic;
  else if (args.contract == "auction") kind = ContractKind::AuctionInspired;
  else if (args.contract == "weighted") kind = ContractKind::Weighted;
  else if (args.contract == "fp") kind = ContractKind::FirstPrice;
  else throw ValidationError("unknown contract " + args.contract);

  AuditOptions opts;
  opts.grid.resolution = args.grid;
  opts.grid.random_points = args.random_points;
  opts.grid.max_profiles = args.max_profiles;
  opts.grid.seed = args.seed;
  if (!args.bound.empty()) opts.grid.truncation = parse_rat(args.bound);
  opts.parallel = !args.serial;
  if (kind == ContractKind::Weighted && !args.graph_path.empty())
    opts.graph = load_graph(args.graph_path, s.num_principals());

  AuditReport report = run_audit(s, kind, opts);

  if (args.json) {
    Json j;
    j["contract"] = report.contract;
    Json grid;
    grid["profiles"] = report.grid.num_profiles;
    grid["resolution"] = report.grid.resolution;
    grid["seed"] = report.grid.seed;
    grid["truncation"] = to_fraction(report.grid.truncation);
    grid["full_product"] = report.grid.full_product;
    Json cands = Json::array();
    for (auto c : report.grid.candidates_per_principal) cands.push_back(c);
    grid["candidates_per_principal"] = cands;
    j["grid"] = grid;
    Json props;
    props["truthful"] = property_json(s, report.truthful);
    props["ir"] = property_json(s, report.ir);
    props["ll"] = property_json(s, report.ll);
    props["aggregate_ll"] = property_json(s, report.aggregate_ll);
    props["efficiency"] = property_json(s, report.efficiency);
    if (report.identity) props["expected_payment_identity"] = property_json(s, *report.identity);
    j["properties"] = props;
    j["all_pass"] = report.all_pass();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "audit of contract " << report.contract << " on " << args.setting_path << "\n";
    std::cout << "  grid: " << report.grid.num_profiles << " profiles, resolution "
              << report.grid.resolution << ", seed " << report.grid.seed << ", truncation "
              << to_fraction(report.grid.truncation)
              << (report.grid.full_product ? ", full product" : ", sampled") << "\n";
    print_property(s, "truthful", report.truthful);
    print_property(s, "ir", report.ir);
    print_property(s, "ll", report.ll);
    print_property(s, "aggregate-ll", report.aggregate_ll);
    print_property(s, "efficiency", report.efficiency);
    if (report.identity) print_property(s, "expected-payment identity", *report.identity);
    std::cout << (report.all_pass() ? "ALL PASS" : "FAILURES FOUND") << "\n";
  }
  return report.all_pass() ? kExitOk : kExitAuditFail;
}

struct ExampleArgs {
  std::string name;
  std::string out, bids_out, eq_bids_out, graph_out;
  unsigned n = 10;
  long q = 3;
  std::string gamma, eps;
};

void write_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
}

int run_example(const ExampleArgs& args) {
  Setting s;
  std::optional<BidProfile> values;
  std::optional<BidProfile> eq_bids;
  std::optional<CorrelationGraph> graph;
  if (args.name == "poa") {
    Rat gamma = parse_rat(args.gamma.empty() ? "1/2" : args.gamma);
    Rat eps = parse_rat(args.eps.empty() ? "1/4" : args.eps);
    s = make_poa_setting(args.n, gamma, eps);
    values = poa_truthful_values(args.n, gamma, eps);
    eq_bids = poa_equilibrium_bids(args.n, gamma, eps);
  } else if (args.name == "pos") {
    Rat gamma = parse_rat(args.gamma.empty() ? "1/4" : args.gamma);
    Rat eps = parse_rat(args.eps.empty() ? "1/12" : args.eps);
    s = make_pos_setting(args.q, gamma, eps);
    values = BidProfile{{pos_truthful_value(args.q, gamma)}};
  } else if (args.name == "tradeoff") {
    Rat eps = parse_rat(args.eps.empty() ? "1/10" : args.eps);
    s = make_tradeoff_setting(eps);
  } else if (args.name == "weighted") {
    s = make_weighted_setting();
    values = weighted_truthful_values();
    graph = weighted_example_graph();
  } else {
    throw ValidationError("unknown example " + args.name +
                          " (expected poa, pos, tradeoff, or weighted)");
  }

  if (args.out.empty()) {
    std::cout << setting_to_json(s).dump(2) << "\n";
  } else {
    save_setting(s, args.out);
    std::cout << "wrote " << args.out << "\n";
  }
  if (!args.bids_out.empty()) {
    if (!values) throw ValidationError("example " + args.name + " has no bundled valuations");
    write_json_file(bids_to_json(*values), args.bids_out);
  }
  if (!args.eq_bids_out.empty()) {
    if (!eq_bids) throw ValidationError("example " + args.name + " has no bundled equilibrium");
    write_json_file(bids_to_json(*eq_bids), args.eq_bids_out);
  }
  if (!args.graph_out.empty()) {
    if (!graph) throw ValidationError("example " + args.name + " has no bundled graph");
    write_json_file(graph_to_json(*graph), args.graph_out);
  }
  return kExitOk;
}

struct FpArgs {
  std::string setting_path, values_path, bids_path, bound;
  unsigned grid = 9;
  unsigned random_points = 32;
  uint64_t seed = 0;
  size_t min_action = 2;  // 1-based action index
  bool json = false;
};

GridSpec fp_grid_spec(const FpArgs& args) {
  GridSpec spec;
  spec.resolution = args.grid;
  spec.random_points = args.random_points;
  spec.seed = args.seed;
  return spec;
}

int run_fp_check(const FpArgs& args) {
  Setting s = load_setting(args.setting_path);
  BidProfile values = load_bids(args.values_path, s);
  BidProfile bids = load_bids(args.bids_path, s);
  DeviationGrid grid = deviation_grid(s, bids, fp_grid_spec(args));
  auto dev = find_profitable_deviation(s, values, bids, grid);
  if (args.json) {
    Json j;
    j["equilibrium"] = !dev.has_value();
    if (dev) {
      Json d;
      d["principal"] = "p" + std::to_string(dev->principal + 1);
      Json bid = Json::array();
      for (const auto& x : dev->bid) bid.push_back(to_fraction(x));
      d["bid"] = bid;
      d["gain"] = to_fraction(dev->gain);
      j["deviation"] = d;
    }
    std::cout << j.dump(2) << "\n";
  } else if (dev) {
    std::cout << "deviation found: principal p" << dev->principal + 1 << " gains "
              << render(dev->gain) << " by bidding [";
    for (size_t o = 0; o < dev->bid.size(); ++o)
      std::cout << (o ? " " : "") << to_fraction(dev->bid[o]);
    std::cout << "]\n";
  } else {
    std::cout << "equilibrium relative to the deviation grid (not a proof over all bids)\n";
  }
  return dev ? kExitAuditFail : kExitOk;
}

int run_fp_poa(const FpArgs& args) {
  Setting s = load_setting(args.setting_path);
  BidProfile values = load_bids(args.values_path, s);
  BidProfile bids = load_bids(args.bids_path, s);
  DeviationGrid grid = deviation_grid(s, bids, fp_grid_spec(args));
  PoaReport report = price_of_anarchy(s, values, bids, grid);
  if (args.json) {
    Json j;
    j["eq_action"] = s.actions[report.eq_action].name;
    j["opt_action"] = s.actions[report.opt_action].name;
    j["eq_welfare"] = to_fraction(report.eq_welfare);
    j["opt_welfare"] = to_fraction(report.opt_welfare);
    j["ratio"] = to_fraction(report.ratio);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "equilibrium action:  " << s.actions[report.eq_action].name << " with welfare "
              << render(report.eq_welfare) << "\n";
    std::cout << "optimal action:      " << s.actions[report.opt_action].name << " with welfare "
              << render(report.opt_welfare) << "\n";
    std::cout << "welfare ratio:       " << render(report.ratio) << "\n";
  }
  return kExitOk;
}

int run_fp_pos(const FpArgs& args) {
  Setting s = load_setting(args.setting_path);
  BidProfile values = load_bids(args.values_path, s);
  if (s.num_principals() != 1)
    throw ValidationError("the utility scan expects a single-principal setting");
  if (args.min_action < 1 || args.min_action > s.num_actions())
    throw ValidationError("--min-action out of range");
  auto candidates = domain_candidates(s, 0, fp_grid_spec(args));
  UtilitySlice scan = max_fp_utility(s, values.bids[0], candidates, args.min_action - 1);

  bool bound_ok = true;
  std::optional<Rat> bound;
  if (!args.bound.empty()) {
    bound = parse_rat(args.bound);
    bound_ok = !scan.max_utility || *scan.max_utility <= *bound;
  }
  if (args.json) {
    Json j;
    j["candidates"] = candidates.size();
    j["slice_size"] = scan.slice_size;
    if (scan.max_utility) {
      j["max_utility"] = to_fraction(*scan.max_utility);
      Json bid = Json::array();
      for (const auto& x : *scan.argmax) bid.push_back(to_fraction(x));
      j["argmax_bid"] = bid;
    }
    if (bound) {
      j["bound"] = to_fraction(*bound);
      j["within_bound"] = bound_ok;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "bids scanned: " << candidates.size() << ", inducing action >= a"
              << args.min_action << ": " << scan.slice_size << "\n";
    if (scan.max_utility)
      std::cout << "max principal utility on the slice: " << render(*scan.max_utility) << "\n";
    else
      std::cout << "slice is empty; the bound holds vacuously\n";
    if (bound)
      std::cout << "bound " << render(*bound) << ": " << (bound_ok ? "holds" : "VIOLATED")
                << "\n";
  }
  return bound_ok ? kExitOk : kExitAuditFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "iivcg: exact-arithmetic engine for common agency contracts.\n"
      "Decides whether a limited-liability, individually-rational contract exists,\n"
      "computes payments for the algorithmic/auction/weighted families, audits any\n"
      "of them by brute force, and analyzes the first-price game."};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Decide contract existence for a setting");
  check->add_option("setting", check_args.setting_path, "setting file")->required();
  check->add_option("--strict-eps", check_args.strict_eps,
                    "shift for strict action-region constraints (rational, default 1/2^20)");
  check->add_flag("--json", check_args.json, "structured output");

  PayArgs pay_args;
  auto* pay = app.add_subcommand("pay", "Compute per-principal payments at a bid profile");
  pay->add_option("setting", pay_args.setting_path, "setting file")->required();
  pay->add_option("--bids", pay_args.bids_path, "bid file")->required();
  pay->add_option("--outcome", pay_args.outcome, "realized outcome name")->required();
  pay->add_option("--contract", pay_args.contract, "alg1|auction|weighted")->required();
  pay->add_option("--graph", pay_args.graph_path, "correlation graph file (weighted)");
  pay->add_option("--strict-eps", pay_args.strict_eps,
                  "accepted for interface parity; only the existence decision uses it");
  pay->add_flag("--json", pay_args.json, "structured output");

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "Brute-force audit of a contract on a grid");
  audit->add_option("setting", audit_args.setting_path, "setting file")->required();
  audit->add_option("--contract", audit_args.contract, "alg1|auction|weighted|fp");
  audit->add_option("--graph", audit_args.graph_path,
                    "correlation graph (weighted; default: complete uniform)");
  audit->add_option("--grid", audit_args.grid, "lattice points per dimension (default 5)");
  audit->add_option("--bound", audit_args.bound, "truncation bound for unbounded domains");
  audit->add_option("--random", audit_args.random_points, "random samples per principal");
  audit->add_option("--max-profiles", audit_args.max_profiles, "profile grid cap");
  audit->add_option("--seed", audit_args.seed, "sampling seed")->envname("IIVCG_SEED");
  audit->add_flag("--serial", audit_args.serial, "disable the parallel sweep");
  audit->add_flag("--json", audit_args.json, "structured output");

  ExampleArgs example_args;
  auto* example = app.add_subcommand("example", "Emit a bundled parameterized setting");
  example->add_option("name", example_args.name, "poa|pos|tradeoff|weighted")->required();
  example->add_option("--n", example_args.n, "number of principals (poa)");
  example->add_option("--q", example_args.q, "number of actions (pos)");
  example->add_option("--gamma", example_args.gamma, "gamma parameter (rational)");
  example->add_option("--eps", example_args.eps, "eps parameter (rational)");
  example->add_option("-o,--out", example_args.out, "setting output path (default: stdout)");
  example->add_option("--bids-out", example_args.bids_out, "also write the truthful values");
  example->add_option("--eq-bids-out", example_args.eq_bids_out,
                      "also write the equilibrium bid profile (poa)");
  example->add_option("--graph-out", example_args.graph_out, "also write the graph (weighted)");

  FpArgs fp_args;
  auto* fp = app.add_subcommand("firstprice", "First-price contract game analysis");
  fp->require_subcommand(1);
  auto* fp_check = fp->add_subcommand("check", "Grid equilibrium check of a bid profile");
  auto* fp_poa = fp->add_subcommand("poa", "Equilibrium vs optimal welfare ratio");
  auto* fp_pos = fp->add_subcommand("pos", "Max utility over bids inducing costly actions");
  for (auto* sub : {fp_check, fp_poa, fp_pos}) {
    sub->add_option("setting", fp_args.setting_path, "setting file")->required();
    sub->add_option("--values", fp_args.values_path, "true valuation file")->required();
    sub->add_option("--grid", fp_args.grid, "lattice points per dimension (default 9)");
    sub->add_option("--random", fp_args.random_points, "random samples per principal");
    sub->add_option("--seed", fp_args.seed, "sampling seed")->envname("IIVCG_SEED");
    sub->add_flag("--json", fp_args.json, "structured output");
  }
  for (auto* sub : {fp_check, fp_poa})
    sub->add_option("--bids", fp_args.bids_path, "bid profile to test")->required();
  fp_pos->add_option("--min-action", fp_args.min_action,
                     "smallest induced action index in the slice (1-based, default 2)");
  fp_pos->add_option("--bound", fp_args.bound, "utility bound to verify (rational)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) return run_check(check_args);
    if (*pay) return run_pay(pay_args);
    if (*audit) return run_audit_cmd(audit_args);
    if (*example) return run_example(example_args);
    if (*fp_check) return run_fp_check(fp_args);
    if (*fp_poa) return run_fp_poa(fp_args);
    if (*fp_pos) return run_fp_pos(fp_args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
