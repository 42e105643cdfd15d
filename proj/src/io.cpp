#include "iivcg/io.hpp"

#include <fstream>

#include "iivcg/lp.hpp"

namespace iivcg {

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<int64_t>()));
  if (j.is_number_unsigned()) return Rat(static_cast<unsigned long>(j.get<uint64_t>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_float())
    throw ValidationError("non-integer numbers must be quoted strings (got " + j.dump() + ")");
  throw ValidationError("expected a rational, got " + j.dump());
}

Json rat_to_json(const Rat& value) { return to_fraction(value); }

namespace {

std::vector<Rat> rat_vector(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of rationals");
  std::vector<Rat> out;
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}

Json rat_vector_to_json(const std::vector<Rat>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rat_to_json(r));
  return out;
}

ValuationDomain domain_from_json(const Json& j, size_t m) {
  if (!j.is_object() || !j.contains("type"))
    throw ValidationError("domain needs a \"type\" field");
  std::string type = j.at("type").get<std::string>();
  if (type == "box") {
    std::vector<Rat> lower = rat_vector(j.at("lower"));
    std::vector<std::optional<Rat>> upper(lower.size());
    if (j.contains("upper")) {
      const Json& u = j.at("upper");
      if (!u.is_array() || u.size() != lower.size())
        throw ValidationError("box upper must match lower in length");
      for (size_t i = 0; i < lower.size(); ++i)
        if (!u[i].is_null()) upper[i] = rat_from_json(u[i]);
    }
    if (lower.size() != m) throw ValidationError("box domain has wrong dimension");
    return ValuationDomain::box(std::move(lower), std::move(upper));
  }
  if (type == "polytope") {
    std::vector<HalfSpace> rows;
    for (const auto& c : j.at("constraints"))
      rows.push_back({rat_vector(c.at("coeffs")), rat_from_json(c.at("rhs"))});
    auto d = ValuationDomain::polytope(m, std::move(rows));
    if (!domain_feasible(d)) throw ValidationError("polytope domain is empty");
    return d;
  }
  throw ValidationError("unknown domain type " + type);
}

Json domain_to_json(const ValuationDomain& d) {
  Json out;
  if (d.kind() == ValuationDomain::Kind::Box) {
    out["type"] = "box";
    out["lower"] = rat_vector_to_json(d.lower());
    Json upper = Json::array();
    bool any = false;
    for (const auto& u : d.upper()) {
      if (u) {
        upper.push_back(rat_to_json(*u));
        any = true;
      } else {
        upper.push_back(nullptr);
      }
    }
    if (any) out["upper"] = upper;
    return out;
  }
  out["type"] = "polytope";
  Json rows = Json::array();
  for (const auto& r : d.rows()) {
    Json row;
    row["coeffs"] = rat_vector_to_json(r.coeffs);
    row["rhs"] = rat_to_json(r.rhs);
    rows.push_back(row);
  }
  out["constraints"] = rows;
  return out;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void write_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

Setting setting_from_json(const Json& j) {
  Setting s;
  if (!j.is_object()) throw ValidationError("setting file must be a JSON object");
  try {
    for (const auto& a : j.at("actions"))
      s.actions.push_back({a.at("name").get<std::string>(), rat_from_json(a.at("cost"))});
    for (const auto& o : j.at("outcomes")) s.outcomes.push_back(o.get<std::string>());
    const Json& dist = j.at("distribution");
    if (!dist.is_array() || dist.size() != s.actions.size())
      throw ValidationError("distribution must have one row per action");
    for (size_t row = 0; row < dist.size(); ++row) {
      s.dist.push_back(rat_vector(dist[row]));
      if (s.dist.back().size() != s.outcomes.size())
        throw ValidationError("distribution row " + std::to_string(row) + " has wrong length");
    }
    for (const auto& p : j.at("principals"))
      s.domains.push_back(domain_from_json(p.at("domain"), s.outcomes.size()));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed setting file: ") + e.what());
  }
  s.validate_structure();
  return s;
}

Json setting_to_json(const Setting& s) {
  Json out;
  Json actions = Json::array();
  for (const auto& a : s.actions) {
    Json e;
    e["name"] = a.name;
    e["cost"] = rat_to_json(a.cost);
    actions.push_back(e);
  }
  out["actions"] = actions;
  out["outcomes"] = s.outcomes;
  Json dist = Json::array();
  for (const auto& row : s.dist) dist.push_back(rat_vector_to_json(row));
  out["distribution"] = dist;
  Json principals = Json::array();
  for (size_t ell = 0; ell < s.num_principals(); ++ell) {
    Json p;
    p["name"] = "p" + std::to_string(ell + 1);
    p["domain"] = domain_to_json(s.domains[ell]);
    principals.push_back(p);
  }
  out["principals"] = principals;
  return out;
}

Setting load_setting(const std::string& path) { return setting_from_json(read_file(path)); }

void save_setting(const Setting& s, const std::string& path) {
  write_file(setting_to_json(s), path);
}

BidProfile bids_from_json(const Json& j, const Setting& s) {
  const Json& rows = j.is_object() && j.contains("bids") ? j.at("bids") : j;
  if (!rows.is_array() || rows.size() != s.num_principals())
    throw ValidationError("bid file must carry one row per principal");
  BidProfile profile;
  for (size_t ell = 0; ell < rows.size(); ++ell) {
    Valuation bid;
    try {
      bid = rat_vector(rows[ell]);
    } catch (const Json::exception& e) {
      throw ValidationError(std::string("malformed bid file: ") + e.what());
    }
    if (bid.size() != s.num_outcomes())
      throw ValidationError("bid row " + std::to_string(ell) + " has wrong length");
    if (!s.domains[ell].contains(bid))
      throw ValidationError("bid row " + std::to_string(ell) + " lies outside its domain");
    profile.bids.push_back(std::move(bid));
  }
  return profile;
}

Json bids_to_json(const BidProfile& profile) {
  Json rows = Json::array();
  for (const auto& bid : profile.bids) rows.push_back(rat_vector_to_json(bid));
  Json out;
  out["bids"] = rows;
  return out;
}

BidProfile load_bids(const std::string& path, const Setting& s) {
  return bids_from_json(read_file(path), s);
}

CorrelationGraph graph_from_json(const Json& j, size_t n) {
  const Json& rows = j.is_object() && j.contains("graph") ? j.at("graph") : j;
  if (!rows.is_array() || rows.size() != n)
    throw ValidationError("graph file must carry an n-by-n matrix");
  CorrelationGraph g;
  for (const auto& row : rows) {
    g.d.push_back(rat_vector(row));
    if (g.d.back().size() != n) throw ValidationError("graph row has wrong length");
  }
  g.validate();
  return g;
}

Json graph_to_json(const CorrelationGraph& g) {
  Json rows = Json::array();
  for (const auto& row : g.d) rows.push_back(rat_vector_to_json(row));
  Json out;
  out["graph"] = rows;
  return out;
}

CorrelationGraph load_graph(const std::string& path, size_t n) {
  return graph_from_json(read_file(path), n);
}

Setting make_poa_setting(size_t n, const Rat& gamma, const Rat& eps) {
  if (!(n > 3)) throw ValidationError("the anarchy fixture needs more than 3 principals");
  if (!(0 < eps && eps < gamma && gamma < 1))
    throw ValidationError("the anarchy fixture needs 0 < eps < gamma < 1");
  Setting s;
  s.actions = {{"a1", Rat(0)}, {"a2", eps}, {"a3", gamma}};
  s.outcomes = {"o1", "o2", "o3"};
  s.dist = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
  auto ray = [&](size_t axis) {
    std::vector<Rat> lower(3, Rat(0));
    std::vector<std::optional<Rat>> upper(3, Rat(0));
    upper[axis] = std::nullopt;
    return ValuationDomain::box(lower, upper);
  };
  s.domains.push_back(ray(2));
  s.domains.push_back(ray(1));
  for (size_t ell = 2; ell < n; ++ell) s.domains.push_back(ray(0));
  s.validate_structure();
  return s;
}

BidProfile poa_truthful_values(size_t n, const Rat& gamma, const Rat& eps) {
  BidProfile v;
  v.bids.push_back({Rat(0), Rat(0), 1 + gamma});
  v.bids.push_back({Rat(0), 1 + eps, Rat(0)});
  for (size_t ell = 2; ell < n; ++ell) v.bids.push_back({Rat(1), Rat(0), Rat(0)});
  return v;
}

BidProfile poa_equilibrium_bids(size_t n, const Rat& gamma, const Rat& eps) {
  BidProfile b;
  b.bids.push_back({Rat(0), Rat(0), 1 + gamma});
  b.bids.push_back({Rat(0), 1 + eps, Rat(0)});
  for (size_t ell = 2; ell < n; ++ell) b.bids.push_back({Rat(0), Rat(0), Rat(0)});
  return b;
}

Setting make_pos_setting(long q, const Rat& gamma, const Rat& eps) {
  if (q < 2) throw ValidationError("the stability fixture needs at least 2 actions");
  if (!(0 < gamma && gamma < rat(1, q)))
    throw ValidationError("the stability fixture needs 0 < gamma < 1/q");
  if (!(0 < eps && eps <= rat(1, q) - gamma))
    throw ValidationError("the stability fixture needs 0 < eps <= 1/q - gamma");
  Setting s;
  for (long i = 1; i <= q; ++i) {
    Rat cost = rat_pow(gamma, 1 - i) - Rat(i) + Rat(i - 1) * (gamma + eps);
    s.actions.push_back({"a" + std::to_string(i), cost});
  }
  s.outcomes = {"o1", "o2"};
  for (long i = 1; i <= q; ++i) {
    Rat p2 = rat_pow(gamma, q - i);
    s.dist.push_back({1 - p2, p2});
  }
  std::vector<Rat> lower(2, Rat(q));
  std::vector<std::optional<Rat>> upper(2);
  s.domains.push_back(ValuationDomain::box(lower, upper));
  s.validate_structure();
  return s;
}

Valuation pos_truthful_value(long q, const Rat& gamma) {
  return {Rat(q), Rat(q) + rat_pow(gamma, 1 - q)};
}

Setting make_tradeoff_setting(const Rat& eps) {
  if (!(eps > 0)) throw ValidationError("the tradeoff fixture needs eps > 0");
  Setting s;
  s.actions = {{"a1", Rat(0)}, {"a2", eps}};
  s.outcomes = {"o1", "o2"};
  s.dist = {{rat(1, 2), rat(1, 2)}, {Rat(0), Rat(1)}};
  std::vector<Rat> lower(2, Rat(0));
  std::vector<std::optional<Rat>> upper(2);
  s.domains.push_back(ValuationDomain::box(lower, upper));
  s.validate_structure();
  return s;
}

Setting make_weighted_setting() {
  Setting s;
  s.actions = {{"a1", Rat(0)}, {"a2", Rat(1)}};
  s.outcomes = {"o1", "o2"};
  s.dist = {{Rat(1), Rat(0)}, {rat(1, 4), rat(3, 4)}};
  for (int ell = 0; ell < 3; ++ell) {
    std::vector<Rat> lower(2, Rat(10));
    std::vector<std::optional<Rat>> upper(2, Rat(15));
    s.domains.push_back(ValuationDomain::box(lower, upper));
  }
  s.validate_structure();
  return s;
}

BidProfile weighted_truthful_values() {
  BidProfile v;
  v.bids.push_back({Rat(11), Rat(13)});
  v.bids.push_back({Rat(12), Rat(14)});
  v.bids.push_back({Rat(10), Rat(11)});
  return v;
}

CorrelationGraph weighted_example_graph() {
  // d(1,2) and d(1,3) are fixed; the remaining edges are one consistent
  // completion with unit column sums.
  CorrelationGraph g;
  g.d = {
      {Rat(0), rat(4, 5), rat(1, 2)},
      {rat(1, 2), Rat(0), rat(1, 2)},
      {rat(1, 2), rat(1, 5), Rat(0)},
  };
  g.validate();
  return g;
}

}  // namespace iivcg
