#include "smlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

namespace smlab {

namespace {

std::string pair_str(int x, int y) {
  return "{" + std::to_string(x) + "," + std::to_string(y) + "}";
}

Json mask_to_array(Mask m) { return Json(mask_elements(m)); }

}  // namespace

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw std::runtime_error("instance must be an object");
  if (!j.contains("carrier") || !j["carrier"].is_number_integer())
    throw std::runtime_error("instance needs an integer \"carrier\"");
  if (!j.contains("k") || !j["k"].is_number_integer())
    throw std::runtime_error("instance needs an integer \"k\"");
  const int m = j["carrier"].get<int>();
  const int k = j["k"].get<int>();
  if (m < 1 || m > kMaxCarrier)
    throw std::runtime_error("carrier must be between 1 and 64");
  if (k < 2) throw std::runtime_error("k must be >= 2 (got " +
                                      std::to_string(k) + ")");
  if (k > m) throw std::runtime_error("k exceeds the carrier size");
  if (!j.contains("rhos") || !j["rhos"].is_array() || j["rhos"].empty())
    throw std::runtime_error("instance needs a nonempty \"rhos\" array");

  const Carrier carrier(m);
  std::vector<Rho> rhos;
  for (std::size_t r = 0; r < j["rhos"].size(); ++r) {
    const Json& jr = j["rhos"][r];
    const std::string where = "rhos[" + std::to_string(r) + "]";
    if (!jr.is_object() || !jr.contains("range") ||
        !jr["range"].is_number_integer())
      throw std::runtime_error(where + ": needs an integer \"range\"");
    const int range = jr["range"].get<int>();
    if (range < 1) throw std::runtime_error(where + ": range must be >= 1");
    if (!jr.contains("pairs") || !jr["pairs"].is_array())
      throw std::runtime_error(where + ": needs a \"pairs\" array");

    const std::size_t pair_count =
        static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2;
    std::vector<int> values(pair_count, -1);
    for (std::size_t p = 0; p < jr["pairs"].size(); ++p) {
      const Json& jp = jr["pairs"][p];
      const std::string at = where + ".pairs[" + std::to_string(p) + "]";
      if (!jp.is_array() || jp.size() != 3)
        throw std::runtime_error(at + ": expected [x, y, value]");
      int x = jp[0].get<int>(), y = jp[1].get<int>();
      const int v = jp[2].get<int>();
      if (x == y) throw std::runtime_error(at + ": diagonal pair");
      if (x > y) std::swap(x, y);
      if (x < 0 || y >= m)
        throw std::runtime_error(at + ": pair " + pair_str(x, y) +
                                 " outside carrier");
      if (v < 0 || v >= range)
        throw std::runtime_error(at + ": value " + std::to_string(v) +
                                 " out of range (range " +
                                 std::to_string(range) + ")");
      const std::size_t idx = pair_index(x, y);
      if (values[idx] != -1)
        throw std::runtime_error(where + ": duplicate pair " + pair_str(x, y));
      values[idx] = v;
    }
    for (int y = 0; y < m; ++y)
      for (int x = 0; x < y; ++x)
        if (values[pair_index(x, y)] == -1)
          throw std::runtime_error(where + ": missing pair " + pair_str(x, y));
    rhos.emplace_back(carrier, range, std::move(values));
  }
  return Instance{GammaFamily(carrier, std::move(rhos)), k};
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["carrier"] = inst.family.carrier_size();
  j["k"] = inst.k;
  j["rhos"] = Json::array();
  for (const Rho& rho : inst.family.rhos()) {
    Json jr;
    jr["range"] = rho.range_size();
    Json pairs = Json::array();
    for (int y = 0; y < rho.carrier_size(); ++y)
      for (int x = 0; x < y; ++x) pairs.push_back(Json{x, y, rho(x, y)});
    jr["pairs"] = std::move(pairs);
    j["rhos"].push_back(std::move(jr));
  }
  return j;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j = Json::parse(in);
  return instance_from_json(j);
}

Json mapping_records(const SetMapping& f) {
  Json records = Json::array();
  std::uint64_t rank = 0;
  for_each_combination_colex(f.carrier_size(), f.arity(),
                             [&](std::span<const int> t) {
    Json rec;
    rec["tuple"] = Json(std::vector<int>(t.begin(), t.end()));
    rec["image"] = mask_to_array(f.image_at(rank++));
    records.push_back(std::move(rec));
  });
  return records;
}

Json witness_to_json(const ColoringWitness& w) {
  Json j;
  j["n"] = w.n;
  j["k"] = w.k;
  j["colors"] = w.colors;
  j["targets"] = Json(w.targets);
  Json rows = Json::array();
  std::vector<int> t(static_cast<std::size_t>(w.k));
  for (std::uint64_t rank = 0; rank < w.assignment.size(); ++rank) {
    colex_unrank(rank, w.k, t);
    Json row = Json(t);
    row.push_back(static_cast<int>(w.assignment[rank]));
    rows.push_back(std::move(row));
  }
  j["assignment"] = std::move(rows);
  return j;
}

ColoringWitness witness_from_json(const Json& j) {
  ColoringWitness w;
  w.n = j.at("n").get<int>();
  w.k = j.at("k").get<int>();
  w.colors = j.at("colors").get<int>();
  w.targets = j.at("targets").get<std::vector<int>>();
  if (w.n < 1 || w.n > kMaxCarrier || w.k < 1 || w.k > w.n)
    throw std::runtime_error("witness: need 1 <= k <= n <= 64");
  if (w.colors < 1 || static_cast<int>(w.targets.size()) != w.colors)
    throw std::runtime_error("witness: one target per color required");
  const std::uint64_t count = binomial(w.n, w.k);
  w.assignment.assign(count, 0);
  std::vector<bool> seen(count, false);
  const Json& rows = j.at("assignment");
  if (!rows.is_array())
    throw std::runtime_error("witness: assignment must be an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& row = rows[i];
    const std::string at = "assignment[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != static_cast<std::size_t>(w.k) + 1)
      throw std::runtime_error("witness: " + at + " must hold k elements and a color");
    std::vector<int> t(static_cast<std::size_t>(w.k));
    for (int p = 0; p < w.k; ++p) t[static_cast<std::size_t>(p)] = row[p].get<int>();
    std::sort(t.begin(), t.end());
    for (int p = 0; p < w.k; ++p) {
      if (t[static_cast<std::size_t>(p)] < 0 || t[static_cast<std::size_t>(p)] >= w.n)
        throw std::runtime_error("witness: " + at + " leaves the ground set");
      if (p > 0 && t[static_cast<std::size_t>(p - 1)] == t[static_cast<std::size_t>(p)])
        throw std::runtime_error("witness: " + at + " repeats an element");
    }
    const int color = row[w.k].get<int>();
    if (color < 0 || color >= w.colors)
      throw std::runtime_error("witness: " + at + " has a color out of range");
    const std::uint64_t rank = colex_rank(t);
    if (seen[rank]) throw std::runtime_error("witness: " + at + " repeats a tuple");
    seen[rank] = true;
    w.assignment[rank] = static_cast<std::uint8_t>(color);
  }
  for (std::uint64_t r = 0; r < count; ++r)
    if (!seen[r]) {
      std::vector<int> t(static_cast<std::size_t>(w.k));
      colex_unrank(r, w.k, t);
      std::string s = "witness: missing tuple {";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
      }
      throw std::runtime_error(s + "}");
    }
  return w;
}

Json tower_to_json(const TowerExpr& e) {
  using Kind = TowerExpr::Kind;
  switch (e.kind()) {
    case Kind::kLit: {
      const BigInt& v = e.literal();
      if (v <= BigInt(std::numeric_limits<std::uint64_t>::max()))
        return Json{{"lit", v.convert_to<std::uint64_t>()}};
      return Json{{"lit", v.str()}};
    }
    case Kind::kPow:
      return Json{{"pow", Json::array({tower_to_json(e.base()),
                                       tower_to_json(e.exponent())})}};
    case Kind::kProd: {
      Json kids = Json::array();
      for (const TowerExpr& kid : e.children()) kids.push_back(tower_to_json(kid));
      return Json{{"prod", std::move(kids)}};
    }
    case Kind::kSum: {
      Json kids = Json::array();
      for (const TowerExpr& kid : e.children()) kids.push_back(tower_to_json(kid));
      return Json{{"sum", std::move(kids)}};
    }
  }
  throw std::logic_error("unreachable");
}

TowerExpr tower_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1)
    throw std::runtime_error("expression nodes are single-key objects");
  if (j.contains("lit")) {
    const Json& v = j["lit"];
    if (v.is_number_unsigned()) return TowerExpr::lit(v.get<std::uint64_t>());
    if (v.is_string()) return TowerExpr::lit(BigInt(v.get<std::string>()));
    throw std::runtime_error("lit must be an unsigned number or decimal string");
  }
  if (j.contains("pow")) {
    const Json& kids = j["pow"];
    if (!kids.is_array() || kids.size() != 2)
      throw std::runtime_error("pow takes [base, exponent]");
    return TowerExpr::pow(tower_from_json(kids[0]), tower_from_json(kids[1]));
  }
  for (const char* key : {"prod", "sum"}) {
    if (!j.contains(key)) continue;
    const Json& kids = j[key];
    if (!kids.is_array()) throw std::runtime_error(std::string(key) + " takes an array");
    std::vector<TowerExpr> parts;
    parts.reserve(kids.size());
    for (const Json& kid : kids) parts.push_back(tower_from_json(kid));
    return std::string(key) == "prod" ? TowerExpr::prod(std::move(parts))
                                      : TowerExpr::sum(std::move(parts));
  }
  throw std::runtime_error("unknown expression node");
}

Json condition_to_json(const Condition& c) {
  Json j;
  j["support"] = Json(c.support());
  Json rho = Json::array();
  for (const auto& [x, y, v] : c.local_pairs()) rho.push_back(Json{x, y, v});
  j["rho"] = std::move(rho);
  return j;
}

Condition condition_from_json(const Json& j, const GammaFamily& background,
                              int k) {
  if (!j.is_object() || !j.contains("support") || !j["support"].is_array())
    throw std::runtime_error("condition needs a \"support\" array");
  std::vector<int> support = j["support"].get<std::vector<int>>();
  std::vector<std::array<int, 3>> pairs;
  if (j.contains("rho")) {
    if (!j["rho"].is_array())
      throw std::runtime_error("condition \"rho\" must be an array");
    for (std::size_t i = 0; i < j["rho"].size(); ++i) {
      const Json& row = j["rho"][i];
      if (!row.is_array() || row.size() != 3)
        throw std::runtime_error("rho[" + std::to_string(i) +
                                 "]: expected [x, y, value]");
      int x = row[0].get<int>(), y = row[1].get<int>();
      if (x > y) std::swap(x, y);
      pairs.push_back({x, y, row[2].get<int>()});
    }
  }
  return make_condition(background, k, std::move(support), pairs);
}

// ---------------------------------------------------------------------------
// CLI driver
// ---------------------------------------------------------------------------

namespace {

struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultSearchBudget;
  bool deterministic = true;
  bool json_mode = false;
};

Json doc_header(const RunConfig& cfg) {
  Json d;
  d["tool"] = "smlab";
  d["version"] = "1.0.0";
  d["command"] = cfg.command;
  d["deterministic"] = cfg.deterministic;
  return d;
}

void print_kv(std::ostream& out, const Json& j, const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      print_kv(out, value, prefix + key + ".");
    } else {
      out << prefix << key << ": " << value.dump() << "\n";
    }
  }
}

void emit(std::ostream& out, const RunConfig& cfg, const Json& doc) {
  if (cfg.json_mode) {
    out << doc.dump() << "\n";
  } else {
    print_kv(out, doc, "");
  }
}

std::string order_str(Order o) {
  switch (o) {
    case Order::kLess: return "less";
    case Order::kEqual: return "equal";
    case Order::kGreater: return "greater";
    case Order::kUnknown: return "unknown";
  }
  return "unknown";
}

Json expr_summary(const TowerExpr& e) {
  Json j;
  j["str"] = e.str();
  j["expr"] = tower_to_json(e);
  if (auto v = e.evaluate()) {
    j["value"] = v->str();
    j["digits"] = v->str().size();
  } else {
    j["value"] = nullptr;
  }
  return j;
}

std::string format_verify_name(const std::string& sub) { return "verify " + sub; }

int cmd_gen(const RunConfig& cfg, const std::string& instance_path,
            std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const SetMapping f = generate(inst.family, inst.k);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", instance_path}, {"k", inst.k},
                       {"carrier", inst.family.carrier_size()}};
  doc["result"] = Json{{"mapping", mapping_records(f)}};
  emit(out, cfg, doc);
  return 0;
}

int cmd_free(const RunConfig& cfg, const std::string& instance_path,
             int k_override, std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const int k = k_override > 0 ? k_override : inst.k;
  const FreeSearchResult r = max_free_set(inst.family, k, cfg.budget);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", instance_path},
                       {"k", k},
                       {"budget", cfg.budget}};
  doc["result"] = Json{{"max_size", r.max_size},
                       {"witness", Json(r.witness)},
                       {"nodes_explored", r.nodes_explored},
                       {"exhausted", r.exhausted}};
  emit(out, cfg, doc);
  return r.exhausted ? 0 : 2;
}

int cmd_explore(const RunConfig& cfg, const ExploreParams& params,
                std::ostream& out) {
  const std::vector<ExplorationRecord> records = explore_no_free_t(params);
  for (const ExplorationRecord& rec : records) {
    Json doc = doc_header(cfg);
    doc["sampling"] = "uniform over rho tables";
    doc["record"] = Json{{"trial", rec.trial},
                         {"seed", rec.seed},
                         {"carrier", rec.carrier},
                         {"k", rec.k},
                         {"ranges", Json(rec.ranges)},
                         {"cap", rec.cap},
                         {"target", rec.target},
                         {"cap_ok", rec.cap_ok},
                         {"filter_ok", rec.filter_ok},
                         {"max_free_observed", rec.max_free_observed},
                         {"exhausted", rec.exhausted},
                         {"nodes", rec.nodes},
                         {"found_counterexample", rec.found_counterexample}};
    if (cfg.json_mode) {
      out << doc.dump() << "\n";
    } else {
      out << "trial " << rec.trial << ": seed=" << rec.seed
          << " cap_ok=" << rec.cap_ok << " filter_ok=" << rec.filter_ok
          << " max_free=" << rec.max_free_observed
          << " exhausted=" << rec.exhausted
          << " found_counterexample=" << rec.found_counterexample << "\n";
    }
  }
  return 0;
}

int cmd_homog(const RunConfig& cfg, const std::string& instance_path,
              int target, std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const auto found =
      find_homogeneous(inst.family, inst.family.carrier().universe(), target);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", instance_path}, {"target", target}};
  Json result;
  result["found"] = found.has_value();
  if (found) result["set"] = Json(*found);
  doc["result"] = std::move(result);
  emit(out, cfg, doc);
  return 0;
}

int cmd_verify_claim4(const RunConfig& cfg, const std::string& instance_path,
                      std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const auto found =
      find_homogeneous(inst.family, inst.family.carrier().universe(), 5);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", instance_path}};
  Json result;
  result["homogeneous_found"] = found.has_value();
  bool ok = true;
  if (found) {
    std::string diag;
    ok = verify_homog5_close(inst.family, *found, &diag);
    result["set"] = Json(*found);
    result["ok"] = ok;
    if (!ok) result["diagnostic"] = diag;
  }
  doc["result"] = std::move(result);
  emit(out, cfg, doc);
  return ok ? 0 : 1;
}

int cmd_verify_claim3(const RunConfig& cfg, const std::string& instance_path,
                      std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const int m = inst.family.carrier_size();
  std::uint64_t quads = 0, checked = 0;
  bool ok = true;
  std::string diag;
  if (m >= 4) {
    for_each_combination_lex(m, 4, [&](std::span<const int> q) {
      if (!ok) return;
      ++quads;
      try {
        if (!verify_quad_close(inst.family, q, &diag)) ok = false;
        ++checked;
      } catch (const std::invalid_argument&) {
        // quad does not satisfy the case preconditions
      }
    });
  }
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", instance_path}};
  Json result;
  result["quads"] = quads;
  result["satisfying_preconditions"] = checked;
  result["ok"] = ok;
  if (!ok) result["diagnostic"] = diag;
  doc["result"] = std::move(result);
  emit(out, cfg, doc);
  return ok ? 0 : 1;
}

int cmd_verify_restriction(const RunConfig& cfg, bool equality,
                           const std::string& instance_path, int trials,
                           std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  const int m = inst.family.carrier_size();
  const int k = inst.k;
  if (m < k + 1)
    throw std::invalid_argument("carrier too small for proper subsets");
  SplitMix64 rng(cfg.seed);
  int violations = 0;
  std::string first_violation;
  for (int t = 0; t < trials; ++t) {
    const int sub_size = rng.range(std::max(k, 2), m);
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    for (int i = m - 1; i > 0; --i)
      std::swap(all[static_cast<std::size_t>(i)],
                all[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    all.resize(static_cast<std::size_t>(sub_size));
    std::sort(all.begin(), all.end());
    const RestrictedFamily restricted =
        restrict_family(inst.family, mask_of(all));
    GammaFamily small = restricted.family;
    if (!equality && rng.chance(1, 2)) {
      // The containment hypothesis allows extra members on the small side.
      SplitMix64 extra_rng(rng.next());
      small = small.with_rho(
          sample_family(small.carrier(), std::vector<int>{3}, extra_rng).rho(0));
    }
    std::string why;
    const bool pass =
        equality ? check_restriction_eq(small, inst.family, all, k, &why)
                 : check_monotonicity(small, inst.family, all, k, &why);
    if (!pass) {
      ++violations;
      if (first_violation.empty()) first_violation = why;
    }
  }
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", instance_path},
                       {"trials", trials},
                       {"seed", cfg.seed}};
  Json result;
  result["trials"] = trials;
  result["violations"] = violations;
  result["ok"] = violations == 0;
  if (violations > 0) result["diagnostic"] = first_violation;
  doc["result"] = std::move(result);
  emit(out, cfg, doc);
  return violations == 0 ? 0 : 1;
}

int cmd_verify_clubsuit(const RunConfig& cfg, const std::string& instance_path,
                        std::ostream& out) {
  const Instance inst = load_instance(instance_path);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", instance_path}, {"bound", "v+1"}};
  Json per_rho = Json::array();
  bool all_ok = true;
  for (std::size_t i = 0; i < inst.family.size(); ++i) {
    std::string diag;
    const bool ok = check_sublevel_bound(
        inst.family.rho(i), [](int v) { return static_cast<std::int64_t>(v) + 1; },
        &diag);
    Json entry;
    entry["rho"] = i;
    entry["ok"] = ok;
    if (!ok) entry["diagnostic"] = diag;
    per_rho.push_back(std::move(entry));
    all_ok = all_ok && ok;
  }
  doc["result"] = Json{{"ok", all_ok}, {"per_rho", std::move(per_rho)}};
  emit(out, cfg, doc);
  return 0;  // a failing bound is a finding, not an error
}

int cmd_arrow(const RunConfig& cfg, int n, int k,
              const std::vector<int>& targets, std::ostream& out) {
  const ArrowResult r = arrow_holds(n, k, targets, cfg.budget);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"n", n},
                       {"k", k},
                       {"targets", Json(targets)},
                       {"budget", cfg.budget}};
  Json result;
  result["nodes"] = r.nodes;
  switch (r.verdict) {
    case ArrowVerdict::kHolds:
      result["verdict"] = "holds";
      break;
    case ArrowVerdict::kFails:
      result["verdict"] = "fails";
      result["witness"] = witness_to_json(*r.witness);
      break;
    case ArrowVerdict::kInfeasible:
      result["verdict"] = "infeasible";
      break;
  }
  doc["result"] = std::move(result);
  emit(out, cfg, doc);
  return r.verdict == ArrowVerdict::kInfeasible ? 2 : 0;
}

int cmd_bounds_s_upper(const RunConfig& cfg, int n, std::ostream& out) {
  const SUpperBounds b = s_upper(n);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"n", n}};
  doc["result"] = Json{{"literal", expr_summary(b.literal)},
                       {"via_erdos_rado", expr_summary(b.via_erdos_rado)},
                       {"note",
                        "middle exponents differ: the stated chain uses "
                        "3^(2n+1), the general formula gives 3^(2n+2)"}};
  emit(out, cfg, doc);
  return 0;
}

int cmd_bounds_t_lower(const RunConfig& cfg, int n, std::ostream& out) {
  const TowerExpr e = t_lower(n);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"n", n}};
  doc["result"] =
      Json{{"bound", expr_summary(e)},
           {"strict", true},
           {"chain", "t[i+1] = least N with N -> (t[i],7)^5, t[0] = 5"}};
  emit(out, cfg, doc);
  return 0;
}

int cmd_bounds_er(const RunConfig& cfg, int k, int l, int r,
                  std::ostream& out) {
  const TowerExpr e = erdos_rado_upper(k, l, r);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"k", k}, {"l", l}, {"r", r}};
  doc["result"] = Json{{"bound", expr_summary(e)}};
  emit(out, cfg, doc);
  return 0;
}

int cmd_bounds_crossover(const RunConfig& cfg, int n_max, std::ostream& out) {
  const CrossoverTable table = crossover(n_max);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"max_n", n_max}};
  Json rows = Json::array();
  for (const CrossoverRow& row : table.rows) {
    rows.push_back(Json{{"n", row.n},
                        {"t_lower", row.t_low.str()},
                        {"s_upper_literal", row.s_up.literal.str()},
                        {"s_upper_via_erdos_rado", row.s_up.via_erdos_rado.str()},
                        {"t_vs_literal", order_str(row.t_vs_literal)},
                        {"t_vs_erdos_rado", order_str(row.t_vs_erdos_rado)}});
  }
  Json result;
  result["rows"] = std::move(rows);
  result["first_exceeds_literal"] = table.first_exceeds_literal
                                        ? Json(*table.first_exceeds_literal)
                                        : Json(nullptr);
  result["first_exceeds_erdos_rado"] =
      table.first_exceeds_erdos_rado ? Json(*table.first_exceeds_erdos_rado)
                                     : Json(nullptr);
  doc["result"] = std::move(result);
  if (cfg.json_mode) {
    out << doc.dump() << "\n";
  } else {
    out << "n | lower vs stated | lower vs formula\n";
    for (const CrossoverRow& row : table.rows)
      out << row.n << " | " << order_str(row.t_vs_literal) << " | "
          << order_str(row.t_vs_erdos_rado) << "\n";
    out << "first n with lower > stated: "
        << (table.first_exceeds_literal
                ? std::to_string(*table.first_exceeds_literal)
                : std::string("none in range"))
        << "\n";
    out << "first n with lower > formula: "
        << (table.first_exceeds_erdos_rado
                ? std::to_string(*table.first_exceeds_erdos_rado)
                : std::string("none in range"))
        << "\n";
  }
  return 0;
}

Json condition_report(const Condition& c) {
  Json j = condition_to_json(c);
  if (c.mapping()) {
    Json records = Json::array();
    const std::vector<int>& sup = c.support();
    for_each_combination_colex(static_cast<int>(sup.size()), c.k(),
                               [&](std::span<const int> idx) {
      std::vector<int> t(idx.size());
      for (std::size_t i = 0; i < idx.size(); ++i)
        t[i] = sup[static_cast<std::size_t>(idx[i])];
      records.push_back(Json{{"tuple", Json(t)},
                             {"image", mask_to_array(c.image_in_background(t))}});
    });
    j["mapping"] = std::move(records);
  }
  return j;
}

int cmd_cond_amalg(const RunConfig& cfg, const std::string& bg_path,
                   const std::string& f1, const std::string& f2,
                   std::ostream& out) {
  const Instance inst = load_instance(bg_path);
  std::ifstream in1(f1), in2(f2);
  if (!in1) throw std::runtime_error("cannot open " + f1);
  if (!in2) throw std::runtime_error("cannot open " + f2);
  const Condition p1 = condition_from_json(Json::parse(in1), inst.family, inst.k);
  const Condition p2 = condition_from_json(Json::parse(in2), inst.family, inst.k);
  const Condition q = amalgamate(p1, p2);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", bg_path}, {"left", f1}, {"right", f2}};
  doc["result"] = Json{{"condition", condition_report(q)},
                       {"extends_left", extends(q, p1)},
                       {"extends_right", extends(q, p2)}};
  emit(out, cfg, doc);
  return 0;
}

int cmd_cond_extend(const RunConfig& cfg, const std::string& bg_path,
                    const std::string& file, int point, std::ostream& out) {
  const Instance inst = load_instance(bg_path);
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  const Condition p = condition_from_json(Json::parse(in), inst.family, inst.k);
  const Condition q = extend_with_point(p, point);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", bg_path}, {"file", file}, {"point", point}};
  doc["result"] =
      Json{{"condition", condition_report(q)}, {"extends_input", extends(q, p)}};
  emit(out, cfg, doc);
  return 0;
}

int cmd_cond_chain(const RunConfig& cfg, const std::string& bg_path,
                   const std::vector<std::string>& files, std::ostream& out) {
  const Instance inst = load_instance(bg_path);
  std::vector<Condition> chain;
  chain.reserve(files.size());
  for (const std::string& f : files) {
    std::ifstream in(f);
    if (!in) throw std::runtime_error("cannot open " + f);
    chain.push_back(condition_from_json(Json::parse(in), inst.family, inst.k));
  }
  const Condition u = chain_union(chain);
  Json doc = doc_header(cfg);
  doc["params"] = Json{{"instance", bg_path}, {"files", Json(files)}};
  bool extends_all = true;
  for (const Condition& c : chain) extends_all = extends_all && extends(u, c);
  doc["result"] = Json{{"condition", condition_report(u)},
                       {"extends_all", extends_all}};
  emit(out, cfg, doc);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"finite set-mapping laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;

  const auto add_common = [&](CLI::App* sub, bool with_budget) {
    sub->add_flag("--json", cfg.json_mode, "emit one JSON document");
    sub->add_flag("--deterministic,!--no-deterministic", cfg.deterministic,
                  "pin tie-breaking (default on)");
    if (with_budget)
      sub->add_option("--budget", cfg.budget, "search node budget");
  };

  // gen
  std::string instance_path;
  CLI::App* gen = app.add_subcommand("gen", "generate a set mapping");
  gen->add_option("--instance", instance_path, "instance file")->required();
  add_common(gen, false);

  // free
  int free_k = 0;
  CLI::App* freec = app.add_subcommand("free", "maximum free set search");
  freec->add_option("--instance", instance_path, "instance file")->required();
  freec->add_option("--k", free_k, "arity override");
  add_common(freec, true);

  // explore
  ExploreParams explore_params;
  bool seed_given = false;
  CLI::App* explore = app.add_subcommand("explore", "seeded no-free-set hunt");
  explore->add_option("--target", explore_params.target, "free size hunted")
      ->required();
  explore->add_option("--cap", explore_params.cap, "image size cap")->required();
  explore
      ->add_option_function<std::uint64_t>(
          "--seed",
          [&](std::uint64_t s) {
            explore_params.seed = s;
            seed_given = true;
          },
          "master seed (required)")
      ->required();
  explore->add_option("--budget", explore_params.budget, "per-trial budget");
  explore->add_option("--trials", explore_params.trials, "instances sampled")
      ->required();
  explore->add_option("--m", explore_params.carrier, "carrier size");
  explore->add_option("--k", explore_params.k, "arity");
  explore->add_option("--ranges", explore_params.ranges, "rho ranges")
      ->delimiter(',');
  explore->add_flag("--inside-only", explore_params.inside_only,
                    "keep only inside-(x1,x2) mappings");
  explore->add_flag("--json", cfg.json_mode, "emit JSON lines");
  explore->add_flag("--deterministic,!--no-deterministic", cfg.deterministic,
                    "pin tie-breaking (default on)");

  // homog
  int homog_target = 5;
  CLI::App* homog = app.add_subcommand("homog", "homogeneous subset search");
  homog->add_option("--instance", instance_path, "instance file")->required();
  homog->add_option("--target", homog_target, "subset size");
  add_common(homog, false);

  // verify
  CLI::App* verify = app.add_subcommand("verify", "theorem-shaped checks");
  verify->require_subcommand(1);
  int verify_trials = 100;
  CLI::App* v_claim4 = verify->add_subcommand(
      "claim4", "homogeneous five-set capture");
  v_claim4->add_option("--instance", instance_path, "instance file")->required();
  add_common(v_claim4, false);
  CLI::App* v_claim3 = verify->add_subcommand(
      "claim3", "case-homogeneous quad capture");
  v_claim3->add_option("--instance", instance_path, "instance file")->required();
  add_common(v_claim3, false);
  CLI::App* v_l23 = verify->add_subcommand(
      "lemma23", "restriction containment on random subsets");
  v_l23->add_option("--instance", instance_path, "instance file")->required();
  v_l23->add_option("--trials", verify_trials, "random subsets");
  v_l23->add_option("--seed", cfg.seed, "seed");
  add_common(v_l23, false);
  CLI::App* v_l24 = verify->add_subcommand(
      "lemma24", "restriction equality on random subsets");
  v_l24->add_option("--instance", instance_path, "instance file")->required();
  v_l24->add_option("--trials", verify_trials, "random subsets");
  v_l24->add_option("--seed", cfg.seed, "seed");
  add_common(v_l24, false);
  CLI::App* v_club = verify->add_subcommand(
      "clubsuit", "sublevel counting bound v+1");
  v_club->add_option("--instance", instance_path, "instance file")->required();
  add_common(v_club, false);

  // arrow
  int arrow_n = 0, arrow_k = 0;
  std::vector<int> arrow_targets;
  CLI::App* arrow = app.add_subcommand("arrow", "arrow relation decision");
  arrow->add_option("n", arrow_n, "ground set size")->required();
  arrow->add_option("k", arrow_k, "uniformity")->required();
  arrow->add_option("--targets", arrow_targets, "one size per color")
      ->required()
      ->delimiter(',');
  add_common(arrow, true);

  // bounds
  CLI::App* bounds = app.add_subcommand("bounds", "tower bound calculator");
  bounds->require_subcommand(1);
  int bounds_n = 0, er_k = 0, er_l = 0, er_r = 0, max_n = 0;
  CLI::App* b_supper = bounds->add_subcommand("s-upper", "upper bound pair");
  b_supper->add_option("n", bounds_n, "index")->required();
  add_common(b_supper, false);
  CLI::App* b_tlower = bounds->add_subcommand("t-lower", "tower lower bound");
  b_tlower->add_option("n", bounds_n, "index")->required();
  add_common(b_tlower, false);
  CLI::App* b_er = bounds->add_subcommand("er", "upper bound formula");
  b_er->add_option("k", er_k, "uniformity")->required();
  b_er->add_option("l", er_l, "homogeneous size")->required();
  b_er->add_option("r", er_r, "colors")->required();
  add_common(b_er, false);
  CLI::App* b_cross = bounds->add_subcommand("crossover", "bound comparison");
  b_cross->add_option("--max-n", max_n, "largest index")->required();
  add_common(b_cross, false);

  // cond
  CLI::App* cond = app.add_subcommand("cond", "condition algebra");
  cond->require_subcommand(1);
  std::string cond_bg, cond_f1, cond_f2, cond_file;
  std::vector<std::string> cond_files;
  int cond_point = 0;
  CLI::App* c_amalg = cond->add_subcommand("amalg", "merge two conditions");
  c_amalg->add_option("left", cond_f1, "condition file")->required();
  c_amalg->add_option("right", cond_f2, "condition file")->required();
  c_amalg->add_option("--instance", cond_bg, "background instance")->required();
  add_common(c_amalg, false);
  CLI::App* c_extend = cond->add_subcommand("extend", "add one point");
  c_extend->add_option("file", cond_file, "condition file")->required();
  c_extend->add_option("--point", cond_point, "new point")->required();
  c_extend->add_option("--instance", cond_bg, "background instance")->required();
  add_common(c_extend, false);
  CLI::App* c_chain = cond->add_subcommand("chain", "union of a chain");
  c_chain->add_option("files", cond_files, "condition files")->required();
  c_chain->add_option("--instance", cond_bg, "background instance")->required();
  add_common(c_chain, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (gen->parsed()) {
      cfg.command = "gen";
      return cmd_gen(cfg, instance_path, out);
    }
    if (freec->parsed()) {
      cfg.command = "free";
      return cmd_free(cfg, instance_path, free_k, out);
    }
    if (explore->parsed()) {
      cfg.command = "explore";
      cfg.seed = explore_params.seed;
      (void)seed_given;
      return cmd_explore(cfg, explore_params, out);
    }
    if (homog->parsed()) {
      cfg.command = "homog";
      return cmd_homog(cfg, instance_path, homog_target, out);
    }
    if (verify->parsed()) {
      if (v_claim4->parsed()) {
        cfg.command = format_verify_name("claim4");
        return cmd_verify_claim4(cfg, instance_path, out);
      }
      if (v_claim3->parsed()) {
        cfg.command = format_verify_name("claim3");
        return cmd_verify_claim3(cfg, instance_path, out);
      }
      if (v_l23->parsed()) {
        cfg.command = format_verify_name("lemma23");
        return cmd_verify_restriction(cfg, false, instance_path, verify_trials,
                                      out);
      }
      if (v_l24->parsed()) {
        cfg.command = format_verify_name("lemma24");
        return cmd_verify_restriction(cfg, true, instance_path, verify_trials,
                                      out);
      }
      if (v_club->parsed()) {
        cfg.command = format_verify_name("clubsuit");
        return cmd_verify_clubsuit(cfg, instance_path, out);
      }
    }
    if (arrow->parsed()) {
      cfg.command = "arrow";
      return cmd_arrow(cfg, arrow_n, arrow_k, arrow_targets, out);
    }
    if (bounds->parsed()) {
      if (b_supper->parsed()) {
        cfg.command = "bounds s-upper";
        return cmd_bounds_s_upper(cfg, bounds_n, out);
      }
      if (b_tlower->parsed()) {
        cfg.command = "bounds t-lower";
        return cmd_bounds_t_lower(cfg, bounds_n, out);
      }
      if (b_er->parsed()) {
        cfg.command = "bounds er";
        return cmd_bounds_er(cfg, er_k, er_l, er_r, out);
      }
      if (b_cross->parsed()) {
        cfg.command = "bounds crossover";
        return cmd_bounds_crossover(cfg, max_n, out);
      }
    }
    if (cond->parsed()) {
      if (c_amalg->parsed()) {
        cfg.command = "cond amalg";
        return cmd_cond_amalg(cfg, cond_bg, cond_f1, cond_f2, out);
      }
      if (c_extend->parsed()) {
        cfg.command = "cond extend";
        return cmd_cond_extend(cfg, cond_bg, cond_file, cond_point, out);
      }
      if (c_chain->parsed()) {
        cfg.command = "cond chain";
        return cmd_cond_chain(cfg, cond_bg, cond_files, out);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace smlab
