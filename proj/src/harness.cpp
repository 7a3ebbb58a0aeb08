#include "cliquesim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "cliquesim/facility_location.hpp"
#include "cliquesim/growth_mis.hpp"
#include "cliquesim/mst_approx.hpp"
#include "cliquesim/oracles.hpp"
#include "cliquesim/ruling_set.hpp"

namespace cliquesim {

namespace {

constexpr double kMstCardinalityFactor = 50.0;  // sparsifier size gate, |E^| <= 50 n

nlohmann::ordered_json ledger_json(const CostLedger& ledger) {
  return nlohmann::ordered_json::parse(ledger.to_json_string());
}

nlohmann::ordered_json rounds_by_phase(const CostLedger& ledger) {
  nlohmann::ordered_json obj;
  for (const auto& p : ledger.phases()) obj[p.label] = p.rounds;
  return obj;
}

nlohmann::ordered_json instance_spec_json(const InstanceSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  if (spec.kind == InstanceKind::Euclidean)
    j["dim"] = spec.dim;
  else
    j["p"] = spec.p;
  j["seed"] = spec.seed;
  j["fcost"] = {spec.fcost_lo, spec.fcost_hi};
  return j;
}

InstanceSpec instance_spec_from_json(const nlohmann::json& j) {
  InstanceSpec spec;
  spec.kind = instance_kind_from_string(j.at("kind").get<std::string>());
  spec.n = j.at("n").get<int>();
  if (spec.kind == InstanceKind::Euclidean)
    spec.dim = j.at("dim").get<int>();
  else
    spec.p = j.at("p").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.fcost_lo = j.at("fcost")[0].get<double>();
  spec.fcost_hi = j.at("fcost")[1].get<double>();
  return spec;
}

Graph input_graph(const ExperimentConfig& cfg, const Instance& inst) {
  if (inst.spec.kind == InstanceKind::Gnp) return inst.require_graph();
  return threshold_graph(inst.require_metric(), cfg.r);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

}  // namespace

std::string to_string(Algo a) {
  switch (a) {
    case Algo::Ruling3: return "ruling3";
    case Algo::Mis: return "mis";
    case Algo::Mst: return "mst";
    case Algo::MflGeneral: return "mfl-general";
    case Algo::MflDoubling: return "mfl-doubling";
  }
  return "unknown";
}

Algo algo_from_string(const std::string& s) {
  if (s == "ruling3") return Algo::Ruling3;
  if (s == "mis") return Algo::Mis;
  if (s == "mst") return Algo::Mst;
  if (s == "mfl-general") return Algo::MflGeneral;
  if (s == "mfl-doubling") return Algo::MflDoubling;
  throw ConfigError("unknown algorithm: " + s +
                    " (expected ruling3|mis|mst|mfl-general|mfl-doubling)");
}

void ExperimentConfig::validate() const {
  sim.validate();
  instance.validate();
  if (seed_begin >= seed_end) throw ConfigError("empty seed range");
  if (!(r >= 0)) throw ConfigError("threshold radius must be >= 0");
  const bool metric_algo = algo != Algo::Ruling3;
  if (metric_algo && instance.kind != InstanceKind::Euclidean)
    throw MetricRequired("algorithm '" + to_string(algo) +
                         "' needs a metric instance; gnp instances carry no metric");
  if (algo == Algo::Ruling3 && instance.n < 4)
    throw ConfigError("ruling3 requires n >= 4");
  if (!format.empty() && format != "jsonl" && format != "csv")
    throw ConfigError("format must be jsonl or csv");
}

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["algo"] = to_string(cfg.algo);
  j["instance"] = instance_spec_json(cfg.instance);
  j["r"] = cfg.r;
  j["seeds"] = {cfg.seed_begin, cfg.seed_end};
  nlohmann::ordered_json sim;
  sim["lenzen_rounds"] = cfg.sim.lenzen_rounds;
  sim["swmis_rounds"] = cfg.sim.swmis_rounds;
  sim["words_per_message"] = cfg.sim.words_per_message;
  sim["rho"] = cfg.sim.rho;
  sim["sw_degree_const"] = cfg.sim.sw_degree_const;
  sim["sw_f"] = cfg.sim.sw_f;
  sim["c1"] = cfg.sim.c1;
  sim["c2"] = cfg.sim.c2;
  sim["mst_ship_budget"] = cfg.sim.mst_ship_budget;
  sim["sequential_layers"] = cfg.sim.sequential_layers;
  sim["strategy"] = cfg.sim.mis_strategy == MisStrategy::Oracle ? "oracle" : "faithful";
  j["sim"] = std::move(sim);
  return j;
}

std::string config_fingerprint(const ExperimentConfig& cfg) {
  const std::string text = config_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

RecordOutcome run_ruling3(const ExperimentConfig& cfg, const Instance& inst,
                          std::uint64_t seed) {
  const Graph g = input_graph(cfg, inst);
  CliqueEngine eng(g.n, cfg.sim);
  const auto res = three_ruling_set(g, seed, eng);

  const auto indep = verify_independent(g, res.members);
  const auto ruling = verify_t_ruling(g, res.members, 3);

  RecordOutcome out;
  auto& j = out.record;
  j["algo"] = to_string(cfg.algo);
  j["n"] = g.n;
  j["seed"] = seed;
  if (inst.spec.kind == InstanceKind::Euclidean) j["r"] = cfg.r;
  j["t_param"] = lazy_round_count(g.n);
  j["speedy_ran"] = res.speedy_ran;
  j["doubling_iterations"] = res.doubling_iterations;
  j["rounds_by_phase"] = rounds_by_phase(eng.ledger());
  j["s_size"] = res.s_size;
  j["e_s"] = res.e_s;
  j["i_size"] = res.members.size();
  j["verified"] = {{"independent", indep.pass}, {"ruling_distance", ruling.pass}};
  auto flags = nlohmann::ordered_json::array();
  if (!res.coverage_held) flags.push_back("select-coverage");
  j["whp_flags"] = std::move(flags);
  j["members"] = res.members;
  j["ledger"] = ledger_json(eng.ledger());
  out.hard_fail = !indep.pass || (!ruling.pass && res.coverage_held);
  return out;
}

RecordOutcome run_mis(const ExperimentConfig& cfg, const Instance& inst,
                      std::uint64_t seed) {
  const auto& m = inst.require_metric();
  CliqueEngine eng(m.n(), cfg.sim);
  MisPipelineStats stats;
  const auto members = low_dimensional_mis(m, cfg.r, seed, eng, &stats);
  const Graph g = threshold_graph(m, cfg.r);
  const auto check = verify_mis(g, members);

  RecordOutcome out;
  auto& j = out.record;
  j["algo"] = to_string(cfg.algo);
  j["n"] = m.n();
  j["seed"] = seed;
  j["r"] = cfg.r;
  j["phase_rounds"] = rounds_by_phase(eng.ledger());
  j["p_size"] = stats.p_size;
  j["w_size"] = stats.w_size;
  j["q_size"] = stats.q_size;
  j["vprime_size"] = stats.vprime_size;
  j["i_size"] = members.size();
  j["delta_p"] = stats.delta_p;
  j["delta_vprime"] = stats.delta_vprime;
  j["delta_s_9r"] = stats.delta_s_9r;
  j["colors_used"] = stats.colors_used;
  j["verified"] = {{"mis", check.pass}};
  j["whp_flags"] = stats.whp_flags;
  j["members"] = members;
  j["ledger"] = ledger_json(eng.ledger());
  out.hard_fail = !check.pass && stats.whp_flags.empty();
  return out;
}

RecordOutcome run_mst(const ExperimentConfig& cfg, const Instance& inst,
                      std::uint64_t seed) {
  const auto& m = inst.require_metric();
  CliqueEngine eng(m.n(), cfg.sim);
  const auto run = mst_approximation(m, seed, eng);
  const Tree opt = exact_mst(m);
  const auto checks = run_mst_checks(m, run, opt);
  const bool cardinality =
      static_cast<double>(checks.e_hat_size) <= kMstCardinalityFactor * m.n();

  RecordOutcome out;
  auto& j = out.record;
  j["algo"] = to_string(cfg.algo);
  j["n"] = m.n();
  j["seed"] = seed;
  j["c1"] = cfg.sim.c1;
  j["c2"] = cfg.sim.c2;
  j["h"] = run.sparsifier.h;
  j["e_light_hat"] = checks.e_light_size;
  j["e_hat"] = checks.e_hat_size;
  j["wt_hat"] = run.result.tree.weight;
  j["wt_opt"] = opt.weight;
  j["ratio"] = checks.ratio;
  j["rounds_by_phase"] = rounds_by_phase(eng.ledger());
  j["checks"] = {{"connectivity", checks.connectivity},
                 {"cut_preservation", checks.cut_preservation},
                 {"light_weight", checks.light_weight},
                 {"cardinality", cardinality}};
  auto tree = nlohmann::ordered_json::array();
  for (const auto& e : run.result.tree.edges) tree.push_back({e.u, e.v});
  j["tree"] = std::move(tree);
  j["ledger"] = ledger_json(eng.ledger());
  out.hard_fail = !run.result.sparsifier_connected || !checks.connectivity ||
                  !checks.cut_preservation || !checks.light_weight || !cardinality ||
                  checks.ratio + 1e-12 < 1.0;
  return out;
}

RecordOutcome run_mfl(const ExperimentConfig& cfg, const Instance& inst,
                      std::uint64_t seed) {
  const auto& m = inst.require_metric();
  const auto mode = cfg.algo == Algo::MflGeneral ? MflMode::General : MflMode::Doubling;
  CliqueEngine eng(m.n(), cfg.sim);
  MflStats stats;
  const auto sol = solve_mfl(m, inst.facility_costs, mode, seed, eng, &stats);

  bool classes_verified = true;
  const int t = mode == MflMode::General ? 3 : 1;
  for (int k = 0; k < stats.profile.num_classes && classes_verified; ++k) {
    const auto members = class_members(stats.profile, k);
    if (members.empty()) continue;
    std::vector<char> in_class(m.n(), 0);
    for (NodeId v : members) in_class[v] = 1;
    std::vector<NodeId> f_k;
    for (NodeId v : sol.open)
      if (in_class[v]) f_k.push_back(v);
    const Graph h = class_graph(m, stats.profile, k);
    classes_verified = verify_independent(h, f_k).pass &&
                       verify_t_ruling(h, f_k, t, in_class).pass;
  }

  RecordOutcome out;
  auto& j = out.record;
  j["algo"] = to_string(cfg.algo);
  j["n"] = m.n();
  j["seed"] = seed;
  j["mode"] = to_string(mode);
  j["num_classes"] = stats.profile.num_classes;
  j["f_size"] = sol.open.size();
  j["cost"] = sol.cost;
  if (m.n() <= kBruteForceMflCap) {
    const auto opt = brute_force_mfl(m, inst.facility_costs);
    j["opt_cost"] = opt.cost;
    j["ratio"] = opt.cost > 0 ? sol.cost / opt.cost : 1.0;
    if (sol.cost + 1e-9 < opt.cost) out.hard_fail = true;  // cannot beat the optimum
  }
  j["rounds_by_phase"] = rounds_by_phase(eng.ledger());
  j["classes_verified"] = classes_verified;
  j["whp_flags"] = stats.whp_flags;
  j["open"] = sol.open;
  j["ledger"] = ledger_json(eng.ledger());
  if (!classes_verified && stats.whp_flags.empty()) out.hard_fail = true;
  return out;
}

}  // namespace

RecordOutcome run_single(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  InstanceSpec spec = cfg.instance;
  spec.seed = seed;
  const Instance inst = generate(spec);

  RecordOutcome out;
  switch (cfg.algo) {
    case Algo::Ruling3: out = run_ruling3(cfg, inst, seed); break;
    case Algo::Mis: out = run_mis(cfg, inst, seed); break;
    case Algo::Mst: out = run_mst(cfg, inst, seed); break;
    case Algo::MflGeneral:
    case Algo::MflDoubling: out = run_mfl(cfg, inst, seed); break;
  }
  out.record["instance"] = instance_spec_json(spec);
  out.record["fingerprint"] = config_fingerprint(cfg);
  out.record["hard_fail"] = out.hard_fail;
  return out;
}

RunSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  RunSummary summary;
  std::uint64_t total_rounds = 0, max_rounds = 0, total_messages = 0;
  for (std::uint64_t seed = cfg.seed_begin; seed < cfg.seed_end; ++seed) {
    auto outcome = run_single(cfg, seed);
    const auto& ledger = outcome.record["ledger"];
    const std::uint64_t rounds = ledger["rounds"].get<std::uint64_t>();
    total_rounds += rounds;
    max_rounds = std::max(max_rounds, rounds);
    total_messages += ledger["messages"].get<std::uint64_t>();
    if (outcome.hard_fail) ++summary.hard_failures;
    summary.records.push_back(std::move(outcome.record));
  }
  const double runs = static_cast<double>(cfg.seed_end - cfg.seed_begin);
  nlohmann::ordered_json agg;
  agg["aggregate"] = true;
  agg["algo"] = to_string(cfg.algo);
  agg["n"] = cfg.instance.n;
  agg["runs"] = cfg.seed_end - cfg.seed_begin;
  agg["hard_failures"] = summary.hard_failures;
  agg["pass_rate"] = (runs - summary.hard_failures) / runs;
  agg["mean_rounds"] = total_rounds / runs;
  agg["max_rounds"] = max_rounds;
  agg["mean_messages"] = total_messages / runs;
  agg["fingerprint"] = config_fingerprint(cfg);
  summary.aggregate = std::move(agg);
  return summary;
}

std::string summary_to_jsonl(const RunSummary& summary) {
  std::string out;
  for (const auto& r : summary.records) {
    out += r.dump();
    out += '\n';
  }
  out += summary.aggregate.dump();
  out += '\n';
  return out;
}

std::string sweep_csv(const ExperimentConfig& cfg, std::vector<int> ns, int* duplicates) {
  const std::size_t before = ns.size();
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (duplicates) *duplicates = static_cast<int>(before - ns.size());

  std::string csv = "n,phase,mean_rounds,max_rounds,mean_messages\n";
  for (int n : ns) {
    ExperimentConfig sub = cfg;
    sub.instance.n = n;
    const auto summary = run_experiment(sub);
    // Accumulate per-phase statistics across the seed range.
    std::vector<std::string> order;
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> tally;  // rounds, msgs
    std::map<std::string, std::uint64_t> peak;
    for (const auto& rec : summary.records) {
      for (const auto& p : rec["ledger"]["phases"]) {
        const auto label = p["label"].get<std::string>();
        if (!tally.count(label)) order.push_back(label);
        tally[label].first += p["rounds"].get<std::uint64_t>();
        tally[label].second += p["messages"].get<std::uint64_t>();
        peak[label] = std::max(peak[label], p["rounds"].get<std::uint64_t>());
      }
    }
    const double runs = static_cast<double>(summary.records.size());
    for (const auto& label : order) {
      csv += std::to_string(n) + "," + label + "," +
             format_double(tally[label].first / runs) + "," +
             std::to_string(peak[label]) + "," +
             format_double(tally[label].second / runs) + "\n";
    }
    csv += std::to_string(n) + ",total," +
           format_double(summary.aggregate["mean_rounds"].get<double>()) + "," +
           std::to_string(summary.aggregate["max_rounds"].get<std::uint64_t>()) + "," +
           format_double(summary.aggregate["mean_messages"].get<double>()) + "\n";
  }
  return csv;
}

namespace {

bool reverify_record(const nlohmann::json& rec, std::string& reason) {
  const auto algo = algo_from_string(rec.at("algo").get<std::string>());
  const InstanceSpec spec = instance_spec_from_json(rec.at("instance"));
  const Instance inst = generate(spec);
  const bool has_whp_flags = rec.contains("whp_flags") && !rec["whp_flags"].empty();

  if (algo == Algo::Ruling3) {
    Graph g;
    if (spec.kind == InstanceKind::Gnp)
      g = inst.require_graph();
    else
      g = threshold_graph(inst.require_metric(), rec.at("r").get<double>());
    const auto members = rec.at("members").get<std::vector<NodeId>>();
    const auto indep = verify_independent(g, members);
    const auto ruling = verify_t_ruling(g, members, 3);
    if (!indep.pass) {
      reason = indep.witness;
      return false;
    }
    if (!ruling.pass && !has_whp_flags) {
      reason = ruling.witness;
      return false;
    }
    return true;
  }
  if (algo == Algo::Mis) {
    const Graph g = threshold_graph(inst.require_metric(), rec.at("r").get<double>());
    const auto members = rec.at("members").get<std::vector<NodeId>>();
    const auto check = verify_mis(g, members);
    if (!check.pass && !has_whp_flags) {
      reason = check.witness;
      return false;
    }
    return true;
  }
  if (algo == Algo::Mst) {
    const auto& m = inst.require_metric();
    const auto tree = rec.at("tree");
    std::vector<NodeId> parent(m.n());
    for (NodeId v = 0; v < static_cast<NodeId>(m.n()); ++v) parent[v] = v;
    auto find = [&](NodeId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    double weight = 0.0;
    for (const auto& e : tree) {
      const NodeId u = e[0].get<NodeId>(), v = e[1].get<NodeId>();
      if (find(u) == find(v)) {
        reason = "stored tree has a cycle";
        return false;
      }
      parent[find(u)] = find(v);
      weight += m.dist(u, v);
    }
    if (tree.size() != static_cast<std::size_t>(m.n() - 1)) {
      reason = "stored tree does not span";
      return false;
    }
    if (std::abs(weight - rec.at("wt_hat").get<double>()) >
        1e-9 * std::max(1.0, weight)) {
      reason = "stored weight mismatch";
      return false;
    }
    const Tree opt = exact_mst(m);
    if (weight + 1e-9 < opt.weight) {
      reason = "stored tree beats the exact optimum";
      return false;
    }
    return true;
  }
  // Facility location, either mode.
  const auto& m = inst.require_metric();
  RadiusProfile profile = compute_radii(m, inst.facility_costs);
  classify(profile);
  const auto open = rec.at("open").get<std::vector<NodeId>>();
  if (open.empty()) {
    reason = "empty facility set";
    return false;
  }
  const int t = algo == Algo::MflGeneral ? 3 : 1;
  for (int k = 0; k < profile.num_classes; ++k) {
    const auto members = class_members(profile, k);
    if (members.empty()) continue;
    std::vector<char> in_class(m.n(), 0);
    for (NodeId v : members) in_class[v] = 1;
    std::vector<NodeId> f_k;
    for (NodeId v : open)
      if (in_class[v]) f_k.push_back(v);
    const Graph h = class_graph(m, profile, k);
    if (!verify_independent(h, f_k).pass ||
        (!verify_t_ruling(h, f_k, t, in_class).pass && !has_whp_flags)) {
      reason = "class " + std::to_string(k) + " ruling set check failed";
      return false;
    }
  }
  double cost = 0.0;
  for (NodeId v : open) cost += inst.facility_costs[v];
  for (NodeId u = 0; u < static_cast<NodeId>(m.n()); ++u) {
    double nearest = std::numeric_limits<double>::infinity();
    for (NodeId v : open) nearest = std::min(nearest, m.dist(u, v));
    cost += nearest;
  }
  if (std::abs(cost - rec.at("cost").get<double>()) > 1e-9 * std::max(1.0, cost)) {
    reason = "stored cost mismatch";
    return false;
  }
  return true;
}

}  // namespace

int verify_jsonl(std::istream& in, std::ostream& log) {
  int failures = 0;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto rec = nlohmann::json::parse(line);
    if (rec.contains("aggregate")) continue;
    std::string reason;
    bool ok = false;
    try {
      ok = reverify_record(rec, reason);
    } catch (const std::exception& e) {
      reason = e.what();
    }
    log << "line " << line_no << " " << rec.at("algo").get<std::string>() << " n="
        << rec.at("n").get<int>() << " seed=" << rec.at("seed").get<std::uint64_t>()
        << (ok ? " PASS" : " FAIL " + reason) << "\n";
    if (!ok) ++failures;
  }
  return failures;
}

}  // namespace cliquesim
