#include "cliquesim/instance.hpp"

#include "cliquesim/errors.hpp"
#include "cliquesim/rng.hpp"
#include "json.hpp"

namespace cliquesim {

std::string to_string(InstanceKind k) {
  return k == InstanceKind::Euclidean ? "euclidean" : "gnp";
}

InstanceKind instance_kind_from_string(const std::string& s) {
  if (s == "euclidean") return InstanceKind::Euclidean;
  if (s == "gnp") return InstanceKind::Gnp;
  throw ConfigError("unknown instance kind: " + s);
}

void InstanceSpec::validate() const {
  if (n < 1) throw ConfigError("instance requires n >= 1");
  if (kind == InstanceKind::Euclidean && dim < 1)
    throw ConfigError("euclidean instance requires dim >= 1");
  if (kind == InstanceKind::Gnp && !(p >= 0.0 && p <= 1.0))
    throw ConfigError("gnp probability must be in [0, 1]");
  if (!(fcost_lo > 0.0) || fcost_hi < fcost_lo)
    throw ConfigError("facility cost range must satisfy 0 < lo <= hi");
}

const MetricSpace& Instance::require_metric() const {
  if (!metric)
    throw MetricRequired("instance kind '" + to_string(spec.kind) +
                         "' carries no metric; a metric instance is required");
  return *metric;
}

const Graph& Instance::require_graph() const {
  if (!graph) throw ConfigError("instance carries no explicit graph");
  return *graph;
}

Instance generate(const InstanceSpec& spec) {
  spec.validate();
  Instance inst;
  inst.spec = spec;
  if (spec.kind == InstanceKind::Euclidean) {
    inst.points.resize(spec.n, std::vector<double>(spec.dim));
    for (int v = 0; v < spec.n; ++v) {
      SplitStream rng(spec.seed, static_cast<std::uint64_t>(v), "pt");
      for (int d = 0; d < spec.dim; ++d) inst.points[v][d] = rng.next_double();
    }
    inst.metric = MetricSpace::from_points(inst.points);
  } else {
    SplitStream rng(spec.seed, 0, "gnp");
    Graph g(spec.n);
    for (NodeId u = 0; u + 1 < static_cast<NodeId>(spec.n); ++u)
      for (NodeId v = u + 1; v < static_cast<NodeId>(spec.n); ++v)
        if (rng.bernoulli(spec.p)) {
          g.adj[u].push_back(v);
          g.adj[v].push_back(u);
        }
    inst.graph = std::move(g);
  }
  inst.facility_costs.resize(spec.n);
  for (int v = 0; v < spec.n; ++v) {
    SplitStream rng(spec.seed, static_cast<std::uint64_t>(v), "fc");
    inst.facility_costs[v] =
        spec.fcost_lo + (spec.fcost_hi - spec.fcost_lo) * rng.next_double();
  }
  return inst;
}

std::string Instance::to_json_string() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  j["seed"] = spec.seed;
  nlohmann::ordered_json params;
  if (spec.kind == InstanceKind::Euclidean)
    params["dim"] = spec.dim;
  else
    params["p"] = spec.p;
  params["fcost"] = {spec.fcost_lo, spec.fcost_hi};
  j["params"] = std::move(params);
  if (spec.kind == InstanceKind::Euclidean) {
    j["points"] = points;
  } else {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [u, v] : graph->edges()) arr.push_back({u, v});
    j["edges"] = std::move(arr);
  }
  j["facility_costs"] = facility_costs;
  return j.dump();
}

Instance Instance::from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  InstanceSpec spec;
  spec.kind = instance_kind_from_string(j.at("kind").get<std::string>());
  spec.n = j.at("n").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  const auto& params = j.at("params");
  if (spec.kind == InstanceKind::Euclidean)
    spec.dim = params.at("dim").get<int>();
  else
    spec.p = params.at("p").get<double>();
  if (params.contains("fcost")) {
    spec.fcost_lo = params["fcost"][0].get<double>();
    spec.fcost_hi = params["fcost"][1].get<double>();
  }
  Instance inst;
  inst.spec = spec;
  if (spec.kind == InstanceKind::Euclidean) {
    inst.points = j.at("points").get<std::vector<std::vector<double>>>();
    inst.metric = MetricSpace::from_points(inst.points);
  } else {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    inst.graph = Graph::from_edges(spec.n, edges);
  }
  inst.facility_costs = j.at("facility_costs").get<std::vector<double>>();
  return inst;
}

}  // namespace cliquesim
