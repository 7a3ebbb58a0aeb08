#include "cliquesim/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "cliquesim/errors.hpp"
#include "cliquesim/ruling_set.hpp"
#include "json.hpp"

namespace cliquesim {

namespace {

struct Dsu {
  std::vector<NodeId> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  NodeId find(NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::string VerificationReport::to_json_string() const {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["pass"] = pass;
  j["witness"] = witness;
  return j.dump();
}

Tree exact_mst(int n, std::vector<WeightedEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.w != b.w) return a.w < b.w;
    const auto ka = std::minmax(a.u, a.v), kb = std::minmax(b.u, b.v);
    return ka < kb;
  });
  Tree t;
  Dsu dsu(n);
  for (const auto& e : edges) {
    if (dsu.unite(e.u, e.v)) {
      t.edges.push_back(e);
      t.weight += e.w;
    }
  }
  t.connected = (static_cast<int>(t.edges.size()) == n - 1);
  return t;
}

Tree exact_mst(const MetricSpace& m) {
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(m.n()) * (m.n() - 1) / 2);
  for (NodeId u = 0; u + 1 < static_cast<NodeId>(m.n()); ++u)
    for (NodeId v = u + 1; v < static_cast<NodeId>(m.n()); ++v)
      edges.push_back({u, v, m.dist(u, v)});
  return exact_mst(m.n(), std::move(edges));
}

VerificationReport verify_independent(const Graph& g, const std::vector<NodeId>& members) {
  VerificationReport rep{"independent", true, ""};
  std::vector<char> in(g.n, 0);
  for (NodeId v : members) in[v] = 1;
  for (NodeId v : members)
    for (NodeId u : g.adj[v])
      if (in[u] && u > v) {
        rep.pass = false;
        rep.witness = "edge {" + std::to_string(v) + "," + std::to_string(u) + "} inside set";
        return rep;
      }
  return rep;
}

VerificationReport verify_mis(const Graph& g, const std::vector<NodeId>& members) {
  VerificationReport rep = verify_independent(g, members);
  rep.check = "mis";
  if (!rep.pass) return rep;
  std::vector<char> in(g.n, 0);
  for (NodeId v : members) in[v] = 1;
  for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v) {
    if (in[v]) continue;
    bool dominated = false;
    for (NodeId u : g.adj[v])
      if (in[u]) {
        dominated = true;
        break;
      }
    if (!dominated) {
      rep.pass = false;
      rep.witness = "vertex " + std::to_string(v) + " addable";
      return rep;
    }
  }
  return rep;
}

VerificationReport verify_t_ruling(const Graph& g, const std::vector<NodeId>& members,
                                   int t, const std::vector<char>& subset) {
  VerificationReport rep = verify_independent(g, members);
  rep.check = "t-ruling(t=" + std::to_string(t) + ")";
  if (!rep.pass) return rep;
  // t = 0 denotes the maximal-independent-set reading (domination), the
  // sense in which an MIS is a 0-ruling set.
  const int hop_cap = std::max(t, 1);
  const auto dist = bfs_distance(g, members);
  for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v) {
    if (!subset.empty() && !subset[v]) continue;
    if (dist[v] == kUnreachable || dist[v] > hop_cap) {
      rep.pass = false;
      rep.witness = "vertex " + std::to_string(v) + " at hop distance " +
                    (dist[v] == kUnreachable ? std::string("inf") : std::to_string(dist[v]));
      return rep;
    }
  }
  return rep;
}

std::vector<int> reference_decomposition(const Graph& g) {
  const int n = g.n;
  const auto th = degree_thresholds(n);
  std::vector<int> labels(n, 0);
  std::vector<char> remaining(n, 1);
  Graph cur = g;
  for (int k = 1; k <= th.k_star; ++k) {
    const double lo = th.at(k), hi = th.at(k - 1);
    std::vector<NodeId> joined;
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
      if (!remaining[v]) continue;
      const int deg = static_cast<int>(cur.degree(v));
      if (deg >= lo && deg < hi) joined.push_back(v);
    }
    for (NodeId v : joined) {
      labels[v] = k;
      remaining[v] = 0;
    }
    cur = cur.induced(remaining);
  }
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
    if (remaining[v]) labels[v] = th.k_star + 1;
  return labels;
}

std::string check_decomposition_observations(const Graph& g, const std::vector<int>& labels) {
  const int n = g.n;
  const auto th = degree_thresholds(n);
  // (i) each residual graph G_k keeps max degree below D_k
  for (int k = 0; k <= th.k_star; ++k) {
    std::vector<char> keep(n, 0);
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
      if (labels[v] > k) keep[v] = 1;
    const Graph gk = g.induced(keep);
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
      if (keep[v] && static_cast<double>(gk.degree(v)) >= th.at(k))
        return "observation (i) fails at k=" + std::to_string(k) + " vertex " +
               std::to_string(v);
  }
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    const int k = labels[v];
    // (ii) neighbors surviving into V_{k-1} number fewer than D_{k-1}
    int in_prev = 0;
    for (NodeId u : g.adj[v])
      if (labels[u] >= k) ++in_prev;
    if (static_cast<double>(in_prev) >= th.at(k - 1))
      return "observation (ii) fails at vertex " + std::to_string(v);
    // (iii) for each earlier class U_j, fewer than D_j neighbors
    for (int j = 1; j < k; ++j) {
      int in_uj = 0;
      for (NodeId u : g.adj[v])
        if (labels[u] == j) ++in_uj;
      if (static_cast<double>(in_uj) >= th.at(j))
        return "observation (iii) fails at vertex " + std::to_string(v) +
               " class j=" + std::to_string(j);
    }
  }
  return {};
}

BruteForceMfl brute_force_mfl(const MetricSpace& m, const std::vector<double>& f) {
  const int n = m.n();
  if (n > kBruteForceMflCap)
    throw SimError("brute-force facility location capped at n <= " +
                   std::to_string(kBruteForceMflCap) + ", got " + std::to_string(n));
  if (n < 1) throw ConfigError("brute force requires n >= 1");
  BruteForceMfl best;
  best.cost = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double cost = 0.0;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) cost += f[v];
    for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) nearest = std::min(nearest, m.dist(u, v));
      cost += nearest;
    }
    if (cost < best.cost) {
      best.cost = cost;
      best.open.clear();
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) best.open.push_back(v);
    }
  }
  return best;
}

}  // namespace cliquesim
