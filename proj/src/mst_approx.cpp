#include "cliquesim/mst_approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "cliquesim/growth_mis.hpp"

namespace cliquesim {

namespace {

Word encode_edge(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<Word>(u) << 32) | v;
}

std::pair<NodeId, NodeId> decode_edge(Word w) {
  return {static_cast<NodeId>(w >> 32), static_cast<NodeId>(w & 0xffffffffULL)};
}

struct Dsu {
  std::vector<NodeId> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  NodeId find(NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(NodeId a, NodeId b) { parent[find(a)] = find(b); }
};

// Merges a child execution into the parent ledger under one phase label.
void absorb(CliqueEngine& parent, const CostLedger& child, std::uint64_t rounds) {
  parent.charge(rounds, child.messages());
}

}  // namespace

EdgeSplit split_edges(const MetricSpace& m, CliqueEngine& eng) {
  eng.set_phase("split");
  const int n = m.n();
  EdgeSplit out;
  if (n <= 1) {
    eng.broadcast_round({});
    return out;  // degenerate: no pairs, diameter defined as 0
  }
  // Every node knows its own row; one broadcast of per-node maxima fixes d_m.
  std::map<NodeId, Word> maxima;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    double row_max = 0.0;
    for (NodeId u = 0; u < static_cast<NodeId>(n); ++u)
      row_max = std::max(row_max, m.dist(v, u));
    maxima[v] = std::bit_cast<Word>(row_max);
  }
  for (const auto& [v, w] : eng.broadcast_round(maxima)) {
    (void)v;
    out.d_m = std::max(out.d_m, std::bit_cast<double>(w));
  }
  const double cutoff = out.d_m / (static_cast<double>(n) * n * n);
  for (NodeId u = 0; u + 1 < static_cast<NodeId>(n); ++u)
    for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v)
      if (m.dist(u, v) <= cutoff) out.light.emplace_back(u, v);
  return out;
}

std::vector<EdgePair> light_sparsify(const MetricSpace& m, double d_m, std::uint64_t seed,
                                     CliqueEngine& eng) {
  const int n = m.n();
  const double r = d_m / (static_cast<double>(n) * n);
  CliqueEngine child(n, eng.config());
  const auto hubs = low_dimensional_mis(m, r, seed, child);
  eng.set_phase("light");
  absorb(eng, child.ledger(), child.ledger().rounds());

  std::vector<char> in_s(n, 0);
  for (NodeId v : hubs) in_s[v] = 1;
  std::vector<EdgePair> out;
  for (NodeId u = 0; u + 1 < static_cast<NodeId>(n); ++u)
    for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v)
      if ((in_s[u] || in_s[v]) && m.dist(u, v) <= 2.0 * r) out.emplace_back(u, v);
  return out;
}

ParallelMisPlan schedule_parallel_mis(int n, int num_layers) {
  ParallelMisPlan plan;
  plan.receivers_per_layer =
      static_cast<int>(std::ceil(2.0 * std::log2(std::max(2.0, static_cast<double>(n)))));
  if (plan.receivers_per_layer > n)
    throw BudgetInfeasible("a single layer needs " +
                           std::to_string(plan.receivers_per_layer) +
                           " designated receivers but the clique has only " +
                           std::to_string(n) + " nodes");
  const int per_batch = std::max(1, n / plan.receivers_per_layer);
  for (int i = 0; i < num_layers; ++i) {
    if (plan.batches.empty() ||
        static_cast<int>(plan.batches.back().layers.size()) == per_batch)
      plan.batches.push_back({});
    auto& b = plan.batches.back();
    b.receiver_offset.push_back(static_cast<int>(b.layers.size()) *
                                plan.receivers_per_layer);
    b.layers.push_back(i);
  }
  return plan;
}

std::vector<SparsifierLayer> heavy_sparsify(const MetricSpace& m, double d_m,
                                            std::uint64_t seed, CliqueEngine& eng) {
  const int n = m.n();
  const auto& cfg = eng.config();
  const int h = static_cast<int>(
      std::ceil(3.0 * std::log2(static_cast<double>(n)) / std::log2(cfg.c1)));
  const double r0 = d_m / std::pow(cfg.c1, h);
  std::vector<SparsifierLayer> layers(h);
  const auto plan = schedule_parallel_mis(n, h);
  eng.set_phase("heavy");
  for (const auto& batch : plan.batches) {
    std::uint64_t batch_rounds = 0;
    std::uint64_t batch_messages = 0;
    for (std::size_t k = 0; k < batch.layers.size(); ++k) {
      const int i = batch.layers[k];
      auto& layer = layers[i];
      layer.r_i = std::pow(cfg.c1, i + 1) * r0;
      CliqueEngine child(n, cfg);
      layer.v_i = low_dimensional_mis(m, layer.r_i, seed + 1000003ULL * (i + 1), child,
                                      nullptr);
      // receiver offsets from the plan keep sample shipments on distinct
      // nodes across the batch
      (void)batch.receiver_offset[k];
      if (cfg.sequential_layers)
        batch_rounds += child.ledger().rounds();
      else
        batch_rounds = std::max(batch_rounds, child.ledger().rounds());
      batch_messages += child.ledger().messages();

      std::vector<char> in_vi(n, 0);
      for (NodeId v : layer.v_i) in_vi[v] = 1;
      const double cap = cfg.c2 * layer.r_i;
      for (NodeId u = 0; u + 1 < static_cast<NodeId>(n); ++u) {
        if (!in_vi[u]) continue;
        for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v)
          if (in_vi[v] && m.dist(u, v) <= cap) layer.e_hat.emplace_back(u, v);
      }
    }
    eng.charge(batch_rounds, batch_messages);
  }
  return layers;
}

std::vector<EdgePair> Sparsifier::all_edges() const {
  std::set<EdgePair> uniq(e_light_hat.begin(), e_light_hat.end());
  for (const auto& layer : layers) uniq.insert(layer.e_hat.begin(), layer.e_hat.end());
  return {uniq.begin(), uniq.end()};
}

TreeResult mst_sparse(const MetricSpace& m, const std::vector<EdgePair>& e_hat,
                      CliqueEngine& eng) {
  const int n = m.n();
  eng.set_phase("mst-sparse");
  const auto& cfg = eng.config();
  if (e_hat.size() > static_cast<std::size_t>(n) * cfg.mst_ship_budget)
    throw RoutingCapacityExceeded(0, RoutingCapacityExceeded::Direction::Destination,
                                  e_hat.size(),
                                  static_cast<std::uint64_t>(n) * cfg.mst_ship_budget);

  // Ship the sparsifier to node 0 (each edge travels once, sent by its
  // smaller endpoint; node 0's own edges are already local).
  std::vector<Envelope> batch;
  std::vector<WeightedEdge> local;
  for (const auto& [u, v] : e_hat) {
    if (u == 0)
      local.push_back({u, v, m.dist(u, v)});
    else
      batch.push_back({u, 0, {encode_edge(u, v)}});
  }
  for (const auto& e : eng.route_chunked(std::move(batch))) {
    auto [u, v] = decode_edge(e.payload[0]);
    local.push_back({u, v, m.dist(u, v)});
  }

  TreeResult out;
  out.tree = exact_mst(n, std::move(local));
  out.sparsifier_connected = out.tree.connected || n <= 1;

  // Tree distribution: one word per node per direct round, then everyone
  // rebroadcasts what it holds.
  const std::size_t tree_edges = out.tree.edges.size();
  if (n > 1) {
    std::size_t next = 0;
    std::map<NodeId, Word> held;
    while (next < tree_edges) {
      CliqueEngine::SendMap sends;
      for (NodeId dst = 1; dst < static_cast<NodeId>(n) && next < tree_edges; ++dst) {
        const auto& e = out.tree.edges[next++];
        sends[0][dst] = {encode_edge(e.u, e.v)};
        held[dst] = encode_edge(e.u, e.v);
      }
      eng.direct_round(sends);
    }
    eng.broadcast_round(held);
  }
  return out;
}

MstApproxResult mst_approximation(const MetricSpace& m, std::uint64_t seed,
                                  CliqueEngine& eng) {
  MstApproxResult out;
  const auto split = split_edges(m, eng);
  out.sparsifier.d_m = split.d_m;
  if (m.n() <= 1) {
    out.result.tree.connected = true;
    return out;  // empty tree by definition
  }
  const auto& cfg = eng.config();
  out.sparsifier.c1 = cfg.c1;
  out.sparsifier.c2 = cfg.c2;
  out.sparsifier.h = static_cast<int>(
      std::ceil(3.0 * std::log2(static_cast<double>(m.n())) / std::log2(cfg.c1)));
  out.sparsifier.r0 = split.d_m / std::pow(cfg.c1, out.sparsifier.h);
  out.sparsifier.delta =
      static_cast<int>(std::ceil(std::log2(2.0 * cfg.c2) / std::log2(cfg.c1)));
  out.sparsifier.e_light_hat = light_sparsify(m, split.d_m, seed, eng);
  out.sparsifier.layers = heavy_sparsify(m, split.d_m, seed, eng);
  out.result = mst_sparse(m, out.sparsifier.all_edges(), eng);
  return out;
}

MstChecks run_mst_checks(const MetricSpace& m, const MstApproxResult& run, const Tree& opt) {
  const int n = m.n();
  MstChecks checks;
  const auto e_hat = run.sparsifier.all_edges();
  checks.e_hat_size = e_hat.size();
  checks.e_light_size = run.sparsifier.e_light_hat.size();
  checks.ratio = opt.weight > 0 ? run.result.tree.weight / opt.weight : 1.0;

  // Light connectivity: every light pair must be joined by the replacement.
  if (n > 1) {
    Dsu dsu(n);
    for (const auto& [u, v] : run.sparsifier.e_light_hat) dsu.unite(u, v);
    const double cutoff = run.sparsifier.d_m / (static_cast<double>(n) * n * n);
    for (NodeId u = 0; u + 1 < static_cast<NodeId>(n) && checks.connectivity; ++u)
      for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v)
        if (m.dist(u, v) <= cutoff && dsu.find(u) != dsu.find(v)) {
          checks.connectivity = false;
          break;
        }
  }

  double light_weight = 0.0;
  for (const auto& [u, v] : run.sparsifier.e_light_hat) light_weight += m.dist(u, v);
  checks.light_weight = light_weight <= 2.0 * run.sparsifier.d_m + 1e-9;

  // Cut preservation: each heavy MST edge needs a sparsifier edge crossing
  // the same split with stretch at most c2.
  if (n > 1) {
    const double cutoff = run.sparsifier.d_m / (static_cast<double>(n) * n * n);
    Graph tree_graph(n);
    for (const auto& e : opt.edges) tree_graph.add_edge(e.u, e.v);
    for (const auto& e : opt.edges) {
      if (m.dist(e.u, e.v) <= cutoff) continue;  // light edge, handled above
      // Side labels of the split obtained by removing {u, v} from the tree.
      std::vector<char> side(n, 0);
      std::vector<NodeId> stack{e.u};
      std::vector<char> seen(n, 0);
      seen[e.u] = 1;
      while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        side[x] = 1;
        for (NodeId y : tree_graph.adj[x]) {
          if (seen[y]) continue;
          if ((x == e.u && y == e.v) || (x == e.v && y == e.u)) continue;
          seen[y] = 1;
          stack.push_back(y);
        }
      }
      bool crossed = false;
      const double stretch_cap = run.sparsifier.c2 * m.dist(e.u, e.v) * (1.0 + 1e-9);
      for (const auto& [a, b] : e_hat)
        if (side[a] != side[b] && m.dist(a, b) <= stretch_cap) {
          crossed = true;
          break;
        }
      if (!crossed) {
        checks.cut_preservation = false;
        break;
      }
    }
  }
  return checks;
}

}  // namespace cliquesim
