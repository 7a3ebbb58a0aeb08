#include "cliquesim/ruling_set.hpp"

#include <cmath>
#include <map>
#include <set>

#include "cliquesim/rng.hpp"

namespace cliquesim {

namespace {

Word encode_edge(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<Word>(u) << 32) | v;
}

std::pair<NodeId, NodeId> decode_edge(Word w) {
  return {static_cast<NodeId>(w >> 32), static_cast<NodeId>(w & 0xffffffffULL)};
}

}  // namespace

double DegreeThresholds::at(int k) const {
  if (k >= 0 && k < static_cast<int>(d.size())) return d[k];
  return std::pow(static_cast<double>(n), 1.0 / std::exp2(k));
}

DegreeThresholds degree_thresholds(int n) {
  if (n < 2) throw ConfigError("degree thresholds require n >= 2");
  // k_star is the smallest k with 2^(2^k) >= n, i.e. ceil(log2 log2 n),
  // computed in integers to dodge rounding at the exact powers.
  int k_star = 0;
  while (k_star < 5 && (1ULL << (1ULL << k_star)) < static_cast<std::uint64_t>(n))
    ++k_star;
  DegreeThresholds out;
  out.n = n;
  out.k_star = k_star;
  out.d.resize(k_star + 1);
  for (int k = 0; k <= k_star; ++k)
    out.d[k] = std::pow(static_cast<double>(n), 1.0 / std::exp2(k));
  return out;
}

namespace {

double log2_log2_log2(int n) {
  return std::log2(std::log2(std::log2(static_cast<double>(n))));
}

}  // namespace

int lazy_round_count(int n) {
  if (n < 2) throw ConfigError("lazy phase requires n >= 2");
  if (n <= 4) return 1;  // log2 log2 log2 n <= 0 here
  const int t = static_cast<int>(std::ceil(1.0 + log2_log2_log2(n)));
  return std::max(1, t);
}

int speedy_doubling_count(int n) {
  if (n < 2) throw ConfigError("speedy phase requires n >= 2");
  if (n <= 4) return 0;
  const int it = static_cast<int>(std::ceil(log2_log2_log2(n)));
  return std::max(0, it);
}

int residual_degree(const Graph& g, NodeId u, const std::vector<int>& labels) {
  int classed = 0;
  for (NodeId w : g.adj[u])
    if (labels[w] > 0) ++classed;
  return static_cast<int>(g.degree(u)) - classed;
}

std::vector<int> lazy_phase(const Graph& g, CliqueEngine& eng) {
  const int n = g.n;
  const auto th = degree_thresholds(n);
  const int t = lazy_round_count(n);
  eng.set_phase("lazy");
  std::vector<int> label(n, 0);
  for (int i = 1; i <= t; ++i) {
    const double lo = th.at(i), hi = th.at(i - 1);
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
      if (label[v] != 0) continue;
      // Nodes that joined earlier iterations are excluded; same-iteration
      // joiners carry label == i and are correctly still counted.
      int s = 0;
      for (NodeId u : g.adj[v])
        if (label[u] >= 1 && label[u] < i) ++s;
      const int resid = static_cast<int>(g.degree(v)) - s;
      if (resid >= lo && resid < hi) label[v] = i;
    }
    // Every node announces its decision for this iteration.
    std::map<NodeId, Word> announce;
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
      announce[v] = static_cast<Word>(label[v]);
    eng.broadcast_round(announce);
  }
  return label;
}

namespace {

// Knowledge a speedy-phase node accumulates: an edge set of the residual
// graph, queried as adjacency.
struct BallKnowledge {
  std::set<Word> edges;

  void add(Word w) { edges.insert(w); }

  std::map<NodeId, std::vector<NodeId>> adjacency() const {
    std::map<NodeId, std::vector<NodeId>> adj;
    for (Word w : edges) {
      auto [a, b] = decode_edge(w);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

// BFS in the knowledge graph from v, capped at the given radius.
std::map<NodeId, int> knowledge_ball(const BallKnowledge& k, NodeId v, int radius) {
  auto adj = k.adjacency();
  std::map<NodeId, int> dist;
  dist[v] = 0;
  std::vector<NodeId> frontier{v};
  for (int d = 1; d <= radius && !frontier.empty(); ++d) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      auto it = adj.find(u);
      if (it == adj.end()) continue;
      for (NodeId w : it->second)
        if (!dist.count(w)) {
          dist[w] = d;
          next.push_back(w);
        }
    }
    frontier = std::move(next);
  }
  return dist;
}

// Inductive class computation from a radius-R ball of the residual graph:
// one class is decided per step, each step shrinking the usable radius by
// one hop so that residual degrees stay exact.
int peel_label(const BallKnowledge& k, NodeId v, int radius, const DegreeThresholds& th,
               int t) {
  const auto dist = knowledge_ball(k, v, radius);
  const auto adj = k.adjacency();
  std::map<NodeId, int> label;
  for (const auto& [u, d] : dist) {
    (void)d;
    label[u] = 0;
  }
  for (int cls = t + 1; cls <= th.k_star; ++cls) {
    const int maxd = radius - (cls - t);
    const double lo = th.at(cls), hi = th.at(cls - 1);
    std::vector<NodeId> joined;
    for (const auto& [u, d] : dist) {
      if (d > maxd || label[u] != 0) continue;
      int resid = 0;
      auto it = adj.find(u);
      if (it != adj.end())
        for (NodeId w : it->second) {
          auto lw = label.find(w);
          if (lw == label.end() || lw->second == 0) ++resid;
        }
      if (resid >= lo && resid < hi) joined.push_back(u);
    }
    for (NodeId u : joined) label[u] = cls;  // classes decide simultaneously
  }
  const int own = label[v];
  return own != 0 ? own : th.k_star + 1;
}

}  // namespace

DecompositionOutcome speedy_phase(const Graph& g, std::vector<int> lazy_labels,
                                  CliqueEngine& eng) {
  const int n = g.n;
  const auto th = degree_thresholds(n);
  const int t = lazy_round_count(n);
  const int iterations = speedy_doubling_count(n);

  DecompositionOutcome out;
  out.labels = std::move(lazy_labels);

  std::vector<NodeId> residual_nodes;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
    if (out.labels[v] == 0) residual_nodes.push_back(v);
  eng.set_phase("speedy");
  if (residual_nodes.empty()) {
    eng.charge(0, 0);  // skipped, but the phase still shows in the ledger
    return out;
  }
  out.speedy_ran = true;
  out.doubling_iterations = iterations;

  // Residual-graph adjacency is local knowledge: each node knows its own
  // neighbors and heard every lazy announcement.
  std::vector<std::vector<NodeId>> res_adj(n);
  for (NodeId v : residual_nodes)
    for (NodeId u : g.adj[v])
      if (out.labels[u] == 0) res_adj[v].push_back(u);

  std::map<NodeId, BallKnowledge> knowledge;
  for (NodeId v : residual_nodes) {
    auto& k = knowledge[v];
    for (NodeId u : res_adj[v]) k.add(encode_edge(v, u));
  }

  // Initial exchange: every residual node ships its neighbor list to each
  // of its residual neighbors.
  {
    std::vector<Envelope> batch;
    for (NodeId v : residual_nodes)
      for (NodeId u : res_adj[v])
        for (NodeId w : res_adj[v])
          batch.push_back({v, u, {encode_edge(v, w)}});
    for (const auto& e : eng.lenzen_route(std::move(batch)))
      knowledge[e.dst].add(e.payload[0]);
  }

  // Ball doubling: radius 2^i descriptions go to every ball member.
  for (int i = 0; i < iterations; ++i) {
    const int radius = 1 << i;
    std::vector<Envelope> batch;
    for (NodeId v : residual_nodes) {
      const auto& k = knowledge[v];
      const auto ball = knowledge_ball(k, v, radius);
      std::vector<Word> ball_edges;
      for (Word w : k.edges) {
        auto [a, b] = decode_edge(w);
        if (ball.count(a) && ball.count(b)) ball_edges.push_back(w);
      }
      for (const auto& [u, d] : ball) {
        (void)d;
        if (u == v) continue;
        for (Word w : ball_edges) batch.push_back({v, u, {w}});
      }
    }
    for (const auto& e : eng.lenzen_route(std::move(batch)))
      knowledge[e.dst].add(e.payload[0]);
  }

  const int radius = 1 << iterations;
  for (NodeId v : residual_nodes)
    out.labels[v] = peel_label(knowledge[v], v, radius, th, t);
  return out;
}

DecompositionOutcome degree_decomposition(const Graph& g, CliqueEngine& eng) {
  return speedy_phase(g, lazy_phase(g, eng), eng);
}

double selection_probability(int n, int label) {
  const auto th = degree_thresholds(n);
  if (label == th.k_star + 1) return 1.0;
  return std::min(2.0 * std::log2(static_cast<double>(n)) / th.at(label), 1.0);
}

std::vector<char> vertex_selection(const Graph& g, const std::vector<int>& labels,
                                   std::uint64_t seed) {
  const int n = g.n;
  std::vector<char> selected(n, 0);
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    const double p = selection_probability(n, labels[v]);
    if (p >= 1.0) {
      selected[v] = 1;
      continue;
    }
    SplitStream coins(seed, v, "select");
    selected[v] = coins.bernoulli(p) ? 1 : 0;
  }
  return selected;
}

std::vector<NodeId> sequential_mis(const Graph& g, const std::vector<char>& active) {
  std::vector<NodeId> mis;
  std::vector<char> blocked(g.n, 0);
  for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v) {
    if (!active[v] || blocked[v]) continue;
    mis.push_back(v);
    for (NodeId u : g.adj[v]) blocked[u] = 1;
  }
  return mis;
}

std::vector<NodeId> sequential_mis(const Graph& g) {
  return sequential_mis(g, std::vector<char>(g.n, 1));
}

namespace {

// Membership bits for the whole network, one broadcast round.
void broadcast_membership(CliqueEngine& eng, const std::vector<char>& bits) {
  std::map<NodeId, Word> vals;
  for (NodeId v = 0; v < bits.size(); ++v) vals[v] = bits[v] ? 1 : 0;
  eng.broadcast_round(vals);
}

// Members of the subset broadcast their degree inside it; returns the edge
// count everyone can now derive.
std::uint64_t broadcast_subset_degrees(CliqueEngine& eng, const Graph& g,
                                       const std::vector<char>& subset) {
  std::map<NodeId, Word> vals;
  std::uint64_t twice = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v) {
    if (!subset[v]) continue;
    Word deg = 0;
    for (NodeId u : g.adj[v])
      if (subset[u]) ++deg;
    vals[v] = deg;
    twice += deg;
  }
  eng.broadcast_round(vals);
  return twice / 2;
}

// Ships the subgraph induced by the subset to the receiver (edge per word,
// sent by the smaller endpoint), runs the greedy MIS there, notifies the
// winners and has them announce themselves.
std::vector<NodeId> ship_and_mis(CliqueEngine& eng, const Graph& g,
                                 const std::vector<char>& subset) {
  NodeId receiver = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v)
    if (subset[v]) {
      receiver = v;
      break;
    }
  std::vector<Envelope> batch;
  for (NodeId u = 0; u < static_cast<NodeId>(g.n); ++u) {
    if (!subset[u]) continue;
    for (NodeId v : g.adj[u])
      if (v > u && subset[v]) batch.push_back({u, receiver, {encode_edge(u, v)}});
  }
  std::vector<std::pair<NodeId, NodeId>> shipped;
  for (const auto& e : eng.route_chunked(std::move(batch)))
    shipped.push_back(decode_edge(e.payload[0]));
  const Graph local = Graph::from_edges(g.n, shipped);
  const auto mis = sequential_mis(local, subset);

  std::vector<Envelope> notify;
  for (NodeId v : mis)
    if (v != receiver) notify.push_back({receiver, v, {1}});
  eng.lenzen_route(std::move(notify));
  std::vector<char> bits(g.n, 0);
  for (NodeId v : mis) bits[v] = 1;
  broadcast_membership(eng, bits);
  return mis;
}

}  // namespace

std::vector<NodeId> two_ruling_set(const Graph& g, const std::vector<char>& in_s,
                                   std::uint64_t seed, CliqueEngine& eng,
                                   TwoRulingTrace* trace) {
  const int n = g.n;
  eng.set_phase("2ruling");
  std::vector<char> s = in_s;
  std::vector<char> in_r(n, 0);

  broadcast_membership(eng, s);  // make S common knowledge
  std::uint64_t m = broadcast_subset_degrees(eng, g, s);

  int iter = 0;
  while (m > 2 * static_cast<std::uint64_t>(n)) {
    ++iter;
    const double q = std::sqrt(static_cast<double>(n) / static_cast<double>(m));
    std::vector<char> t_set(n, 0);
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
      if (!s[v]) continue;
      SplitStream coins(seed, v, "2ruling-t" + std::to_string(iter));
      if (coins.bernoulli(q)) t_set[v] = 1;
    }
    broadcast_membership(eng, t_set);
    const std::uint64_t e_t = broadcast_subset_degrees(eng, g, t_set);

    TwoRulingTrace::Iteration rec;
    rec.m_before = m;
    rec.e_t = e_t;
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
      if (t_set[v]) ++rec.t_size;

    if (e_t <= 4 * static_cast<std::uint64_t>(n)) {
      rec.accepted = true;
      for (NodeId v : ship_and_mis(eng, g, t_set)) in_r[v] = 1;
      // Drop the test set and its neighborhood from the active set.
      std::vector<char> next = s;
      for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
        if (!s[v]) continue;
        if (t_set[v]) {
          next[v] = 0;
          continue;
        }
        for (NodeId u : g.adj[v])
          if (t_set[u]) {
            next[v] = 0;
            break;
          }
      }
      s = std::move(next);
      broadcast_membership(eng, s);
      m = broadcast_subset_degrees(eng, g, s);
    }
    if (trace) trace->iterations.push_back(rec);
  }

  for (NodeId v : ship_and_mis(eng, g, s)) in_r[v] = 1;

  std::vector<NodeId> members;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
    if (in_r[v]) members.push_back(v);
  return members;
}

ThreeRulingResult three_ruling_set(const Graph& g, std::uint64_t seed, CliqueEngine& eng) {
  if (g.n < 4) throw ConfigError("3-ruling set pipeline requires n >= 4");
  ThreeRulingResult out;
  auto decomp = degree_decomposition(g, eng);
  out.labels = std::move(decomp.labels);
  out.speedy_ran = decomp.speedy_ran;
  out.doubling_iterations = decomp.doubling_iterations;

  eng.set_phase("select");
  eng.charge(0, 0);  // the step is pure local sampling
  out.selected = vertex_selection(g, out.labels, seed);
  for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v) {
    if (out.selected[v]) {
      ++out.s_size;
      for (NodeId u : g.adj[v])
        if (out.selected[u] && u > v) ++out.e_s;
      continue;
    }
    bool covered = false;
    for (NodeId u : g.adj[v])
      if (out.selected[u]) {
        covered = true;
        break;
      }
    if (!covered) out.coverage_held = false;
  }

  out.members = two_ruling_set(g, out.selected, seed, eng);
  return out;
}

}  // namespace cliquesim
