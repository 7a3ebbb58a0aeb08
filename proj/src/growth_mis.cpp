#include "cliquesim/growth_mis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cliquesim/rng.hpp"
#include "cliquesim/ruling_set.hpp"

namespace cliquesim {

int log_star(double x) {
  int it = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++it;
  }
  return it;
}

namespace {

Word encode_edge(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<Word>(u) << 32) | v;
}

std::pair<NodeId, NodeId> decode_edge(Word w) {
  return {static_cast<NodeId>(w >> 32), static_cast<NodeId>(w & 0xffffffffULL)};
}

std::vector<NodeId> active_ids(const std::vector<char>& active) {
  std::vector<NodeId> ids;
  for (NodeId v = 0; v < active.size(); ++v)
    if (active[v]) ids.push_back(v);
  return ids;
}

int max_degree_within(const Graph& g, const std::vector<char>& set) {
  int best = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(g.n); ++v) {
    if (!set[v]) continue;
    int d = 0;
    for (NodeId u : g.adj[v])
      if (set[u]) ++d;
    best = std::max(best, d);
  }
  return best;
}

void broadcast_bits(CliqueEngine& eng, const std::vector<char>& bits) {
  std::map<NodeId, Word> vals;
  for (NodeId v = 0; v < bits.size(); ++v) vals[v] = bits[v] ? 1 : 0;
  eng.broadcast_round(vals);
}

}  // namespace

std::vector<NodeId> reduce_degree(const Graph& g, const std::vector<char>& active,
                                  CliqueEngine& eng) {
  const auto ids = active_ids(active);
  if (ids.empty()) return {};
  const std::size_t part_size =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(ids.size()))));
  const std::size_t parts = (ids.size() + part_size - 1) / part_size;

  // One routing invocation ships every part to its lowest-id member.
  std::vector<NodeId> part_of(g.n, 0);
  std::vector<NodeId> receiver(parts, 0);
  for (std::size_t j = 0; j < parts; ++j) {
    const std::size_t lo = j * part_size;
    const std::size_t hi = std::min(ids.size(), lo + part_size);
    receiver[j] = ids[lo];
    for (std::size_t a = lo; a < hi; ++a) part_of[ids[a]] = static_cast<NodeId>(j);
  }
  std::vector<Envelope> batch;
  for (NodeId u : ids)
    for (NodeId v : g.adj[u])
      if (v > u && active[v] && part_of[v] == part_of[u])
        batch.push_back({u, receiver[part_of[u]], {encode_edge(u, v)}});
  std::map<NodeId, std::vector<std::pair<NodeId, NodeId>>> shipped;
  for (const auto& e : eng.lenzen_route(std::move(batch)))
    shipped[e.dst].push_back(decode_edge(e.payload[0]));

  std::vector<NodeId> p;
  std::vector<Envelope> notify;
  for (std::size_t j = 0; j < parts; ++j) {
    const std::size_t lo = j * part_size;
    const std::size_t hi = std::min(ids.size(), lo + part_size);
    std::vector<char> members(g.n, 0);
    for (std::size_t a = lo; a < hi; ++a) members[ids[a]] = 1;
    const Graph local = Graph::from_edges(g.n, shipped[receiver[j]]);
    for (NodeId v : sequential_mis(local, members)) {
      p.push_back(v);
      if (v != receiver[j]) notify.push_back({receiver[j], v, {1}});
    }
  }
  eng.lenzen_route(std::move(notify));
  std::vector<char> bits(g.n, 0);
  for (NodeId v : p) bits[v] = 1;
  broadcast_bits(eng, bits);
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<NodeId> sw_mis(const MetricSpace& m, const Graph& g, double ball_scale,
                           const std::vector<char>& active, CliqueEngine& eng) {
  const auto& cfg = eng.config();
  const int n_net = eng.n();
  const int delta = max_degree_within(g, active);
  const double cap = cfg.sw_degree_const * std::sqrt(static_cast<double>(n_net)) /
                     std::pow(static_cast<double>(log_star(n_net)), cfg.rho / 2.0);
  if (delta > cap)
    throw DegreeTooHigh("max degree " + std::to_string(delta) +
                        " exceeds the simulation budget " + std::to_string(cap));

  if (cfg.mis_strategy == MisStrategy::Faithful) {
    // Each node ships its adjacency to everything within the simulated
    // horizon; the charge is the true message volume.
    const double horizon = ball_scale * cfg.sw_f * log_star(n_net);
    std::vector<Envelope> batch;
    const auto ids = active_ids(active);
    for (NodeId v : ids) {
      std::vector<Word> desc;
      for (NodeId u : g.adj[v])
        if (active[u]) desc.push_back(encode_edge(v, u));
      for (NodeId u : ids) {
        if (u == v || m.dist(v, u) > horizon) continue;
        for (Word w : desc) batch.push_back({v, u, {w}});
      }
    }
    eng.route_chunked(std::move(batch));
  } else {
    eng.charge(cfg.swmis_rounds, 0);
  }
  return sequential_mis(g, active);
}

std::vector<NodeId> sw_mis(const MetricSpace& m, double r, CliqueEngine& eng) {
  const Graph g = threshold_graph(m, r);
  return sw_mis(m, g, r, std::vector<char>(m.n(), 1), eng);
}

SamplePruneResult sample_and_prune(const MetricSpace& m, const Graph& g, double ball_scale,
                                   const std::vector<NodeId>& p, std::uint64_t seed,
                                   CliqueEngine& eng, int receiver_offset) {
  const int n = g.n;
  SamplePruneResult out;
  out.in_w.assign(n, 0);
  const double m_act = std::max<double>(2.0, static_cast<double>(p.size()));
  const int samples = static_cast<int>(std::ceil(2.0 * std::log2(m_act)));
  const double rate = std::pow(m_act, -0.25);

  std::vector<char> in_p(n, 0);
  for (NodeId v : p) in_p[v] = 1;

  // Per-node sample membership masks.
  std::vector<std::vector<char>> w(samples, std::vector<char>(n, 0));
  for (NodeId v : p) {
    SplitStream coins(seed, v, "sp-sample");
    for (int i = 0; i < samples; ++i)
      if (coins.bernoulli(rate)) {
        w[i][v] = 1;
        out.in_w[v] = 1;
      }
  }

  // Announce masks, one word-sized slice per broadcast round.
  const int word_bits = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(2, n)))));
  const int slices = (samples + word_bits - 1) / word_bits;
  for (int s = 0; s < slices; ++s) {
    std::map<NodeId, Word> vals;
    for (NodeId v : p) {
      Word pack = 0;
      for (int b = 0; b < word_bits; ++b) {
        const int i = s * word_bits + b;
        if (i < samples && w[i][v]) pack |= (Word{1} << b);
      }
      vals[v] = pack;
    }
    eng.broadcast_round(vals);
  }

  // All samples ship in one routing invocation, each to its own receiver.
  std::vector<NodeId> recv(samples);
  for (int i = 0; i < samples; ++i)
    recv[i] = static_cast<NodeId>((receiver_offset + i) % n);
  std::vector<Envelope> batch;
  std::vector<std::uint64_t> per_receiver(n, 0);
  for (int i = 0; i < samples; ++i)
    for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
      if (!w[i][u]) continue;
      for (NodeId v : g.adj[u])
        if (v > u && w[i][v]) {
          batch.push_back({u, recv[i], {encode_edge(u, v)}});
          ++per_receiver[recv[i]];
        }
    }
  // The designated receiver's budget is the whp-bounded event; surface it
  // rather than quietly spreading an oversized sample.
  for (int i = 0; i < samples; ++i)
    if (per_receiver[recv[i]] > static_cast<std::uint64_t>(n))
      throw RoutingCapacityExceeded(recv[i],
                                    RoutingCapacityExceeded::Direction::Destination,
                                    per_receiver[recv[i]], n);
  std::map<NodeId, std::vector<std::pair<NodeId, NodeId>>> shipped;
  for (const auto& e : eng.route_chunked(std::move(batch)))
    shipped[e.dst].push_back(decode_edge(e.payload[0]));

  std::vector<char> in_x(n, 0);
  std::vector<Envelope> notify;
  for (int i = 0; i < samples; ++i) {
    const Graph local = Graph::from_edges(n, shipped[recv[i]]);
    for (NodeId v : sequential_mis(local, w[i])) {
      if (!in_x[v] && v != recv[i]) notify.push_back({recv[i], v, {1}});
      in_x[v] = 1;
    }
  }
  eng.route_chunked(std::move(notify));
  broadcast_bits(eng, in_x);

  out.q = sw_mis(m, g, ball_scale, in_x, eng);

  // Coverage event behind the degree reduction: every high-degree P vertex
  // must have landed in the closed neighborhood of W.
  const double threshold = std::pow(m_act, 0.25);
  for (NodeId v : p) {
    int deg = 0;
    for (NodeId u : g.adj[v])
      if (in_p[u]) ++deg;
    if (deg < threshold) continue;
    bool covered = out.in_w[v] != 0;
    for (NodeId u : g.adj[v]) {
      if (covered) break;
      if (out.in_w[u]) covered = true;
    }
    if (!covered) {
      out.whp_flags.push_back("phase2-coverage vertex " + std::to_string(v));
      break;
    }
  }
  return out;
}

int coloring_degree_cap(double rho, double separation) {
  return static_cast<int>(std::llround(std::pow(18.0 / separation, rho)));
}

std::vector<NodeId> ruling_to_mis(const MetricSpace& m, const Graph& g, double ball_scale,
                                  const std::vector<NodeId>& s,
                                  const std::vector<char>& active, CliqueEngine& eng,
                                  MisPipelineStats* stats, int gamma) {
  const int n = g.n;
  const auto& cfg = eng.config();
  if (gamma <= 0) gamma = coloring_degree_cap(cfg.rho);
  if (s.empty()) return {};

  // Coloring graph: S members within 9x the ball scale.
  std::vector<std::vector<NodeId>> s_adj(s.size());
  for (std::size_t a = 0; a + 1 < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (m.dist(s[a], s[b]) <= 9.0 * ball_scale) {
        s_adj[a].push_back(static_cast<NodeId>(b));
        s_adj[b].push_back(static_cast<NodeId>(a));
      }
  int delta_9r = 0;
  for (const auto& lst : s_adj) delta_9r = std::max(delta_9r, static_cast<int>(lst.size()));
  if (stats) stats->delta_s_9r = delta_9r;

  // Ship the coloring graph to the lowest-id member of S.
  const NodeId star = *std::min_element(s.begin(), s.end());
  std::vector<Envelope> batch;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (NodeId b : s_adj[a])
      if (s[a] < s[b]) batch.push_back({s[a], star, {encode_edge(s[a], s[b])}});
  eng.route_chunked(std::move(batch));

  std::vector<int> color(s.size(), 0);
  int colors_used = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::vector<char> taken(colors_used + 2, 0);
    for (NodeId b : s_adj[a])
      if (color[b] > 0 && color[b] <= colors_used + 1) taken[color[b]] = 1;
    int c = 1;
    while (taken[c]) ++c;
    if (c > gamma + 1)
      throw ColoringOverflow("greedy coloring needs color " + std::to_string(c) +
                             " beyond palette of " + std::to_string(gamma + 1));
    color[a] = c;
    colors_used = std::max(colors_used, c);
  }
  if (stats) stats->colors_used = colors_used;

  // Distribute colors, then announce how many color steps will run.
  std::vector<Envelope> notify;
  for (std::size_t a = 0; a < s.size(); ++a)
    if (s[a] != star) notify.push_back({star, s[a], {static_cast<Word>(color[a])}});
  eng.lenzen_route(std::move(notify));
  eng.broadcast_round({{star, static_cast<Word>(colors_used)}});

  std::vector<char> alive = active;
  std::vector<char> in_i(n, 0);
  for (int c = 1; c <= colors_used; ++c) {
    std::vector<NodeId> owner(n, n);  // which ball claimed a vertex this step
    std::vector<std::vector<NodeId>> balls;
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (color[a] != c) continue;
      std::vector<NodeId> ball;
      for (NodeId u = 0; u < static_cast<NodeId>(n); ++u)
        if (alive[u] && m.dist(u, s[a]) <= 4.0 * ball_scale) ball.push_back(u);
      for (NodeId u : ball) {
        if (owner[u] != static_cast<NodeId>(n))
          throw SimError("same-color balls overlap at vertex " + std::to_string(u));
        owner[u] = s[a];
      }
      balls.push_back(std::move(ball));
    }
    // Structural independence: same-color balls must not touch an edge.
    for (const auto& ball : balls)
      for (NodeId u : ball)
        for (NodeId x : g.adj[u])
          if (owner[x] != static_cast<NodeId>(n) && owner[x] != owner[u])
            throw SimError("same-color balls adjacent via edge {" + std::to_string(u) +
                           "," + std::to_string(x) + "}");
    std::map<NodeId, Word> joined;
    for (const auto& ball : balls) {
      std::vector<char> members(n, 0);
      for (NodeId u : ball) members[u] = 1;
      for (NodeId u : sequential_mis(g, members)) {
        in_i[u] = 1;
        joined[u] = 1;
        alive[u] = 0;
        for (NodeId x : g.adj[u]) alive[x] = 0;  // closed-neighborhood removal
      }
    }
    // One bit per node per color step announces the new MIS members;
    // deactivation is then inferred from local distance knowledge.
    eng.broadcast_round(joined);
  }

  std::vector<NodeId> mis;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
    if (in_i[v]) mis.push_back(v);
  return mis;
}

std::vector<NodeId> mis_pipeline(const MetricSpace& m, const Graph& g, double ball_scale,
                                 const std::vector<char>& active, std::uint64_t seed,
                                 CliqueEngine& eng, MisPipelineStats* stats,
                                 int receiver_offset, int gamma) {
  MisPipelineStats local_stats;
  MisPipelineStats& st = stats ? *stats : local_stats;
  const auto ids = active_ids(active);
  st.active_size = ids.size();
  if (ids.empty()) return {};

  eng.set_phase("p1");
  const auto p = reduce_degree(g, active, eng);
  st.p_size = p.size();
  {
    std::vector<char> in_p(g.n, 0);
    for (NodeId v : p) in_p[v] = 1;
    st.delta_p = max_degree_within(g, in_p);
  }

  eng.set_phase("p2");
  auto sp = sample_and_prune(m, g, ball_scale, p, seed, eng, receiver_offset);
  st.w_size = 0;
  for (char b : sp.in_w) st.w_size += b ? 1 : 0;
  st.q_size = sp.q.size();
  st.whp_flags = sp.whp_flags;

  // Prose form of the pruning: V' sheds W and its closed neighborhood from P.
  std::vector<char> vprime(g.n, 0);
  for (NodeId v : p) {
    if (sp.in_w[v]) continue;
    bool near_w = false;
    for (NodeId u : g.adj[v])
      if (sp.in_w[u]) {
        near_w = true;
        break;
      }
    if (!near_w) vprime[v] = 1;
  }
  st.vprime_size = 0;
  for (char b : vprime) st.vprime_size += b ? 1 : 0;
  st.delta_vprime = max_degree_within(g, vprime);
  const double c_phase2 = 6.0;
  const double m_act = std::max<double>(2.0, static_cast<double>(p.size()));
  if (st.delta_vprime >= c_phase2 * std::pow(m_act, 0.25))
    st.whp_flags.push_back("phase2-delta " + std::to_string(st.delta_vprime));

  eng.set_phase("p3");
  const auto r_set = sw_mis(m, g, ball_scale, vprime, eng);

  eng.set_phase("p4");
  std::vector<NodeId> s = sp.q;
  s.insert(s.end(), r_set.begin(), r_set.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const auto mis = ruling_to_mis(m, g, ball_scale, s, active, eng, &st, gamma);
  st.i_size = mis.size();
  return mis;
}

std::vector<NodeId> low_dimensional_mis(const MetricSpace& m, double r, std::uint64_t seed,
                                        CliqueEngine& eng, MisPipelineStats* stats) {
  const Graph g = threshold_graph(m, r);
  return mis_pipeline(m, g, r, std::vector<char>(m.n(), 1), seed, eng, stats);
}

}  // namespace cliquesim
