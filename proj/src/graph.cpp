#include "cliquesim/graph.hpp"

#include <deque>

namespace cliquesim {

Graph Graph::from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(NodeId u, NodeId v) {
  if (u == v) return;
  auto insert = [](std::vector<NodeId>& list, NodeId w) {
    auto it = std::lower_bound(list.begin(), list.end(), w);
    if (it == list.end() || *it != w) list.insert(it, w);
  };
  insert(adj[u], v);
  insert(adj[v], u);
}

std::uint64_t Graph::edge_count() const {
  std::uint64_t twice = 0;
  for (const auto& list : adj) twice += list.size();
  return twice / 2;
}

int Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& list : adj) d = std::max(d, list.size());
  return static_cast<int>(d);
}

Graph Graph::induced(const std::vector<char>& keep) const {
  Graph g(n);
  for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
    if (!keep[u]) continue;
    for (NodeId v : adj[u])
      if (v > u && keep[v]) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
      }
  }
  // Lists were filled in ascending order on the u side only; fix the v side.
  for (auto& list : g.adj) std::sort(list.begin(), list.end());
  return g;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (NodeId u = 0; u < static_cast<NodeId>(n); ++u)
    for (NodeId v : adj[u])
      if (v > u) out.emplace_back(u, v);
  return out;
}

std::vector<int> bfs_distance(const Graph& g, NodeId source) {
  return bfs_distance(g, std::vector<NodeId>{source});
}

std::vector<int> bfs_distance(const Graph& g, const std::vector<NodeId>& sources) {
  std::vector<int> dist(g.n, kUnreachable);
  std::deque<NodeId> queue;
  for (NodeId s : sources) {
    if (dist[s] == kUnreachable) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : g.adj[u]) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace cliquesim
