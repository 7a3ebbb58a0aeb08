#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "cliquesim/clique_engine.hpp"

namespace cliquesim {

// Hop count reported for vertices a BFS cannot reach.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Undirected graph with sorted per-vertex neighbor lists and no self-loops.
// Vertex ids are stable: induced subgraphs keep the original ids.
struct Graph {
  int n = 0;
  std::vector<std::vector<NodeId>> adj;

  Graph() = default;
  explicit Graph(int n) : n(n), adj(n) {}

  static Graph from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges);

  void add_edge(NodeId u, NodeId v);  // keeps lists sorted; ignores duplicates
  bool has_edge(NodeId u, NodeId v) const {
    if (u >= adj.size()) return false;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  }
  std::size_t degree(NodeId v) const { return adj[v].size(); }
  std::uint64_t edge_count() const;
  int max_degree() const;

  // Subgraph induced by vertices with keep[v] != 0; ids are unchanged and
  // dropped vertices keep empty adjacency.
  Graph induced(const std::vector<char>& keep) const;

  std::vector<std::pair<NodeId, NodeId>> edges() const;  // u < v, sorted
};

// Shortest-hop distances from a single source.
std::vector<int> bfs_distance(const Graph& g, NodeId source);

// Shortest-hop distances from a set of sources (used by ruling-set checks).
std::vector<int> bfs_distance(const Graph& g, const std::vector<NodeId>& sources);

}  // namespace cliquesim
