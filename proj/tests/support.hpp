#pragma once

// Shared helpers for the test suites: small independent oracles that stay
// apart from the implementation paths they check.

#include <algorithm>
#include <vector>

#include "cliquesim/graph.hpp"
#include "cliquesim/metric.hpp"
#include "cliquesim/oracles.hpp"

namespace testsupport {

using cliquesim::Graph;
using cliquesim::MetricSpace;
using cliquesim::NodeId;

// Exact maximum independent set by branch and bound; intended for inputs of
// a few dozen vertices.
inline void max_is_rec(const std::vector<std::vector<int>>& adj, std::vector<int> cand,
                       std::vector<int>& cur, std::vector<int>& best) {
  if (cur.size() + cand.size() <= best.size()) return;
  if (cand.empty()) {
    if (cur.size() > best.size()) best = cur;
    return;
  }
  const int v = cand.back();
  cand.pop_back();
  // branch 1: take v
  std::vector<int> filtered;
  for (int u : cand)
    if (!adj[v][u]) filtered.push_back(u);
  cur.push_back(v);
  max_is_rec(adj, filtered, cur, best);
  cur.pop_back();
  // branch 2: skip v
  max_is_rec(adj, std::move(cand), cur, best);
}

inline std::vector<NodeId> exact_max_independent_set(const Graph& g,
                                                     const std::vector<NodeId>& vertices) {
  const int k = static_cast<int>(vertices.size());
  std::vector<std::vector<int>> adj(k, std::vector<int>(k, 0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b && g.has_edge(vertices[a], vertices[b])) adj[a][b] = 1;
  std::vector<int> cand(k);
  for (int i = 0; i < k; ++i) cand[i] = i;
  std::vector<int> cur, best;
  max_is_rec(adj, cand, cur, best);
  std::vector<NodeId> out;
  for (int i : best) out.push_back(vertices[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// Prim's algorithm: the second, structurally different MST route used to
// cross-check the sorted-edge oracle.
inline double prim_mst_weight(const MetricSpace& m) {
  const int n = m.n();
  if (n <= 1) return 0.0;
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  double total = 0.0;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!in_tree[v] && (pick < 0 || best[v] < best[pick])) pick = v;
    in_tree[pick] = 1;
    total += best[pick];
    for (int v = 0; v < n; ++v)
      if (!in_tree[v]) best[v] = std::min(best[v], m.dist(pick, v));
  }
  return total;
}

}  // namespace testsupport
