#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliquesim/graph.hpp"
#include "cliquesim/metric.hpp"

namespace cliquesim {

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 0.0;
};

struct Tree {
  std::vector<WeightedEdge> edges;
  double weight = 0.0;
  bool connected = true;  // false when the input split into a forest
};

struct VerificationReport {
  std::string check;
  bool pass = true;
  std::string witness;  // concrete violating vertex/edge/set when failing

  std::string to_json_string() const;
};

// Exact MST over all metric pairs; sorted-edge forest growth with ties
// broken by (weight, min endpoint, max endpoint).
Tree exact_mst(const MetricSpace& m);

// Exact MST/forest of an explicit weighted edge set on n vertices.
Tree exact_mst(int n, std::vector<WeightedEdge> edges);

VerificationReport verify_independent(const Graph& g, const std::vector<NodeId>& members);
VerificationReport verify_mis(const Graph& g, const std::vector<NodeId>& members);
// Only vertices of the subset need to be within t hops; pass an empty
// subset to mean all of V.
VerificationReport verify_t_ruling(const Graph& g, const std::vector<NodeId>& members,
                                   int t, const std::vector<char>& subset = {});

// Centralized recomputation of the degree decomposition by iterated
// induced-subgraph peeling. Labels are in [1, k_star + 1].
std::vector<int> reference_decomposition(const Graph& g);

// Checks observations (i)-(iii) of the decomposition definition against a
// provided labeling; empty result means all hold.
std::string check_decomposition_observations(const Graph& g, const std::vector<int>& labels);

struct BruteForceMfl {
  std::vector<NodeId> open;
  double cost = 0.0;
};

// Exhaustive optimum over all nonempty facility subsets; n <= 14.
BruteForceMfl brute_force_mfl(const MetricSpace& m, const std::vector<double>& f);

inline constexpr int kBruteForceMflCap = 14;
inline constexpr int kExhaustiveMetricCap = 256;

}  // namespace cliquesim
