#pragma once

#include <cstdint>
#include <vector>

#include "cliquesim/clique_engine.hpp"
#include "cliquesim/graph.hpp"

namespace cliquesim {

// Degree thresholds D_k = n^(1/2^k) for k = 0..k_star, with
// k_star = ceil(log2 log2 n), so 1 < D_{k_star} <= 2.
struct DegreeThresholds {
  int k_star = 0;
  std::vector<double> d;  // size k_star + 1

  // Threshold for an arbitrary index; the formula extends past k_star.
  double at(int k) const;
  int n = 0;
};

DegreeThresholds degree_thresholds(int n);

// Rounds spent by the lazy phase: max(1, ceil(1 + log2 log2 log2 n)).
int lazy_round_count(int n);

// Ball-doubling iterations of the speedy phase: max(0, ceil(log2 log2 log2 n)).
int speedy_doubling_count(int n);

// degree_G(u) minus the number of u's neighbors with a decided class label.
int residual_degree(const Graph& g, NodeId u, const std::vector<int>& labels);

struct DecompositionOutcome {
  std::vector<int> labels;     // per node, in [1, k_star + 1]
  bool speedy_ran = false;     // skipped when every node was labeled lazily
  int doubling_iterations = 0;
};

// Lazy phase: t broadcast rounds identify classes U_1..U_t; unidentified
// nodes keep label 0.
std::vector<int> lazy_phase(const Graph& g, CliqueEngine& eng);

// Speedy phase: ball growing on the residual graph followed by local class
// computation. Requires the lazy labels; completes every label.
DecompositionOutcome speedy_phase(const Graph& g, std::vector<int> lazy_labels,
                                  CliqueEngine& eng);

// Both phases under ledger labels "lazy" and "speedy".
DecompositionOutcome degree_decomposition(const Graph& g, CliqueEngine& eng);

// Class-dependent sampling: v in U_k joins with probability
// min(2 log2 n / D_k, 1); the final class joins with probability 1.
// Local coin flips only; no communication.
std::vector<char> vertex_selection(const Graph& g, const std::vector<int>& labels,
                                   std::uint64_t seed);

// The per-class selection probability used above.
double selection_probability(int n, int label);

// Per-iteration observables of the 2-ruling-set loop, for property tests.
struct TwoRulingTrace {
  struct Iteration {
    std::uint64_t m_before = 0;
    std::size_t t_size = 0;
    std::uint64_t e_t = 0;
    bool accepted = false;  // e[G[T]] was within the shipping bound
  };
  std::vector<Iteration> iterations;
};

// 2-ruling set of G[S]: iterative test-set sampling with centralized MIS on
// shipped subgraphs, then one terminal MIS once few edges remain.
std::vector<NodeId> two_ruling_set(const Graph& g, const std::vector<char>& in_s,
                                   std::uint64_t seed, CliqueEngine& eng,
                                   TwoRulingTrace* trace = nullptr);

struct ThreeRulingResult {
  std::vector<NodeId> members;
  std::vector<int> labels;
  std::vector<char> selected;
  std::size_t s_size = 0;
  std::uint64_t e_s = 0;  // edges inside the selected set
  bool speedy_ran = false;
  int doubling_iterations = 0;
  // True when every vertex was selected or had a selected neighbor (the
  // event the 3-hop guarantee rides on).
  bool coverage_held = true;
};

// Full pipeline: decomposition, vertex selection, 2-ruling set of G[S].
// Ledger phases: lazy, speedy, select, 2ruling.
ThreeRulingResult three_ruling_set(const Graph& g, std::uint64_t seed, CliqueEngine& eng);

// Greedy-by-ascending-id maximal independent set of an explicit subgraph
// (the LocalMIS used at designated nodes, free local computation).
std::vector<NodeId> sequential_mis(const Graph& g, const std::vector<char>& active);
std::vector<NodeId> sequential_mis(const Graph& g);

}  // namespace cliquesim
