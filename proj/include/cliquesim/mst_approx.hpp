#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cliquesim/clique_engine.hpp"
#include "cliquesim/graph.hpp"
#include "cliquesim/metric.hpp"
#include "cliquesim/oracles.hpp"

namespace cliquesim {

using EdgePair = std::pair<NodeId, NodeId>;

struct EdgeSplit {
  double d_m = 0.0;               // metric diameter
  std::vector<EdgePair> light;    // pairs at distance <= d_m / n^3
};

// Diameter by one broadcast of per-node maxima, then the light/heavy split.
EdgeSplit split_edges(const MetricSpace& m, CliqueEngine& eng);

struct SparsifierLayer {
  double r_i = 0.0;
  std::vector<NodeId> v_i;        // MIS of the threshold graph at radius r_i
  std::vector<EdgePair> e_hat;    // pairs of v_i within c2 * r_i
};

struct Sparsifier {
  double d_m = 0.0;
  int h = 0;
  double r0 = 0.0;
  int delta = 0;
  double c1 = 2.0;
  double c2 = 5.0;
  std::vector<EdgePair> e_light_hat;
  std::vector<SparsifierLayer> layers;

  std::vector<EdgePair> all_edges() const;  // deduplicated union
};

// Light-edge replacement: an MIS at radius d_m/n^2 selects hubs; pairs
// within twice that radius and touching a hub survive.
std::vector<EdgePair> light_sparsify(const MetricSpace& m, double d_m, std::uint64_t seed,
                                     CliqueEngine& eng);

// Receiver assignment for running many layer-MIS executions in parallel:
// groups layers into batches whose designated receivers stay distinct and
// within per-node budgets. Throws BudgetInfeasible when even one layer
// cannot fit.
struct ParallelMisPlan {
  struct Batch {
    std::vector<int> layers;
    std::vector<int> receiver_offset;  // aligned with `layers`
  };
  std::vector<Batch> batches;
  int receivers_per_layer = 0;
};

ParallelMisPlan schedule_parallel_mis(int n, int num_layers);

// Heavy-edge layers, executed per the parallel plan; the parallel block is
// charged max-rounds per batch (or summed when configured sequential).
std::vector<SparsifierLayer> heavy_sparsify(const MetricSpace& m, double d_m,
                                            std::uint64_t seed, CliqueEngine& eng);

struct TreeResult {
  Tree tree;
  bool sparsifier_connected = true;
};

// Ships the sparsifier to the lowest-id node, computes the exact MST there,
// and broadcasts the tree back.
TreeResult mst_sparse(const MetricSpace& m, const std::vector<EdgePair>& e_hat,
                      CliqueEngine& eng);

struct MstApproxResult {
  Sparsifier sparsifier;
  TreeResult result;
};

// Full pipeline under ledger phases split/light/heavy/mst-sparse.
MstApproxResult mst_approximation(const MetricSpace& m, std::uint64_t seed,
                                  CliqueEngine& eng);

struct MstChecks {
  bool connectivity = true;      // light-edge components preserved
  bool cut_preservation = true;  // every heavy MST edge has a bounded-stretch
                                 // sparsifier edge across its tree split
  bool light_weight = true;      // wt of the light replacement <= 2 d_m
  double ratio = 0.0;            // wt(tree) / wt(exact MST)
  std::uint64_t e_hat_size = 0;
  std::uint64_t e_light_size = 0;
};

MstChecks run_mst_checks(const MetricSpace& m, const MstApproxResult& run, const Tree& opt);

}  // namespace cliquesim
