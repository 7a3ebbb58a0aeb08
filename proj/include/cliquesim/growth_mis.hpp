#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliquesim/clique_engine.hpp"
#include "cliquesim/graph.hpp"
#include "cliquesim/metric.hpp"

namespace cliquesim {

// Iterated-log helper used by the black-box MIS simulation bounds.
int log_star(double x);

struct MisPipelineStats {
  std::size_t active_size = 0;
  std::size_t p_size = 0;
  std::size_t w_size = 0;
  std::size_t q_size = 0;
  std::size_t vprime_size = 0;
  std::size_t i_size = 0;
  int delta_p = 0;        // max degree of g[P]
  int delta_vprime = 0;   // max degree of g[V']
  int delta_s_9r = 0;     // max degree of the scaled coloring graph on S
  int colors_used = 0;
  std::vector<std::string> whp_flags;  // labeled low-probability events observed
};

// The pipeline below targets a graph g whose every edge spans metric
// distance at most ball_scale; for a distance-threshold graph G_r that scale
// is r. Vertices outside `active` are ignored. All functions charge the
// engine honestly and surface capacity violations rather than masking them.

// Phase 1: partition the active vertices into ceil(sqrt(m)) id-blocks, ship
// each induced subgraph to its lowest-id member for a local MIS, and return
// the union P. Every active vertex is in P or adjacent to it.
std::vector<NodeId> reduce_degree(const Graph& g, const std::vector<char>& active,
                                  CliqueEngine& eng);

struct SamplePruneResult {
  std::vector<char> in_w;
  std::vector<NodeId> q;
  std::vector<std::string> whp_flags;
};

// Phase 2: ceil(2 log2 m) vertex samples at rate m^(-1/4), one designated
// receiver per sample (ids receiver_offset, receiver_offset+1, ...), local
// MIS per sample, then a black-box MIS over the union of the sample MISes.
SamplePruneResult sample_and_prune(const MetricSpace& m, const Graph& g, double ball_scale,
                                   const std::vector<NodeId>& p, std::uint64_t seed,
                                   CliqueEngine& eng, int receiver_offset = 0);

// Black-box MIS simulation on g[active]. Requires the degree of g[active]
// to be within the configured sqrt(n)/(log* n)^(rho/2) budget. The Oracle
// strategy charges a flat constant; the Faithful strategy routes the actual
// radius-(f log* n) ball descriptions and charges their message volume.
std::vector<NodeId> sw_mis(const MetricSpace& m, const Graph& g, double ball_scale,
                           const std::vector<char>& active, CliqueEngine& eng);

// Convenience form on the distance-threshold graph G_r.
std::vector<NodeId> sw_mis(const MetricSpace& m, double r, CliqueEngine& eng);

// Palette degree cap for the phase-4 coloring. S-members pairwise farther
// than separation * ball_scale and within 9 * ball_scale of a common
// neighbor have aspect ratio at most 18 / separation; the growth bound
// turns that into a constant. Threshold graphs give separation 1 (the
// paper's 18^rho); class graphs with radii spread by a factor of three
// give separation 1/3.
int coloring_degree_cap(double rho, double separation = 1.0);

// Phase 4: expand a 4-ruling set S of g[active] into an MIS of g[active]
// via constant-palette coloring of the 9x-scale graph on S and sequential
// greedy MIS inside the 4x-scale balls, colors processed in order.
std::vector<NodeId> ruling_to_mis(const MetricSpace& m, const Graph& g, double ball_scale,
                                  const std::vector<NodeId>& s,
                                  const std::vector<char>& active, CliqueEngine& eng,
                                  MisPipelineStats* stats = nullptr, int gamma = 0);

// Full four-phase pipeline on g[active]; ledger phases p1..p4. A zero
// gamma means the threshold-graph default coloring_degree_cap(rho).
std::vector<NodeId> mis_pipeline(const MetricSpace& m, const Graph& g, double ball_scale,
                                 const std::vector<char>& active, std::uint64_t seed,
                                 CliqueEngine& eng, MisPipelineStats* stats = nullptr,
                                 int receiver_offset = 0, int gamma = 0);

// MIS of the distance-threshold graph G_r over the whole point set.
std::vector<NodeId> low_dimensional_mis(const MetricSpace& m, double r, std::uint64_t seed,
                                        CliqueEngine& eng,
                                        MisPipelineStats* stats = nullptr);

}  // namespace cliquesim
