#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliquesim/clique_engine.hpp"
#include "cliquesim/graph.hpp"
#include "cliquesim/metric.hpp"

namespace cliquesim {

// Per-node opening radii and the geometric classes built on them. Classes
// use half-open ranges [3^k r_m, 3^(k+1) r_m) so they partition the nodes.
struct RadiusProfile {
  std::vector<double> r;
  double r_m = 0.0;
  std::vector<int> cls;
  int num_classes = 0;
};

// r_v is the unique radius with sum_{u in B(v,r)} (r - d(v,u)) = f_v,
// found exactly on the sorted-distance piecewise-linear form.
RadiusProfile compute_radii(const MetricSpace& m, const std::vector<double>& f);

// Fills classes from the radii; requires compute_radii output.
void classify(RadiusProfile& profile);

// Class graph H_k: vertices of class k, edge {u,v} iff d(u,v) <= r_u + r_v.
// Represented over the full id space; vertices outside the class stay
// isolated and the class member list is returned separately.
Graph class_graph(const MetricSpace& m, const RadiusProfile& profile, int k);
std::vector<NodeId> class_members(const RadiusProfile& profile, int k);

enum class MflMode { General, Doubling };

std::string to_string(MflMode mode);

struct FacilitySolution {
  std::vector<NodeId> open;
  std::vector<NodeId> assign;  // per client, nearest open facility
  double open_cost = 0.0;
  double connect_cost = 0.0;
  double cost = 0.0;
};

struct MflStats {
  RadiusProfile profile;
  std::vector<std::size_t> class_sizes;
  std::vector<std::string> whp_flags;
};

// Facility opening by per-class ruling sets (general mode) or per-class
// maximal independent sets (doubling mode), classes running in parallel,
// then one broadcast and local nearest-facility assignment.
FacilitySolution solve_mfl(const MetricSpace& m, const std::vector<double>& f, MflMode mode,
                           std::uint64_t seed, CliqueEngine& eng, MflStats* stats = nullptr);

}  // namespace cliquesim
