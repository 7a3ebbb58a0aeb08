#include "cliquesim/facility_location.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "cliquesim/growth_mis.hpp"
#include "cliquesim/rng.hpp"
#include "cliquesim/ruling_set.hpp"

namespace cliquesim {

RadiusProfile compute_radii(const MetricSpace& m, const std::vector<double>& f) {
  const int n = m.n();
  RadiusProfile out;
  out.r.resize(n);
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    if (!(f[v] > 0.0)) throw ConfigError("opening costs must be positive");
    std::vector<double> d(n);
    for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) d[u] = m.dist(v, u);
    std::sort(d.begin(), d.end());
    // On the piece with j+1 contributors, (j+1) r - prefix = f_v.
    double prefix = 0.0;
    double r_v = 0.0;
    for (int j = 0; j < n; ++j) {
      prefix += d[j];
      const double cand = (f[v] + prefix) / (j + 1);
      if (cand >= d[j] && (j + 1 == n || cand < d[j + 1])) {
        r_v = cand;
        break;
      }
    }
    out.r[v] = r_v;
  }
  out.r_m = *std::min_element(out.r.begin(), out.r.end());
  return out;
}

void classify(RadiusProfile& profile) {
  profile.cls.assign(profile.r.size(), 0);
  profile.num_classes = 0;
  for (std::size_t v = 0; v < profile.r.size(); ++v) {
    // Multiplicative walk keeps the 3^k boundaries exact enough that a
    // boundary radius lands in the upper class.
    int k = 0;
    double bound = 3.0 * profile.r_m;
    while (profile.r[v] >= bound) {
      ++k;
      bound *= 3.0;
    }
    profile.cls[v] = k;
    profile.num_classes = std::max(profile.num_classes, k + 1);
  }
}

std::vector<NodeId> class_members(const RadiusProfile& profile, int k) {
  std::vector<NodeId> members;
  for (NodeId v = 0; v < profile.cls.size(); ++v)
    if (profile.cls[v] == k) members.push_back(v);
  return members;
}

Graph class_graph(const MetricSpace& m, const RadiusProfile& profile, int k) {
  const auto members = class_members(profile, k);
  Graph g(m.n());
  for (std::size_t a = 0; a + 1 < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const NodeId u = members[a], v = members[b];
      if (m.dist(u, v) <= profile.r[u] + profile.r[v]) g.add_edge(u, v);
    }
  return g;
}

std::string to_string(MflMode mode) {
  return mode == MflMode::General ? "general" : "doubling";
}

namespace {

// General mode runs the graph-only ruling-set pipeline on the class graph,
// compacted to its own id space so degree thresholds see the class size.
std::vector<NodeId> class_ruling_general(const Graph& h, const std::vector<NodeId>& members,
                                         std::uint64_t seed, CliqueEngine& child,
                                         bool* coverage_held) {
  const int nk = static_cast<int>(members.size());
  std::map<NodeId, NodeId> to_compact;
  for (int i = 0; i < nk; ++i) to_compact[members[i]] = static_cast<NodeId>(i);
  Graph compact(nk);
  for (NodeId u : members)
    for (NodeId v : h.adj[u])
      if (v > u) compact.add_edge(to_compact[u], to_compact[v]);

  std::vector<NodeId> picked;
  *coverage_held = true;
  if (nk >= 4) {
    auto res = three_ruling_set(compact, seed, child);
    picked = std::move(res.members);
    *coverage_held = res.coverage_held;
  } else {
    // Below the pipeline's size floor the whole class ships in one go.
    picked = two_ruling_set(compact, std::vector<char>(nk, 1), seed, child);
  }
  std::vector<NodeId> out;
  for (NodeId c : picked) out.push_back(members[c]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FacilitySolution solve_mfl(const MetricSpace& m, const std::vector<double>& f, MflMode mode,
                           std::uint64_t seed, CliqueEngine& eng, MflStats* stats) {
  const int n = m.n();
  FacilitySolution sol;

  eng.set_phase("radii");
  eng.charge(0, 0);  // purely local: each node holds its own row and cost
  RadiusProfile profile = compute_radii(m, f);

  // r_m becomes common knowledge with one broadcast of the r_v values.
  eng.set_phase("classify");
  std::map<NodeId, Word> ann;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
    ann[v] = std::bit_cast<Word>(profile.r[v]);
  eng.broadcast_round(ann);
  classify(profile);

  if (stats) {
    stats->profile = profile;
    stats->class_sizes.assign(profile.num_classes, 0);
    for (int c : profile.cls) ++stats->class_sizes[c];
  }

  // Classes are disjoint, so their executions run in parallel; the block is
  // charged the maximum rounds any class consumed.
  eng.set_phase("ruling");
  std::uint64_t block_rounds = 0, block_messages = 0;
  std::vector<char> open_bits(n, 0);
  for (int k = 0; k < profile.num_classes; ++k) {
    const auto members = class_members(profile, k);
    if (members.empty()) continue;
    const std::uint64_t class_seed = SplitStream::derive(seed, k, "mfl-class");
    std::vector<NodeId> picked;
    if (mode == MflMode::General) {
      const Graph h = class_graph(m, profile, k);
      CliqueEngine child(std::max<int>(1, static_cast<int>(members.size())), eng.config());
      bool coverage_held = true;
      picked = class_ruling_general(h, members, class_seed, child, &coverage_held);
      if (!coverage_held && stats)
        stats->whp_flags.push_back("class" + std::to_string(k) + ": select-coverage");
      block_rounds = std::max(block_rounds, child.ledger().rounds());
      block_messages += child.ledger().messages();
    } else {
      const Graph h = class_graph(m, profile, k);
      std::vector<char> active(n, 0);
      for (NodeId v : members) active[v] = 1;
      // Every H_k edge spans at most r_u + r_v < 2 * 3^(k+1) * r_m, while
      // independent members can sit as close as a third of that, so the
      // coloring palette widens accordingly.
      const double ball_scale = 2.0 * std::pow(3.0, k + 1) * profile.r_m;
      const int gamma = coloring_degree_cap(eng.config().rho, 1.0 / 3.0);
      CliqueEngine child(n, eng.config());
      MisPipelineStats pipe_stats;
      picked = mis_pipeline(m, h, ball_scale, active, class_seed, child, &pipe_stats,
                            0, gamma);
      if (stats)
        for (const auto& flag : pipe_stats.whp_flags)
          stats->whp_flags.push_back("class" + std::to_string(k) + ": " + flag);
      block_rounds = std::max(block_rounds, child.ledger().rounds());
      block_messages += child.ledger().messages();
    }
    for (NodeId v : picked) open_bits[v] = 1;
  }
  eng.charge(block_rounds, block_messages);

  // One broadcast announces the open set; assignment is then local.
  eng.set_phase("assign");
  std::map<NodeId, Word> open_ann;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) open_ann[v] = open_bits[v];
  eng.broadcast_round(open_ann);

  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v)
    if (open_bits[v]) sol.open.push_back(v);
  if (sol.open.empty()) throw SimError("facility opening produced an empty set");
  sol.assign.resize(n);
  for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
    NodeId best = sol.open.front();
    for (NodeId w : sol.open)
      if (m.dist(u, w) < m.dist(u, best)) best = w;
    sol.assign[u] = best;
    sol.connect_cost += m.dist(u, best);
  }
  for (NodeId v : sol.open) sol.open_cost += f[v];
  sol.cost = sol.open_cost + sol.connect_cost;
  return sol;
}

}  // namespace cliquesim
