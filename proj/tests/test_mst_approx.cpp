#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "cliquesim/instance.hpp"
#include "cliquesim/mst_approx.hpp"

using namespace cliquesim;

namespace {

MetricSpace line_points(std::vector<double> xs) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return MetricSpace::from_points(std::move(pts));
}

}  // namespace

TEST_CASE("edge split on a stretched line") {
  const auto m = line_points({0, 1, 100, 200});
  CliqueEngine eng(4);
  const auto split = split_edges(m, eng);
  CHECK(split.d_m == doctest::Approx(200.0));
  // threshold 200/64 = 3.125 keeps only the unit pair
  REQUIRE(split.light.size() == 1);
  CHECK(split.light[0] == EdgePair{0, 1});
  CHECK(eng.ledger().phase_rounds("split") == 1);
}

TEST_CASE("edge split with all distances equal has no light pairs") {
  // equilateral triangle
  const auto m = MetricSpace::from_points({{0, 0}, {1, 0}, {0.5, std::sqrt(3) / 2}});
  CliqueEngine eng(3);
  CHECK(split_edges(m, eng).light.empty());
}

TEST_CASE("edge split of a single point is the degenerate empty split") {
  const auto m = MetricSpace::from_points({{0.5, 0.5}});
  CliqueEngine eng(1);
  const auto split = split_edges(m, eng);
  CHECK(split.d_m == 0.0);
  CHECK(split.light.empty());
}

TEST_CASE("light replacement keeps hub-adjacent short pairs") {
  // No pair within d_m/n^2, so every point is its own hub and the
  // replacement holds exactly the pairs within twice that radius.
  const auto far_apart = line_points({0, 1, 2, 3});
  CliqueEngine eng(4);
  CHECK(light_sparsify(far_apart, 3.0, 7, eng).empty());

  // A pair at exactly the hub radius: one endpoint loses the MIS tie, the
  // pair itself survives into the replacement.
  const int n = 4;
  const double d_m = 32.0;
  const double r = d_m / (n * n);  // 2.0
  const auto m = line_points({0, r, 10, 22});
  CliqueEngine eng2(n);
  const auto light = light_sparsify(m, d_m, 7, eng2);
  bool has_pair = false;
  for (const auto& [u, v] : light) has_pair |= (u == 0 && v == 1);
  CHECK(has_pair);
}

TEST_CASE("layer parameters follow the closed forms") {
  const auto inst = generate({InstanceKind::Euclidean, 16, 2, 0.0, 5, 0.1, 2.0});
  CliqueEngine eng(16);
  const auto run = mst_approximation(inst.require_metric(), 5, eng);
  CHECK(run.sparsifier.h == 12);  // ceil(3*4 / 1)
  CHECK(run.sparsifier.r0 ==
        doctest::Approx(run.sparsifier.d_m / std::pow(2.0, 12)));
  CHECK(run.sparsifier.delta == 4);  // ceil(log2 10)
  REQUIRE(run.sparsifier.layers.size() == 12);
  CHECK(run.sparsifier.layers.back().r_i == doctest::Approx(run.sparsifier.d_m));
  for (std::size_t i = 0; i + 1 < run.sparsifier.layers.size(); ++i)
    CHECK(run.sparsifier.layers[i + 1].r_i ==
          doctest::Approx(2.0 * run.sparsifier.layers[i].r_i));
}

TEST_CASE("parallel plan packs receivers within the clique") {
  const auto plan = schedule_parallel_mis(1024, 12);
  CHECK(plan.receivers_per_layer == 20);
  CHECK(plan.batches.size() == 1);
  CHECK(plan.batches[0].layers.size() == 12);
  std::set<int> offsets;
  for (int off : plan.batches[0].receiver_offset) {
    CHECK(off + plan.receivers_per_layer <= 1024);
    offsets.insert(off);
  }
  CHECK(offsets.size() == 12);  // distinct receiver blocks

  // 24 layers at n = 256 no longer fit one batch (24 * 16 > 256).
  const auto tight = schedule_parallel_mis(256, 24);
  CHECK(tight.batches.size() == 2);

  CHECK_THROWS_AS(schedule_parallel_mis(3, 1), BudgetInfeasible);
}

TEST_CASE("sparse mst over explicit edge sets") {
  const auto m = line_points({0, 1, 2});
  CliqueEngine eng(3);
  // triangle weights 1, 1, 2 -> tree of weight 2
  const auto res = mst_sparse(m, {{0, 1}, {1, 2}, {0, 2}}, eng);
  CHECK(res.tree.weight == doctest::Approx(2.0));
  CHECK(res.sparsifier_connected);

  CliqueEngine eng2(3);
  const auto verbatim = mst_sparse(m, {{0, 1}, {1, 2}}, eng2);
  CHECK(verbatim.tree.edges.size() == 2);
  CHECK(verbatim.tree.weight == doctest::Approx(2.0));

  CliqueEngine eng3(3);
  const auto forest = mst_sparse(m, {{0, 1}}, eng3);
  CHECK(!forest.sparsifier_connected);
}

TEST_CASE("sparse mst rejects shipments beyond the budget") {
  const auto inst = generate({InstanceKind::Euclidean, 8, 2, 0.0, 2, 0.1, 2.0});
  SimConfig cfg;
  cfg.mst_ship_budget = 1;
  CliqueEngine eng(8, cfg);
  std::vector<EdgePair> fat;
  for (NodeId u = 0; u < 8; ++u)
    for (NodeId v = u + 1; v < 8; ++v) fat.emplace_back(u, v);
  CHECK_THROWS_AS(mst_sparse(inst.require_metric(), fat, eng), RoutingCapacityExceeded);
}

TEST_CASE("two points approximate exactly") {
  const auto m = line_points({0, 42});
  CliqueEngine eng(2);
  const auto run = mst_approximation(m, 0, eng);
  const auto opt = exact_mst(m);
  CHECK(run.result.tree.weight == doctest::Approx(opt.weight));
  CHECK(run_mst_checks(m, run, opt).ratio == doctest::Approx(1.0));
}

TEST_CASE("collinear equally spaced points stay within the stretch budget") {
  std::vector<double> xs;
  for (int i = 0; i < 32; ++i) xs.push_back(i);
  const auto m = line_points(xs);
  CliqueEngine eng(32);
  const auto run = mst_approximation(m, 3, eng);
  const auto opt = exact_mst(m);
  const auto checks = run_mst_checks(m, run, opt);
  CHECK(checks.ratio >= 1.0);
  CHECK(checks.ratio <= 12.0);
  CHECK(checks.connectivity);
  CHECK(checks.cut_preservation);
  CHECK(checks.light_weight);
}

TEST_CASE("random planar instances meet every sparsifier check") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = generate({InstanceKind::Euclidean, 64, 2, 0.0, seed, 0.1, 2.0});
    const auto& m = inst.require_metric();
    CliqueEngine eng(64);
    const auto run = mst_approximation(m, seed, eng);
    const auto opt = exact_mst(m);
    const auto checks = run_mst_checks(m, run, opt);
    CHECK(checks.ratio >= 1.0);
    CHECK(checks.ratio <= 12.0);
    CHECK(checks.connectivity);
    CHECK(checks.cut_preservation);
    CHECK(checks.light_weight);
    CHECK(checks.e_hat_size <= 50 * 64);
    CHECK(run.result.sparsifier_connected);

    // Per-layer structure: bounded degree inside a layer and the band
    // argument distance cap between co-neighbors.
    const auto& sp = run.sparsifier;
    const int c3 = 1 << static_cast<int>(eng.config().rho *
                                         std::ceil(std::log2(2.0 * eng.config().c2)));
    for (const auto& layer : sp.layers) {
      std::map<NodeId, std::vector<NodeId>> nbr;
      for (const auto& [u, v] : layer.e_hat) {
        nbr[u].push_back(v);
        nbr[v].push_back(u);
      }
      for (const auto& [u, list] : nbr) {
        (void)u;
        CHECK(static_cast<int>(list.size()) <= c3);
        for (std::size_t a = 0; a + 1 < list.size(); ++a)
          for (std::size_t b = a + 1; b < list.size(); ++b)
            CHECK(m.dist(list[a], list[b]) <= 2.0 * eng.config().c2 * layer.r_i + 1e-12);
      }
    }
  }
}

TEST_CASE("heavy layer charge is the max across the parallel block") {
  const auto inst = generate({InstanceKind::Euclidean, 32, 2, 0.0, 4, 0.1, 2.0});
  const auto& m = inst.require_metric();
  SimConfig par;
  SimConfig seq;
  seq.sequential_layers = true;
  CliqueEngine a(32, par), b(32, seq);
  mst_approximation(m, 4, a);
  mst_approximation(m, 4, b);
  CHECK(a.ledger().phase_rounds("heavy") < b.ledger().phase_rounds("heavy"));
  CHECK(a.ledger().phase_messages("heavy") == b.ledger().phase_messages("heavy"));
}
