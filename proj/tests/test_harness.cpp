#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "cliquesim/harness.hpp"
#include "cliquesim/ruling_set.hpp"

using namespace cliquesim;

namespace {

ExperimentConfig gnp_config(Algo algo, int n, double p) {
  ExperimentConfig cfg;
  cfg.algo = algo;
  cfg.instance.kind = InstanceKind::Gnp;
  cfg.instance.n = n;
  cfg.instance.p = p;
  return cfg;
}

ExperimentConfig euclid_config(Algo algo, int n, double r) {
  ExperimentConfig cfg;
  cfg.algo = algo;
  cfg.instance.kind = InstanceKind::Euclidean;
  cfg.instance.n = n;
  cfg.instance.dim = 2;
  cfg.r = r;
  return cfg;
}

}  // namespace

TEST_CASE("config validation names the violated constraint") {
  auto cfg = gnp_config(Algo::Ruling3, 64, 0.1);
  cfg.sim.c2 = cfg.sim.c1;
  try {
    cfg.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("c2 > c1 + 2") != std::string::npos);
  }

  CHECK_THROWS_AS(gnp_config(Algo::Mst, 16, 0.5).validate(), MetricRequired);
  CHECK_THROWS_AS(gnp_config(Algo::Ruling3, 3, 0.5).validate(), ConfigError);
  auto empty_seeds = gnp_config(Algo::Ruling3, 16, 0.5);
  empty_seeds.seed_end = 0;
  CHECK_THROWS_AS(empty_seeds.validate(), ConfigError);
}

TEST_CASE("records embed the config fingerprint and reproduce byte for byte") {
  const auto cfg = gnp_config(Algo::Ruling3, 48, 0.2);
  const auto a = run_single(cfg, 1);
  const auto b = run_single(cfg, 1);
  CHECK(a.record.dump() == b.record.dump());
  CHECK(a.record.at("fingerprint").get<std::string>() == config_fingerprint(cfg));

  auto other = cfg;
  other.sim.swmis_rounds = 5;
  CHECK(config_fingerprint(other) != config_fingerprint(cfg));
}

TEST_CASE("experiments aggregate pass rates and round statistics") {
  auto cfg = gnp_config(Algo::Ruling3, 48, 0.2);
  cfg.seed_end = 5;
  const auto summary = run_experiment(cfg);
  CHECK(summary.records.size() == 5);
  CHECK(summary.aggregate.at("runs").get<int>() == 5);
  CHECK(summary.aggregate.at("pass_rate").get<double>() >= 0.8);
  const auto text = summary_to_jsonl(summary);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("mst records carry every check and a unit-or-better ratio") {
  const auto cfg = euclid_config(Algo::Mst, 32, 0.05);
  const auto out = run_single(cfg, 2);
  CHECK(!out.hard_fail);
  CHECK(out.record.at("ratio").get<double>() >= 1.0);
  CHECK(out.record.at("checks").at("connectivity").get<bool>());
  CHECK(out.record.at("checks").at("cut_preservation").get<bool>());
  CHECK(out.record.at("checks").at("cardinality").get<bool>());
}

TEST_CASE("sweep emits a deterministic long-format table and deduplicates") {
  auto cfg = gnp_config(Algo::Ruling3, 16, 0.2);
  cfg.seed_end = 3;
  int dups = 0;
  const auto csv = sweep_csv(cfg, {32, 16, 32}, &dups);
  CHECK(dups == 1);
  CHECK(csv.rfind("n,phase,mean_rounds,max_rounds,mean_messages\n", 0) == 0);
  CHECK(csv.find("16,lazy,") != std::string::npos);
  CHECK(csv.find("32,total,") != std::string::npos);
  CHECK(csv == sweep_csv(cfg, {16, 32}, nullptr));

  int none = -1;
  CHECK(sweep_csv(cfg, {}, &none) == "n,phase,mean_rounds,max_rounds,mean_messages\n");
  CHECK(none == 0);
}

TEST_CASE("sweep lazy-round column equals the triple-log ceiling") {
  auto cfg = gnp_config(Algo::Ruling3, 64, 0.05);
  cfg.seed_end = 3;
  const auto csv = sweep_csv(cfg, {64, 256, 1024}, nullptr);
  for (int n : {64, 256, 1024}) {
    const int t = lazy_round_count(n);
    const std::string expect = std::to_string(n) + ",lazy," + std::to_string(t) +
                               ".000000," + std::to_string(t) + ",";
    CHECK(csv.find(expect) != std::string::npos);
  }
}

TEST_CASE("stored records re-verify against the oracles") {
  for (auto algo : {Algo::Ruling3, Algo::Mis, Algo::Mst, Algo::MflGeneral,
                    Algo::MflDoubling}) {
    ExperimentConfig cfg = algo == Algo::Ruling3 ? gnp_config(algo, 32, 0.2)
                                                 : euclid_config(algo, 12, 0.3);
    cfg.seed_end = 2;
    const auto summary = run_experiment(cfg);
    std::istringstream in(summary_to_jsonl(summary));
    std::ostringstream log;
    CHECK(verify_jsonl(in, log) == 0);
    CHECK(log.str().find("PASS") != std::string::npos);
  }
}

TEST_CASE("tampered records fail re-verification") {
  auto cfg = gnp_config(Algo::Ruling3, 32, 0.3);
  auto out = run_single(cfg, 0);
  auto members = out.record.at("members").get<std::vector<NodeId>>();
  REQUIRE(!members.empty());
  // claim an extra adjacent vertex; independence must now fail
  out.record["members"] = std::vector<NodeId>{};
  std::istringstream in(out.record.dump() + "\n");
  std::ostringstream log;
  CHECK(verify_jsonl(in, log) == 1);
}
