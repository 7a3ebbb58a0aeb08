#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cliquesim/clique_engine.hpp"

using namespace cliquesim;

TEST_CASE("direct round delivers one payload per pair and charges one round") {
  CliqueEngine eng(4);
  CliqueEngine::SendMap sends;
  for (NodeId src = 0; src < 4; ++src)
    for (NodeId dst = 0; dst < 4; ++dst)
      if (src != dst) sends[src][dst] = {Word{src}};
  const auto delivered = eng.direct_round(sends);
  CHECK(eng.ledger().rounds() == 1);
  CHECK(eng.ledger().messages() == 12);
  for (NodeId dst = 0; dst < 4; ++dst) {
    CHECK(delivered.at(dst).size() == 3);
    for (const auto& [src, payload] : delivered.at(dst)) CHECK(payload[0] == src);
  }
}

TEST_CASE("oversized payload violates the per-message word budget") {
  CliqueEngine eng(4);  // B defaults to one word
  CliqueEngine::SendMap sends;
  sends[0][1] = {Word{1}, Word{2}};
  CHECK_THROWS_AS(eng.direct_round(sends), BandwidthViolation);
}

TEST_CASE("self-send is rejected") {
  CliqueEngine eng(4);
  CliqueEngine::SendMap sends;
  sends[2][2] = {Word{7}};
  CHECK_THROWS_AS(eng.direct_round(sends), BandwidthViolation);
}

TEST_CASE("an explicitly stepped idle round still counts") {
  CliqueEngine eng(4);
  eng.direct_round({});
  CHECK(eng.ledger().rounds() == 1);
  CHECK(eng.ledger().messages() == 0);
  eng.broadcast_round({});
  CHECK(eng.ledger().rounds() == 2);
  CHECK(eng.ledger().messages() == 0);
}

TEST_CASE("routing accepts full-capacity batches and charges the constant") {
  CliqueEngine eng(8);
  std::vector<Envelope> batch;
  for (NodeId src = 0; src < 8; ++src)
    for (NodeId dst = 0; dst < 8; ++dst)
      if (src != dst) batch.push_back({src, dst, {Word{0}}});
  // also one extra per node to itself-adjacent pattern: 7 per pair direction
  const auto sz = batch.size();
  const auto delivered = eng.lenzen_route(std::move(batch));
  CHECK(delivered.size() == sz);
  CHECK(eng.ledger().rounds() == 2);
  CHECK(eng.ledger().messages() == sz);
}

TEST_CASE("routing overflow names the node and the direction") {
  CliqueEngine eng(8);
  std::vector<Envelope> batch;
  for (NodeId src = 0; src < 8; ++src)
    for (int k = 0; k < 2; ++k)
      if (src != 3) batch.push_back({src, 3, {Word{0}}});
  // node 3 receives 14 > 8 messages
  try {
    eng.lenzen_route(std::move(batch));
    FAIL("expected RoutingCapacityExceeded");
  } catch (const RoutingCapacityExceeded& e) {
    CHECK(e.node == 3);
    CHECK(e.direction == RoutingCapacityExceeded::Direction::Destination);
  }

  CliqueEngine eng2(8);
  std::vector<Envelope> batch2;
  for (int j = 0; j < 9; ++j) batch2.push_back({5, static_cast<NodeId>(j % 8 == 5 ? 6 : j % 8), {Word{0}}});
  try {
    eng2.lenzen_route(std::move(batch2));
    FAIL("expected RoutingCapacityExceeded");
  } catch (const RoutingCapacityExceeded& e) {
    CHECK(e.node == 5);
    CHECK(e.direction == RoutingCapacityExceeded::Direction::Source);
  }
}

TEST_CASE("an empty routing invocation is still charged") {
  CliqueEngine eng(8);
  eng.lenzen_route({});
  CHECK(eng.ledger().rounds() == eng.config().lenzen_rounds);
  CHECK(eng.ledger().messages() == 0);
}

TEST_CASE("chunked routing splits an oversized single-destination batch") {
  CliqueEngine eng(8);
  std::vector<Envelope> batch;
  for (int k = 0; k < 4 * 8; ++k)
    batch.push_back({static_cast<NodeId>(1 + k % 7), 0, {static_cast<Word>(k)}});
  const auto delivered = eng.route_chunked(std::move(batch));
  CHECK(delivered.size() == 32);
  // ceil(32 / 8) = 4 invocations (destination 0 caps each chunk at n)
  CHECK(eng.ledger().rounds() == 4 * eng.config().lenzen_rounds);
}

TEST_CASE("broadcast reaches everyone and counts physical messages") {
  CliqueEngine eng(5);
  std::map<NodeId, Word> vals{{0, 10}, {3, 13}};
  const auto heard = eng.broadcast_round(vals);
  CHECK(heard == vals);
  CHECK(eng.ledger().rounds() == 1);
  CHECK(eng.ledger().messages() == 2 * 4);
}

TEST_CASE("ledger phases sum to the totals and serialize in order") {
  CostLedger ledger;
  ledger.charge("alpha", 2, 10);
  ledger.charge("beta", 3, 20);
  ledger.charge("alpha", 1, 5);
  CHECK(ledger.rounds() == 6);
  CHECK(ledger.messages() == 35);
  CHECK(ledger.phase_rounds("alpha") == 3);
  CHECK(ledger.phase_rounds("beta") == 3);
  std::uint64_t sum = 0;
  for (const auto& p : ledger.phases()) sum += p.rounds;
  CHECK(sum == ledger.rounds());
  CHECK(ledger.to_json_string() ==
        R"({"rounds":6,"messages":35,"phases":[{"label":"alpha","rounds":3,"messages":15},)"
        R"({"label":"beta","rounds":3,"messages":20}]})");
}

TEST_CASE("config constraints are named when violated") {
  SimConfig cfg;
  cfg.c2 = cfg.c1;  // violates c2 > c1 + 2
  try {
    cfg.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("c2 > c1 + 2") != std::string::npos);
  }
}

TEST_CASE("identical runs produce identical ledgers") {
  auto run = [] {
    CliqueEngine eng(6);
    eng.set_phase("a");
    CliqueEngine::SendMap sends;
    sends[0][1] = {Word{42}};
    eng.direct_round(sends);
    eng.set_phase("b");
    eng.lenzen_route({{1, 2, {Word{7}}}, {2, 3, {Word{8}}}});
    return eng.ledger().to_json_string();
  };
  CHECK(run() == run());
}
