#include "cliquesim/clique_engine.hpp"

#include <algorithm>

#include "json.hpp"

namespace cliquesim {

void CostLedger::charge(std::string_view phase, std::uint64_t rounds,
                        std::uint64_t messages) {
  rounds_ += rounds;
  messages_ += messages;
  for (auto& p : phases_) {
    if (p.label == phase) {
      p.rounds += rounds;
      p.messages += messages;
      return;
    }
  }
  phases_.push_back({std::string(phase), rounds, messages});
}

std::uint64_t CostLedger::phase_rounds(std::string_view label) const {
  for (const auto& p : phases_)
    if (p.label == label) return p.rounds;
  return 0;
}

std::uint64_t CostLedger::phase_messages(std::string_view label) const {
  for (const auto& p : phases_)
    if (p.label == label) return p.messages;
  return 0;
}

std::string CostLedger::to_json_string() const {
  nlohmann::ordered_json j;
  j["rounds"] = rounds_;
  j["messages"] = messages_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : phases_) {
    nlohmann::ordered_json e;
    e["label"] = p.label;
    e["rounds"] = p.rounds;
    e["messages"] = p.messages;
    arr.push_back(std::move(e));
  }
  j["phases"] = std::move(arr);
  return j.dump();
}

CliqueEngine::CliqueEngine(int n, SimConfig cfg) : n_(n), cfg_(cfg) {
  if (n < 1) throw ConfigError("engine requires n >= 1");
  cfg_.validate();
}

void CliqueEngine::check_node(NodeId v, const char* role) const {
  if (v >= static_cast<NodeId>(n_))
    throw SimError(std::string("unknown ") + role + " node " + std::to_string(v));
}

CliqueEngine::SendMap CliqueEngine::direct_round(const SendMap& sends) {
  std::uint64_t count = 0;
  SendMap delivered;
  for (const auto& [src, by_dst] : sends) {
    check_node(src, "source");
    for (const auto& [dst, payload] : by_dst) {
      check_node(dst, "destination");
      if (src == dst) throw BandwidthViolation("self-send from node " + std::to_string(src));
      if (payload.size() > cfg_.words_per_message)
        throw BandwidthViolation("payload of " + std::to_string(payload.size()) +
                                 " words exceeds B=" + std::to_string(cfg_.words_per_message) +
                                 " on pair (" + std::to_string(src) + "," +
                                 std::to_string(dst) + ")");
      delivered[dst][src] = payload;
      ++count;
    }
  }
  ledger_.charge(phase_, 1, count);
  return delivered;
}

std::map<NodeId, Word> CliqueEngine::broadcast_round(const std::map<NodeId, Word>& values) {
  for (const auto& [src, w] : values) {
    (void)w;
    check_node(src, "source");
  }
  // Each broadcaster physically sends its word to the n-1 other nodes.
  ledger_.charge(phase_, 1, static_cast<std::uint64_t>(values.size()) * (n_ - 1));
  return values;
}

std::vector<Envelope> CliqueEngine::lenzen_route(std::vector<Envelope> batch) {
  std::vector<std::uint64_t> per_src(n_, 0), per_dst(n_, 0);
  for (const auto& e : batch) {
    check_node(e.src, "source");
    check_node(e.dst, "destination");
    if (e.payload.size() > cfg_.words_per_message)
      throw BandwidthViolation("routed message of " + std::to_string(e.payload.size()) +
                               " words exceeds B=" + std::to_string(cfg_.words_per_message));
    if (++per_src[e.src] > static_cast<std::uint64_t>(n_))
      throw RoutingCapacityExceeded(e.src, RoutingCapacityExceeded::Direction::Source,
                                    per_src[e.src], n_);
    if (++per_dst[e.dst] > static_cast<std::uint64_t>(n_))
      throw RoutingCapacityExceeded(e.dst, RoutingCapacityExceeded::Direction::Destination,
                                    per_dst[e.dst], n_);
  }
  // A routing invocation is always charged, even when the batch is empty.
  ledger_.charge(phase_, cfg_.lenzen_rounds, batch.size());
  std::stable_sort(batch.begin(), batch.end(), [](const Envelope& a, const Envelope& b) {
    return a.dst != b.dst ? a.dst < b.dst : a.src < b.src;
  });
  return batch;
}

std::vector<Envelope> CliqueEngine::route_chunked(std::vector<Envelope> batch) {
  const auto cap = static_cast<std::uint64_t>(n_);
  std::vector<Envelope> delivered;
  delivered.reserve(batch.size());
  std::vector<Envelope> chunk;
  std::vector<std::uint64_t> per_src(n_, 0), per_dst(n_, 0);
  auto flush = [&] {
    auto out = lenzen_route(std::move(chunk));
    delivered.insert(delivered.end(), out.begin(), out.end());
    chunk.clear();
    std::fill(per_src.begin(), per_src.end(), 0);
    std::fill(per_dst.begin(), per_dst.end(), 0);
  };
  for (auto& e : batch) {
    check_node(e.src, "source");
    check_node(e.dst, "destination");
    if (per_src[e.src] == cap || per_dst[e.dst] == cap) flush();
    ++per_src[e.src];
    ++per_dst[e.dst];
    chunk.push_back(std::move(e));
  }
  flush();  // final (possibly empty) invocation is still charged
  return delivered;
}

}  // namespace cliquesim
