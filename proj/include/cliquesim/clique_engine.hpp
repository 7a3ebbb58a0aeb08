#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cliquesim/errors.hpp"

namespace cliquesim {

using NodeId = std::uint32_t;
using Word = std::uint64_t;  // one unit of O(log n) bits on the wire

enum class MisStrategy { Oracle, Faithful };

// Knobs shared by the simulator and every algorithm built on it. The model
// charges Lenzen routing and the black-box MIS simulation as flat constants;
// both are configurable so round reports can be re-normalized.
struct SimConfig {
  unsigned lenzen_rounds = 2;      // rounds charged per routing invocation
  unsigned swmis_rounds = 4;       // flat charge of the Oracle MIS strategy
  unsigned words_per_message = 1;  // payload cap B of one direct-send message
  double rho = 2.0;                // doubling-dimension parameter
  double sw_degree_const = 8.0;    // constant in the sw_mis degree precondition
  unsigned sw_f = 1;               // ball-radius constant of the Faithful strategy
  double c1 = 2.0;                 // sparsifier radius growth factor
  double c2 = 5.0;                 // sparsifier edge-acceptance factor
  unsigned mst_ship_budget = 64;   // sparse-MST shipment cap, in multiples of n
  bool sequential_layers = false;  // charge layer blocks as sum instead of max
  MisStrategy mis_strategy = MisStrategy::Oracle;

  void validate() const {
    if (!(c1 > 1.0)) throw ConfigError("constraint violated: c1 > 1");
    if (!(c2 > c1 + 2.0)) throw ConfigError("constraint violated: c2 > c1 + 2");
    if (lenzen_rounds < 1) throw ConfigError("constraint violated: lenzen_rounds >= 1");
    if (swmis_rounds < 1) throw ConfigError("constraint violated: swmis_rounds >= 1");
    if (words_per_message < 1) throw ConfigError("constraint violated: B >= 1");
    if (!(rho > 0)) throw ConfigError("constraint violated: rho > 0");
  }
};

struct Envelope {
  NodeId src = 0;
  NodeId dst = 0;
  std::vector<Word> payload;
};

// Rounds and messages consumed by a simulated execution, with a per-phase
// breakdown in insertion order. Monotone over a run; the phase rounds always
// sum to the total.
class CostLedger {
 public:
  struct PhaseCost {
    std::string label;
    std::uint64_t rounds = 0;
    std::uint64_t messages = 0;
  };

  void charge(std::string_view phase, std::uint64_t rounds, std::uint64_t messages);

  std::uint64_t rounds() const { return rounds_; }
  std::uint64_t messages() const { return messages_; }
  const std::vector<PhaseCost>& phases() const { return phases_; }
  std::uint64_t phase_rounds(std::string_view label) const;
  std::uint64_t phase_messages(std::string_view label) const;

  std::string to_json_string() const;

 private:
  std::uint64_t rounds_ = 0;
  std::uint64_t messages_ = 0;
  std::vector<PhaseCost> phases_;
};

// Deterministic round-synchronous simulator of an n-node clique with
// per-pair bandwidth limits and a charged routing primitive for the
// Information Distribution Task. Single-threaded; one engine per run.
class CliqueEngine {
 public:
  using Payload = std::vector<Word>;
  using SendMap = std::map<NodeId, std::map<NodeId, Payload>>;

  CliqueEngine(int n, SimConfig cfg = {});

  int n() const { return n_; }
  const SimConfig& config() const { return cfg_; }
  CostLedger& ledger() { return ledger_; }
  const CostLedger& ledger() const { return ledger_; }

  // Charges to the engine accrue under this label until the next call.
  void set_phase(std::string label) { phase_ = std::move(label); }
  const std::string& phase() const { return phase_; }

  // One synchronous round: every (src, dst) pair carries at most one payload
  // of at most B words. Returns deliveries keyed by destination then source.
  SendMap direct_round(const SendMap& sends);

  // Every node receives every broadcast word; one round. The returned map is
  // the knowledge every node holds afterwards.
  std::map<NodeId, Word> broadcast_round(const std::map<NodeId, Word>& values);

  // Routes a batch with at most n messages per source and per destination,
  // charging the configured constant number of rounds. Returns the batch
  // sorted by (dst, src, submission index).
  std::vector<Envelope> lenzen_route(std::vector<Envelope> batch);

  // Splits an oversized batch into capacity-respecting routing invocations,
  // charging each. Chunk order follows (src, dst, submission index).
  std::vector<Envelope> route_chunked(std::vector<Envelope> batch);

  // Accounting hook for costs computed outside the message primitives
  // (e.g. a flat black-box charge).
  void charge(std::uint64_t rounds, std::uint64_t messages) {
    ledger_.charge(phase_, rounds, messages);
  }

 private:
  void check_node(NodeId v, const char* role) const;

  int n_;
  SimConfig cfg_;
  CostLedger ledger_;
  std::string phase_ = "default";
};

}  // namespace cliquesim
