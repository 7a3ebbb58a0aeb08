#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cliquesim/clique_engine.hpp"
#include "cliquesim/instance.hpp"
#include "json.hpp"

namespace cliquesim {

enum class Algo { Ruling3, Mis, Mst, MflGeneral, MflDoubling };

std::string to_string(Algo a);
Algo algo_from_string(const std::string& s);

struct ExperimentConfig {
  Algo algo = Algo::Ruling3;
  InstanceSpec instance;        // per-seed runs override instance.seed
  double r = 0.05;              // threshold radius for metric algorithms
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 1;   // half-open
  SimConfig sim;
  std::string out;              // output path; empty writes to stdout
  std::string format;           // "jsonl" (run) or "csv" (sweep)

  void validate() const;
};

nlohmann::ordered_json config_json(const ExperimentConfig& cfg);
std::string config_fingerprint(const ExperimentConfig& cfg);  // hex digest

struct RecordOutcome {
  nlohmann::ordered_json record;
  bool hard_fail = false;  // a verification failed with no flagged whp event
};

// One algorithm execution on the instance derived from (config, seed).
RecordOutcome run_single(const ExperimentConfig& cfg, std::uint64_t seed);

struct RunSummary {
  std::vector<nlohmann::ordered_json> records;
  nlohmann::ordered_json aggregate;
  int hard_failures = 0;
};

RunSummary run_experiment(const ExperimentConfig& cfg);

std::string summary_to_jsonl(const RunSummary& summary);

// Scaling table over a list of sizes; duplicates are dropped (the count of
// dropped entries is reported through `duplicates`).
std::string sweep_csv(const ExperimentConfig& cfg, std::vector<int> ns,
                      int* duplicates = nullptr);

// Re-checks stored records against the oracles; returns the number of
// failing records and logs one line per record.
int verify_jsonl(std::istream& in, std::ostream& log);

}  // namespace cliquesim
