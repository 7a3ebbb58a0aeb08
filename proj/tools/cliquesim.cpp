#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cliquesim/harness.hpp"
#include "cliquesim/instance.hpp"

namespace {

using namespace cliquesim;

// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 capacity/infeasibility surfaced from the simulation.
constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;

struct CommonFlags {
  std::string algo = "ruling3";
  int n = 64;
  int dim = 2;
  double p = -1.0;  // <0 means euclidean instance
  double r = 0.05;
  std::string seeds = "0";
  std::uint64_t seed = 0;
  bool seed_set = false;
  double c1 = 2.0;
  double c2 = 5.0;
  double rho = 2.0;
  unsigned lenzen_rounds = 2;
  unsigned swmis_rounds = 4;
  std::string out;
  std::string format;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--algo", f.algo, "ruling3|mis|mst|mfl-general|mfl-doubling");
  cmd->add_option("--n", f.n, "instance size");
  cmd->add_option("--dim", f.dim, "euclidean dimension");
  cmd->add_option("--p", f.p, "edge probability (selects a gnp instance)");
  cmd->add_option("--r", f.r, "threshold radius for metric algorithms");
  cmd->add_option("--seeds", f.seeds, "seed range a:b (half-open) or single seed");
  cmd->add_option("--seed", f.seed, "single seed")->each([&](const std::string&) {
    f.seed_set = true;
  });
  cmd->add_option("--c1", f.c1, "sparsifier growth constant (> 1)");
  cmd->add_option("--c2", f.c2, "sparsifier stretch constant (> c1 + 2)");
  cmd->add_option("--rho", f.rho, "doubling-dimension parameter");
  cmd->add_option("--lenzen-rounds", f.lenzen_rounds, "rounds charged per routing call");
  cmd->add_option("--swmis-rounds", f.swmis_rounds, "flat charge of the oracle MIS");
  cmd->add_option("--out", f.out, "output path (default stdout)");
  cmd->add_option("--format", f.format, "jsonl|csv");
}

std::pair<std::uint64_t, std::uint64_t> parse_seeds(const CommonFlags& f) {
  if (f.seed_set) return {f.seed, f.seed + 1};
  const auto colon = f.seeds.find(':');
  if (colon == std::string::npos) {
    const auto s = std::stoull(f.seeds);
    return {s, s + 1};
  }
  return {std::stoull(f.seeds.substr(0, colon)), std::stoull(f.seeds.substr(colon + 1))};
}

ExperimentConfig build_config(const CommonFlags& f) {
  ExperimentConfig cfg;
  cfg.algo = algo_from_string(f.algo);
  cfg.instance.kind = f.p >= 0.0 ? InstanceKind::Gnp : InstanceKind::Euclidean;
  cfg.instance.n = f.n;
  cfg.instance.dim = f.dim;
  if (f.p >= 0.0) cfg.instance.p = f.p;
  cfg.r = f.r;
  std::tie(cfg.seed_begin, cfg.seed_end) = parse_seeds(f);
  cfg.sim.c1 = f.c1;
  cfg.sim.c2 = f.c2;
  cfg.sim.rho = f.rho;
  cfg.sim.lenzen_rounds = f.lenzen_rounds;
  cfg.sim.swmis_rounds = f.swmis_rounds;
  cfg.out = f.out;
  cfg.format = f.format;
  return cfg;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output path: " + path);
  out << content;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"congested-clique algorithm simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, gen_flags;
  std::vector<int> sweep_ns;
  std::string verify_in;

  auto* run_cmd = app.add_subcommand("run", "execute an algorithm over a seed range");
  add_common(run_cmd, run_flags);

  auto* sweep_cmd = app.add_subcommand("sweep", "scaling table over instance sizes");
  add_common(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--n-list", sweep_ns, "instance sizes to sweep")->required();

  auto* verify_cmd = app.add_subcommand("verify", "re-check stored records");
  verify_cmd->add_option("--in", verify_in, "jsonl records file")->required();

  auto* gen_cmd = app.add_subcommand("gen", "emit an instance file");
  add_common(gen_cmd, gen_flags);

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    auto cfg = build_config(run_flags);
    if (cfg.format == "csv") throw ConfigError("run emits jsonl records; use --format jsonl");
    const auto summary = run_experiment(cfg);
    emit(cfg.out, summary_to_jsonl(summary));
    return summary.hard_failures > 0 ? kExitVerification : kExitOk;
  }
  if (sweep_cmd->parsed()) {
    auto cfg = build_config(sweep_flags);
    if (cfg.format == "jsonl") throw ConfigError("sweep emits csv tables; use --format csv");
    int dups = 0;
    const auto csv = sweep_csv(cfg, sweep_ns, &dups);
    if (dups > 0)
      std::cerr << "warning: dropped " << dups << " duplicate size(s) from the sweep\n";
    emit(cfg.out, csv);
    return kExitOk;
  }
  if (verify_cmd->parsed()) {
    std::ifstream in(verify_in);
    if (!in) throw ConfigError("cannot open records file: " + verify_in);
    const int failures = verify_jsonl(in, std::cout);
    return failures > 0 ? kExitVerification : kExitOk;
  }
  // gen
  auto cfg = build_config(gen_flags);
  cfg.instance.seed = cfg.seed_begin;
  const auto inst = generate(cfg.instance);
  emit(cfg.out, inst.to_json_string() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const cliquesim::RoutingCapacityExceeded& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const cliquesim::BudgetInfeasible& e) {
    std::cerr << "infeasible plan: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const cliquesim::DegreeTooHigh& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const cliquesim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cliquesim::MetricRequired& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  }
}
