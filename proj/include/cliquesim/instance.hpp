#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliquesim/graph.hpp"
#include "cliquesim/metric.hpp"

namespace cliquesim {

enum class InstanceKind { Euclidean, Gnp };

std::string to_string(InstanceKind k);
InstanceKind instance_kind_from_string(const std::string& s);

struct InstanceSpec {
  InstanceKind kind = InstanceKind::Euclidean;
  int n = 0;
  int dim = 2;         // euclidean only
  double p = 0.1;      // gnp only
  std::uint64_t seed = 0;
  double fcost_lo = 0.1;  // facility opening cost distribution
  double fcost_hi = 2.0;

  void validate() const;
};

// A generated problem instance. Euclidean instances carry a metric (and the
// graph field is empty); gnp instances carry only a graph.
struct Instance {
  InstanceSpec spec;
  std::optional<MetricSpace> metric;
  std::vector<std::vector<double>> points;  // euclidean coordinates
  std::optional<Graph> graph;               // gnp adjacency
  std::vector<double> facility_costs;

  const MetricSpace& require_metric() const;
  const Graph& require_graph() const;

  std::string to_json_string() const;
  static Instance from_json_string(const std::string& text);
};

// Deterministic in the spec: the same spec always yields the same instance.
Instance generate(const InstanceSpec& spec);

}  // namespace cliquesim
