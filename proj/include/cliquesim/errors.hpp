#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cliquesim {

// Base for everything the simulator can raise on a legal API surface.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// A single (src, dst) pair carried more than one payload, or an oversized
// payload, in one direct round.
class BandwidthViolation : public SimError {
 public:
  explicit BandwidthViolation(const std::string& what) : SimError(what) {}
};

// A routing batch exceeded the per-source or per-destination message cap.
class RoutingCapacityExceeded : public SimError {
 public:
  enum class Direction { Source, Destination };

  RoutingCapacityExceeded(std::uint32_t node, Direction dir, std::uint64_t count,
                          std::uint64_t cap)
      : SimError("routing capacity exceeded at node " + std::to_string(node) +
                 (dir == Direction::Source ? " (source overflow: " : " (destination overflow: ") +
                 std::to_string(count) + " > " + std::to_string(cap) + ")"),
        node(node),
        direction(dir) {}

  std::uint32_t node;
  Direction direction;
};

// Input graph to the MIS simulation violates its maximum-degree precondition.
class DegreeTooHigh : public SimError {
 public:
  explicit DegreeTooHigh(const std::string& what) : SimError(what) {}
};

// Greedy coloring needed more colors than the configured palette admits.
class ColoringOverflow : public SimError {
 public:
  explicit ColoringOverflow(const std::string& what) : SimError(what) {}
};

// A parallel round plan cannot fit within per-node send/receive budgets.
class BudgetInfeasible : public SimError {
 public:
  explicit BudgetInfeasible(const std::string& what) : SimError(what) {}
};

// Aspect ratio asked of a point set with fewer than two points.
class UndefinedAspectRatio : public SimError {
 public:
  explicit UndefinedAspectRatio(const std::string& what) : SimError(what) {}
};

// A metric-only algorithm was handed an instance without a metric.
class MetricRequired : public SimError {
 public:
  explicit MetricRequired(const std::string& what) : SimError(what) {}
};

// Invalid experiment or simulation configuration; message names the
// violated constraint.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cliquesim
