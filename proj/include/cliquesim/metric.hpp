#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliquesim/graph.hpp"

namespace cliquesim {

// Metric space over n points. Euclidean instances keep coordinates and
// compute distances on demand; explicit instances keep the full matrix.
// Immutable after construction and safe to share across runs.
class MetricSpace {
 public:
  static MetricSpace from_points(std::vector<std::vector<double>> points);
  static MetricSpace from_matrix(int n, std::vector<double> row_major);

  int n() const { return n_; }

  double dist(NodeId u, NodeId v) const {
    if (!matrix_.empty()) return matrix_[static_cast<std::size_t>(u) * n_ + v];
    if (u == v) return 0.0;
    double s = 0.0;
    const double* a = &coords_[static_cast<std::size_t>(u) * dim_];
    const double* b = &coords_[static_cast<std::size_t>(v) * dim_];
    for (int d = 0; d < dim_; ++d) {
      const double diff = a[d] - b[d];
      s += diff * diff;
    }
    return std::sqrt(s);
  }

  double max_distance() const;  // 0 for n <= 1

  bool has_points() const { return dim_ > 0; }
  int dim() const { return dim_; }
  std::vector<double> point(NodeId v) const;

  // New space with every distance multiplied by lambda > 0.
  MetricSpace scaled(double lambda) const;

  // Exhaustive check of the metric axioms (symmetry, identity, positivity,
  // triangle inequality). O(n^3); intended for n <= 256.
  // Returns an empty string when all axioms hold, else a description.
  std::string check_invariants() const;

 private:
  int n_ = 0;
  int dim_ = 0;
  std::vector<double> coords_;  // n x dim, row-major (euclidean only)
  std::vector<double> matrix_;  // n x n, row-major (explicit only)
};

// Distance-threshold graph: edge {u,v} iff u != v and dist(u,v) <= r.
Graph threshold_graph(const MetricSpace& m, double r);

// Max over min pairwise distance within Y; |Y| >= 2 required.
double aspect_ratio(const MetricSpace& m, const std::vector<NodeId>& y);

// The growth-bounded property |Y| <= 2^(rho * ceil(log2 aspect(Y))),
// evaluated literally (it degenerates to false when aspect(Y) = 1).
bool growth_bound_check(const MetricSpace& m, const std::vector<NodeId>& y, double rho);

}  // namespace cliquesim
