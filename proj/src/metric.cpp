#include "cliquesim/metric.hpp"

#include <cmath>
#include <sstream>

#include "cliquesim/errors.hpp"

namespace cliquesim {

MetricSpace MetricSpace::from_points(std::vector<std::vector<double>> points) {
  MetricSpace m;
  m.n_ = static_cast<int>(points.size());
  m.dim_ = m.n_ > 0 ? static_cast<int>(points[0].size()) : 0;
  if (m.dim_ == 0 && m.n_ > 0) throw ConfigError("points must have dimension >= 1");
  m.coords_.reserve(static_cast<std::size_t>(m.n_) * m.dim_);
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != m.dim_)
      throw ConfigError("all points must share one dimension");
    m.coords_.insert(m.coords_.end(), p.begin(), p.end());
  }
  return m;
}

MetricSpace MetricSpace::from_matrix(int n, std::vector<double> row_major) {
  if (row_major.size() != static_cast<std::size_t>(n) * n)
    throw ConfigError("distance matrix must be n x n");
  MetricSpace m;
  m.n_ = n;
  m.matrix_ = std::move(row_major);
  return m;
}

double MetricSpace::max_distance() const {
  double best = 0.0;
  for (NodeId u = 0; u + 1 < static_cast<NodeId>(n_); ++u)
    for (NodeId v = u + 1; v < static_cast<NodeId>(n_); ++v)
      best = std::max(best, dist(u, v));
  return best;
}

std::vector<double> MetricSpace::point(NodeId v) const {
  if (dim_ == 0) throw MetricRequired("metric space has no coordinates");
  return {coords_.begin() + static_cast<std::size_t>(v) * dim_,
          coords_.begin() + static_cast<std::size_t>(v + 1) * dim_};
}

MetricSpace MetricSpace::scaled(double lambda) const {
  if (!(lambda > 0)) throw ConfigError("scale factor must be positive");
  MetricSpace m;
  m.n_ = n_;
  m.matrix_.resize(static_cast<std::size_t>(n_) * n_);
  for (NodeId u = 0; u < static_cast<NodeId>(n_); ++u)
    for (NodeId v = 0; v < static_cast<NodeId>(n_); ++v)
      m.matrix_[static_cast<std::size_t>(u) * n_ + v] = lambda * dist(u, v);
  return m;
}

std::string MetricSpace::check_invariants() const {
  std::ostringstream bad;
  for (NodeId u = 0; u < static_cast<NodeId>(n_); ++u) {
    if (dist(u, u) != 0.0) {
      bad << "dist(" << u << "," << u << ") != 0";
      return bad.str();
    }
    for (NodeId v = u + 1; v < static_cast<NodeId>(n_); ++v) {
      if (dist(u, v) != dist(v, u)) {
        bad << "asymmetry at (" << u << "," << v << ")";
        return bad.str();
      }
      if (!(dist(u, v) > 0.0)) {
        bad << "non-positive distance at (" << u << "," << v << ")";
        return bad.str();
      }
    }
  }
  for (NodeId u = 0; u < static_cast<NodeId>(n_); ++u)
    for (NodeId v = 0; v < static_cast<NodeId>(n_); ++v)
      for (NodeId w = 0; w < static_cast<NodeId>(n_); ++w) {
        // Tiny slack: euclidean distances are themselves rounded.
        if (dist(u, w) > dist(u, v) + dist(v, w) + 1e-12) {
          bad << "triangle violation at (" << u << "," << v << "," << w << ")";
          return bad.str();
        }
      }
  return {};
}

Graph threshold_graph(const MetricSpace& m, double r) {
  if (r < 0) throw ConfigError("threshold radius must be >= 0");
  Graph g(m.n());
  for (NodeId u = 0; u + 1 < static_cast<NodeId>(m.n()); ++u)
    for (NodeId v = u + 1; v < static_cast<NodeId>(m.n()); ++v)
      if (m.dist(u, v) <= r) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
      }
  return g;
}

double aspect_ratio(const MetricSpace& m, const std::vector<NodeId>& y) {
  if (y.size() < 2)
    throw UndefinedAspectRatio("aspect ratio needs at least two points, got " +
                               std::to_string(y.size()));
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      const double d = m.dist(y[i], y[j]);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  return hi / lo;
}

bool growth_bound_check(const MetricSpace& m, const std::vector<NodeId>& y, double rho) {
  const double lambda = aspect_ratio(m, y);
  const double bound = std::exp2(rho * std::ceil(std::log2(lambda)));
  return static_cast<double>(y.size()) <= bound;
}

}  // namespace cliquesim
