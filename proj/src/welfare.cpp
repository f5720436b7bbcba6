#include "netforge/welfare.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "netforge/topology.hpp"

namespace netforge {

namespace {

constexpr double kClassTolerance = 1e-12;

std::vector<double> per_node_welfare(const Network& g, const UtilityParams& params) {
  const int n = g.node_count();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  const double direct_unit = params.b(1) - params.c;
  for (NodeId j = 0; j < n; ++j) {
    double value = g.degree(j) * direct_unit;
    const auto dist = shortest_distances(g, j);
    for (const Distance& d : dist) {
      if (d && *d > 1) value += params.benefit(d);
    }
    out[static_cast<std::size_t>(j)] = value;
  }
  return out;
}

double total_welfare(const Network& g, const UtilityParams& params) {
  const auto parts = per_node_welfare(g, params);
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

}  // namespace

std::string to_string(EfficientClass cls) {
  switch (cls) {
    case EfficientClass::Null: return "null";
    case EfficientClass::Star: return "star";
    case EfficientClass::Complete: return "complete";
    case EfficientClass::Boundary: return "boundary";
  }
  return "unknown";
}

WelfareReport welfare(const Network& g, const UtilityParams& params) {
  WelfareReport report;
  report.per_node = per_node_welfare(g, params);
  report.total = std::accumulate(report.per_node.begin(), report.per_node.end(), 0.0);
  if (g.node_count() >= 2) {
    report.efficient_class = efficient_class(params, g.node_count());
    if (is_connected(g)) report.relative_to_star = relative_efficiency(g, params);
  }
  return report;
}

EfficientClass efficient_class(const UtilityParams& params, int mu) {
  if (mu < 2) throw std::invalid_argument("efficient class needs mu >= 2");
  const double b1 = params.b(1), b2 = params.b(2);
  const double split = b1 - b2;
  if (std::abs(params.c - split) <= kClassTolerance) return EfficientClass::Boundary;
  if (params.c < split) return EfficientClass::Complete;
  if (params.c <= b1 + (mu - 2) / 2.0 * b2 + kClassTolerance) return EfficientClass::Star;
  return EfficientClass::Null;
}

double relative_efficiency(const Network& g, const UtilityParams& params) {
  if (g.node_count() < 2) throw GraphError("relative efficiency needs at least two nodes");
  if (!is_connected(g)) throw GraphError("relative efficiency needs a connected graph");
  const Network star = build_canonical(TopologyTarget::star(), g.node_count());
  return total_welfare(g, params) / total_welfare(star, params);
}

}  // namespace netforge
