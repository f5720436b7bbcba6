#include "netforge/utility.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace netforge {

namespace {
constexpr int kTableSize = 512;
}

BenefitSequence BenefitSequence::geometric(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  BenefitSequence out;
  out.delta_ = delta;
  out.table_.resize(kTableSize + 1);
  out.table_[0] = 1.0;
  for (int i = 1; i <= kTableSize; ++i) out.table_[static_cast<std::size_t>(i)] = std::pow(delta, i);
  return out;
}

BenefitSequence BenefitSequence::explicit_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("benefit list must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw std::invalid_argument("benefits must be positive");
    if (i > 0 && !(values[i] < values[i - 1])) {
      throw std::invalid_argument("benefits must strictly decay with distance");
    }
  }
  BenefitSequence out;
  out.explicit_ = values;
  out.table_.reserve(values.size() + 1);
  out.table_.push_back(0.0);
  out.table_.insert(out.table_.end(), values.begin(), values.end());
  return out;
}

double BenefitSequence::at(int distance) const {
  if (distance < 1) throw std::invalid_argument("benefit index must be >= 1");
  if (static_cast<std::size_t>(distance) < table_.size()) return table_[static_cast<std::size_t>(distance)];
  if (delta_) return std::pow(*delta_, distance);
  return 0.0;
}

void UtilityParams::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0,1)");
  if (!(c >= 0.0)) throw std::invalid_argument("link cost c must be non-negative");
  if (!(c0 >= 0.0)) throw std::invalid_argument("entry factor c0 must be non-negative");
}

std::vector<UtilityBreakdown> utility_breakdowns(const Network& g, const NetworkAnalysis& a,
                                                 const UtilityParams& params) {
  const int n = g.node_count();
  std::vector<UtilityBreakdown> out(static_cast<std::size_t>(n));
  const double direct_unit = params.b(1) - params.c;
  for (NodeId j = 0; j < n; ++j) out[static_cast<std::size_t>(j)].direct = g.degree(j) * direct_unit;

  const auto& cuts = a.cut_vertices();
  for (NodeId y = 0; y < n; ++y) {
    auto& uy = out[static_cast<std::size_t>(y)];
    for (NodeId z = y + 1; z < n; ++z) {
      if (!a.connected(y, z)) continue;
      const int l = a.hops(y, z);
      if (l < 2) continue;
      const double b = params.b(l);
      auto& uz = out[static_cast<std::size_t>(z)];
      uy.indirect += b;
      uz.indirect += b;
      const int essential = a.essential_count(y, z);
      if (essential == 0 || params.gamma == 0.0) continue;
      const double rent = params.gamma * b;
      uy.rent_paid += rent;
      uz.rent_paid += rent;
      const double share = 2.0 * rent / essential;
      for (NodeId j : cuts) {
        if (a.is_essential(j, y, z)) out[static_cast<std::size_t>(j)].bridging += share;
      }
    }
  }
  return out;
}

UtilityBreakdown utility_breakdown(const Network& g, NodeId j, const UtilityParams& params,
                                   const EntryContext& ctx) {
  if (!g.has_node(j)) throw GraphError("unknown node id " + std::to_string(j));
  double fee = 0.0;
  if (ctx.entrant && *ctx.entrant == j) {
    if (g.degree(j) != 1) throw GraphError("entrant must have exactly one neighbor");
    const NodeId target = g.neighbors(j).front();
    if (ctx.target && *ctx.target != target) throw GraphError("entry target is not the entrant's neighbor");
    // Fee scales with the target's degree before the entrant's link.
    fee = params.c0 * (g.degree(target) - 1);
  }
  const NetworkAnalysis analysis(g);
  auto out = utility_breakdowns(g, analysis, params)[static_cast<std::size_t>(j)];
  out.entry_fee = fee;
  return out;
}

double utility(const Network& g, NodeId j, const UtilityParams& params, const EntryContext& ctx) {
  return utility_breakdown(g, j, params, ctx).total();
}

std::vector<double> utilities(const Network& g, const UtilityParams& params) {
  const NetworkAnalysis analysis(g);
  const auto parts = utility_breakdowns(g, analysis, params);
  std::vector<double> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(p.total());
  return out;
}

Network apply_change(const Network& g, NodeId j, const LinkChange& change) {
  Network out = g;
  switch (change.kind) {
    case LinkChange::Kind::None:
      break;
    case LinkChange::Kind::Add:
      if (!g.has_node(j) || !g.has_node(change.other) || j == change.other || g.has_edge(j, change.other)) {
        throw GraphError("add requires two distinct non-adjacent nodes");
      }
      out.add_edge(j, change.other);
      break;
    case LinkChange::Kind::Delete:
      if (!g.has_edge(j, change.other)) throw GraphError("delete requires an existing incident edge");
      out.remove_edge(j, change.other);
      break;
  }
  return out;
}

double utility_delta(const Network& g, NodeId j, const LinkChange& change, const UtilityParams& params,
                     const EntryContext& ctx) {
  if (change.kind == LinkChange::Kind::None) {
    if (!g.has_node(j)) throw GraphError("unknown node id " + std::to_string(j));
    return 0.0;
  }
  const Network after = apply_change(g, j, change);
  return utility(after, j, params, ctx) - utility(g, j, params, ctx);
}

}  // namespace netforge
