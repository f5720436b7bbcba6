#pragma once

#include <optional>
#include <vector>

#include "netforge/graph.hpp"

namespace netforge {

/// Distance-indexed benefit b_1 > b_2 > ... ; b at Unreachable is 0.
class BenefitSequence {
 public:
  /// b_i = delta^i, delta in (0, 1).
  static BenefitSequence geometric(double delta);
  /// Explicit b_1..b_k; distances past k yield 0.
  static BenefitSequence explicit_values(std::vector<double> values);

  [[nodiscard]] double at(int distance) const;
  [[nodiscard]] double operator()(Distance d) const { return d ? at(*d) : 0.0; }

  [[nodiscard]] std::optional<double> delta() const { return delta_; }
  [[nodiscard]] const std::vector<double>& explicit_list() const { return explicit_; }

  friend bool operator==(const BenefitSequence&, const BenefitSequence&) = default;

 private:
  std::optional<double> delta_;
  std::vector<double> explicit_;
  std::vector<double> table_;  // table_[i] = b_i, index 0 unused
};

struct UtilityParams {
  BenefitSequence benefit = BenefitSequence::geometric(0.8);
  double c = 0.0;
  double c0 = 0.0;
  double gamma = 0.0;

  /// Throws std::invalid_argument when gamma is outside [0,1) or a cost is negative.
  void validate() const;

  [[nodiscard]] double b(int i) const { return benefit.at(i); }

  friend bool operator==(const UtilityParams&, const UtilityParams&) = default;
};

/// Set when evaluating a newly entering node's first-link decision.
struct EntryContext {
  std::optional<NodeId> entrant;
  std::optional<NodeId> target;
};

struct UtilityBreakdown {
  double entry_fee = 0.0;
  double direct = 0.0;      // d_j (b_1 - c)
  double indirect = 0.0;    // benefits from nodes at distance > 1
  double rent_paid = 0.0;
  double bridging = 0.0;

  [[nodiscard]] double total() const { return direct + indirect - rent_paid + bridging - entry_fee; }
};

UtilityBreakdown utility_breakdown(const Network& g, NodeId j, const UtilityParams& params,
                                   const EntryContext& ctx = {});

double utility(const Network& g, NodeId j, const UtilityParams& params, const EntryContext& ctx = {});

/// Breakdown of every node, no entrant. One analysis pass.
std::vector<UtilityBreakdown> utility_breakdowns(const Network& g, const NetworkAnalysis& analysis,
                                                 const UtilityParams& params);

std::vector<double> utilities(const Network& g, const UtilityParams& params);

struct LinkChange {
  enum class Kind { None, Add, Delete };
  Kind kind = Kind::None;
  NodeId other = -1;
};

/// Returns g with `change` applied on the link (j, change.other).
/// Throws GraphError when the change is not valid for j.
Network apply_change(const Network& g, NodeId j, const LinkChange& change);

double utility_delta(const Network& g, NodeId j, const LinkChange& change, const UtilityParams& params,
                     const EntryContext& ctx = {});

}  // namespace netforge
