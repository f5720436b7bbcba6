#pragma once

#include <string>
#include <string_view>

#include "netforge/graph.hpp"

namespace netforge {

enum class TopologyKind { Star, Complete, BipartiteTuran, TwoStar, KStar, DiameterAtMost };

/// Target family. `parameter` is k for KStar (>= 3) and d for DiameterAtMost (>= 1).
struct TopologyTarget {
  TopologyKind kind = TopologyKind::Star;
  int parameter = 0;

  static TopologyTarget star() { return {TopologyKind::Star, 0}; }
  static TopologyTarget complete() { return {TopologyKind::Complete, 0}; }
  static TopologyTarget bipartite_turan() { return {TopologyKind::BipartiteTuran, 0}; }
  static TopologyTarget two_star() { return {TopologyKind::TwoStar, 0}; }
  static TopologyTarget k_star(int k);
  static TopologyTarget diameter_at_most(int d);

  /// Number of centers for TwoStar/KStar, 0 otherwise.
  [[nodiscard]] int centers() const;

  friend bool operator==(const TopologyTarget&, const TopologyTarget&) = default;
};

/// Parses "star", "complete", "turan", "2star", "kstar:K", "diam:D".
TopologyTarget parse_target(std::string_view text);
std::string to_string(const TopologyTarget& t);

bool recognize(const Network& g, const TopologyTarget& t);

/// Canonical member with n nodes and lowest-id centers. Throws GraphError
/// when n is incompatible with t.
Network build_canonical(const TopologyTarget& t, int n);

/// k-clique on 0..k-1 with one pendant leaf k+i on each center i.
Network kstar_base_graph(int k);

/// True when g is K_{a,b} for the given part sizes (order-free).
bool is_complete_bipartite(const Network& g, int part_a, int part_b);

}  // namespace netforge
