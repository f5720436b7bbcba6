#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "netforge/graph.hpp"
#include "netforge/schedule.hpp"
#include "netforge/utility.hpp"

namespace netforge {

/// Utility comparisons treat differences within this band as ties.
inline constexpr double kUtilityTolerance = 1e-9;

enum class MoveKind { StatusQuo, AddLink, DeleteLink, Enter, StayOut };

std::string to_string(MoveKind kind);
MoveKind parse_move_kind(const std::string& text);

struct Move {
  NodeId actor = -1;
  MoveKind kind = MoveKind::StatusQuo;
  std::optional<NodeId> target;

  friend bool operator==(const Move&, const Move&) = default;
};

struct Event {
  int step = 0;
  Move move;
  bool accepted = true;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Snapshot {
  int entry_index = 0;
  Network graph;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct FormationTrace {
  std::vector<Event> events;
  std::vector<Snapshot> snapshots;
  std::uint64_t rng_seed = 0;

  [[nodiscard]] const Network& final_graph() const { return snapshots.back().graph; }

  friend bool operator==(const FormationTrace&, const FormationTrace&) = default;
};

struct EvolutionConfig {
  /// 0 selects the default of 10 n^2 alterations for an n-node network.
  int max_steps_per_entry = 0;
  std::uint64_t rng_seed = 1;
};

class StepLimitExceeded : public std::runtime_error {
 public:
  explicit StepLimitExceeded(int limit)
      : std::runtime_error("no pairwise stable state within " + std::to_string(limit) + " link alterations"),
        limit_(limit) {}
  [[nodiscard]] int limit() const { return limit_; }

 private:
  int limit_;
};

/// Myopic best response of j: StatusQuo unless some deletion, or some
/// addition the other endpoint would accept, strictly raises j's utility.
/// Equal strict gains go to the lowest target id.
Move best_response(const Network& g, NodeId j, const UtilityParams& params);

/// Decision of the pending entrant (id = g.node_count()). Enter(t) requires a
/// strictly positive entry payoff, fee included, and t not losing utility.
Move entry_decision(const Network& g, const UtilityParams& params);

struct StabilityReport {
  bool stable = true;
  /// Violating link: an edge some endpoint would delete, or a missing link
  /// both endpoints would form.
  std::optional<Edge> witness;
  bool witness_is_edge = false;
  NodeId witness_actor = -1;
};

StabilityReport is_pairwise_stable(const Network& g, const UtilityParams& params);

struct EvolutionResult {
  Network graph;
  int steps = 0;
};

/// Random-order best-response play until no node wants to alter a link.
/// Throws StepLimitExceeded.
EvolutionResult evolve_to_stability(const Network& g, const UtilityParams& params, const EvolutionConfig& cfg);

/// Recursive formation: at each entry index the next node decides whether
/// to enter, then the network evolves to stability under the params in
/// force at that index. A node that stays out retries at later indices
/// while the schedule still has changes ahead.
FormationTrace run_formation(const ConditionSchedule& schedule, int n_max, const Network& base,
                             const EvolutionConfig& cfg);

}  // namespace netforge
