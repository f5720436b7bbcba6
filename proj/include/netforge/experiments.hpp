#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netforge/conditions.hpp"
#include "netforge/dynamics.hpp"
#include "netforge/topology.hpp"

namespace netforge {

enum class OutcomeKind { A, B, C, D, Unclassified };

std::string to_string(OutcomeKind kind);

/// (node count, GED) pairs, one per network size.
using GedSeries = std::vector<std::pair<int, int>>;

struct OutcomeClass {
  OutcomeKind kind = OutcomeKind::Unclassified;
  /// Node count from which the GED stays at zero (class B only).
  std::optional<int> restore_entry;
  GedSeries ged_series;
};

/// A: all zero. B: some positive value, last 3 zero. C: last 5 equal and
/// positive. D: last 5 strictly increasing. Anything else is Unclassified.
OutcomeClass classify(const GedSeries& series);

/// GED to the target after each stable snapshot; a size seen twice (an
/// entrant stayed out) keeps its latest value.
GedSeries ged_series(const FormationTrace& trace, const TopologyTarget& target);

struct DeviationSpec {
  TopologyTarget target = TopologyTarget::star();
  BenefitSequence benefit = BenefitSequence::geometric(0.8);
  std::optional<int> sigma;
  /// Entry index whose entrant meets the deviated conditions; the next index
  /// restores them.
  int deviation_node = 2;
  Parameter parameter = Parameter::C;
  Sign sign = Sign::Negative;
  double fraction = 0.02;
  LevelPoint restore_levels;
  /// Levels in force before the deviation; defaults to restore_levels.
  std::optional<LevelPoint> base_levels;
  int n_max = 20;
  std::vector<std::uint64_t> seeds;
  int max_steps_per_entry = 0;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  OutcomeClass outcome;
  Network final_graph;
  /// Entry indices at which the entrant stayed out.
  std::vector<int> stay_outs;
};

struct DeviationResult {
  std::vector<SeedOutcome> per_seed;
  std::map<OutcomeKind, int> counts;
  OutcomeKind majority = OutcomeKind::Unclassified;

  /// Share of seeds in the majority class.
  [[nodiscard]] double majority_share() const;
};

/// Schedule with the deviated parameters at `deviation_node` and the restored
/// ones from the following index. Throws InfeasibleRegion.
ConditionSchedule deviation_schedule(const DeviationSpec& spec);

/// Base graph for a target: the k-star base graph for KStar, else one node.
Network formation_base(const TopologyTarget& target);

/// Runs every seed (up to `jobs` at a time, 0 = hardware concurrency).
DeviationResult run_deviation(const DeviationSpec& spec, int jobs = 1);

/// Threshold on the positive c0 deviation below which a k-star does not deviate.
/// `leaf_counts` holds the leaves per center; the lowest count picks center C.
double kstar_c0_threshold(int k, int n, const std::vector<int>& leaf_counts, const BenefitSequence& b);

/// Entries needed to restore a k-star after a negative c0 deviation at node n.
int restoration_lag(int k, int n);

/// Runs `count` independent tasks on up to `jobs` threads; task i gets index i.
void parallel_for(int count, int jobs, const std::function<void(int)>& task);

}  // namespace netforge
