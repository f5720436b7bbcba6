#include "netforge/dynamics.hpp"

#include <unordered_map>

namespace netforge {

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::StatusQuo: return "status_quo";
    case MoveKind::AddLink: return "add";
    case MoveKind::DeleteLink: return "delete";
    case MoveKind::Enter: return "enter";
    case MoveKind::StayOut: return "stay_out";
  }
  return "unknown";
}

MoveKind parse_move_kind(const std::string& text) {
  for (auto k : {MoveKind::StatusQuo, MoveKind::AddLink, MoveKind::DeleteLink, MoveKind::Enter, MoveKind::StayOut}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown move kind '" + text + "'");
}

namespace {

// Memoizes per-node utilities by edge set. Best responses of different
// nodes revisit the same neighbouring graphs (j deleting jt is t deleting tj).
class UtilityCache {
 public:
  explicit UtilityCache(const UtilityParams& params) : params_(params) {}

  const std::vector<double>& get(const Network& g) {
    key_.clear();
    key_.push_back(static_cast<char32_t>(g.node_count()));
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.neighbors(u)) {
        if (u < v) {
          key_.push_back(static_cast<char32_t>(u));
          key_.push_back(static_cast<char32_t>(v));
        }
      }
    }
    if (auto it = memo_.find(key_); it != memo_.end()) return it->second;
    if (memo_.size() > kMaxEntries) memo_.clear();
    return memo_.emplace(key_, utilities(g, params_)).first->second;
  }

 private:
  static constexpr std::size_t kMaxEntries = 1 << 15;
  const UtilityParams& params_;
  std::u32string key_;
  std::unordered_map<std::u32string, std::vector<double>> memo_;
};

Move best_response_cached(Network& work, NodeId j, UtilityCache& cache) {
  const std::vector<double> base = cache.get(work);
  Move best{j, MoveKind::StatusQuo, std::nullopt};
  double best_gain = kUtilityTolerance;
  for (NodeId t = 0; t < work.node_count(); ++t) {
    if (t == j) continue;
    double gain = 0.0;
    MoveKind kind;
    if (work.has_edge(j, t)) {
      work.remove_edge(j, t);
      gain = cache.get(work)[static_cast<std::size_t>(j)] - base[static_cast<std::size_t>(j)];
      work.add_edge(j, t);
      kind = MoveKind::DeleteLink;
    } else {
      work.add_edge(j, t);
      const auto& after = cache.get(work);
      const bool accepted =
          after[static_cast<std::size_t>(t)] >= base[static_cast<std::size_t>(t)] - kUtilityTolerance;
      gain = after[static_cast<std::size_t>(j)] - base[static_cast<std::size_t>(j)];
      work.remove_edge(j, t);
      if (!accepted) continue;
      kind = MoveKind::AddLink;
    }
    // strictly better by more than the tolerance; ties keep the lower id
    if (gain > best_gain && (best.kind == MoveKind::StatusQuo || gain > best_gain + kUtilityTolerance)) {
      best = {j, kind, t};
      best_gain = gain;
    }
  }
  return best;
}

StabilityReport pairwise_stability(Network& work, UtilityCache& cache) {
  StabilityReport report;
  const std::vector<double> base = cache.get(work);
  const int n = work.node_count();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const auto ui = base[static_cast<std::size_t>(i)];
      const auto uj = base[static_cast<std::size_t>(j)];
      if (work.has_edge(i, j)) {
        work.remove_edge(i, j);
        const auto& after = cache.get(work);
        const double gi = after[static_cast<std::size_t>(i)] - ui;
        const double gj = after[static_cast<std::size_t>(j)] - uj;
        work.add_edge(i, j);
        if (gi > kUtilityTolerance || gj > kUtilityTolerance) {
          report = {false, Edge{i, j}, true, gi > kUtilityTolerance ? i : j};
          return report;
        }
      } else {
        work.add_edge(i, j);
        const auto& after = cache.get(work);
        const double gi = after[static_cast<std::size_t>(i)] - ui;
        const double gj = after[static_cast<std::size_t>(j)] - uj;
        work.remove_edge(i, j);
        const bool i_wants = gi > kUtilityTolerance && gj >= -kUtilityTolerance;
        const bool j_wants = gj > kUtilityTolerance && gi >= -kUtilityTolerance;
        if (i_wants || j_wants) {
          report = {false, Edge{i, j}, false, i_wants ? i : j};
          return report;
        }
      }
    }
  }
  return report;
}

// Shared evolution loop; appends alterations to `events` when given.
int evolve_in_place(Network& g, const UtilityParams& params, int max_steps, std::mt19937_64& rng,
                    std::vector<Event>* events, int& step_counter) {
  UtilityCache cache(params);
  const int n = g.node_count();
  const int limit = max_steps > 0 ? max_steps : 10 * n * n;
  std::vector<char> quiet(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> active;
  int steps = 0;
  while (true) {
    active.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (!quiet[static_cast<std::size_t>(v)]) active.push_back(v);
    }
    if (active.empty()) {
      // Every node prefers the status quo; check every pair before declaring
      // the state stable.
      const auto report = pairwise_stability(g, cache);
      if (report.stable) return steps;
      // Only reachable through tolerance edge cases; play the witness move.
      if (steps >= limit) throw StepLimitExceeded(limit);
      const Edge e = *report.witness;
      const NodeId actor = report.witness_actor;
      const NodeId other = actor == e.u ? e.v : e.u;
      Move move{actor, report.witness_is_edge ? MoveKind::DeleteLink : MoveKind::AddLink, other};
      if (report.witness_is_edge) {
        g.remove_edge(e.u, e.v);
      } else {
        g.add_edge(e.u, e.v);
      }
      ++steps;
      if (events) events->push_back({++step_counter, move, true});
      continue;
    }
    // Uniform over all nodes conditioned on drawing one that may still move.
    std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
    const NodeId j = active[pick(rng)];
    const Move move = best_response_cached(g, j, cache);
    if (move.kind == MoveKind::StatusQuo) {
      quiet[static_cast<std::size_t>(j)] = 1;
      continue;
    }
    if (steps >= limit) throw StepLimitExceeded(limit);
    if (move.kind == MoveKind::AddLink) {
      g.add_edge(j, *move.target);
    } else {
      g.remove_edge(j, *move.target);
    }
    ++steps;
    if (events) events->push_back({++step_counter, move, true});
    std::fill(quiet.begin(), quiet.end(), 0);
  }
}

}  // namespace

Move best_response(const Network& g, NodeId j, const UtilityParams& params) {
  if (!g.has_node(j)) throw GraphError("unknown node id " + std::to_string(j));
  Network work = g;
  UtilityCache cache(params);
  return best_response_cached(work, j, cache);
}

Move entry_decision(const Network& g, const UtilityParams& params) {
  const NodeId entrant = g.node_count();
  if (entrant == 0) return {0, MoveKind::Enter, std::nullopt};  // founder
  const auto before = utilities(g, params);
  Network work = g;
  work.add_node();
  Move best{entrant, MoveKind::StayOut, std::nullopt};
  double best_payoff = kUtilityTolerance;
  for (NodeId t = 0; t < entrant; ++t) {
    work.add_edge(entrant, t);
    const auto after = utilities(work, params);
    work.remove_edge(entrant, t);
    if (after[static_cast<std::size_t>(t)] < before[static_cast<std::size_t>(t)] - kUtilityTolerance) continue;
    const double payoff = after[static_cast<std::size_t>(entrant)] - params.c0 * g.degree(t);
    if (payoff > best_payoff && (best.kind == MoveKind::StayOut || payoff > best_payoff + kUtilityTolerance)) {
      best = {entrant, MoveKind::Enter, t};
      best_payoff = payoff;
    }
  }
  return best;
}

StabilityReport is_pairwise_stable(const Network& g, const UtilityParams& params) {
  Network work = g;
  UtilityCache cache(params);
  return pairwise_stability(work, cache);
}

EvolutionResult evolve_to_stability(const Network& g, const UtilityParams& params, const EvolutionConfig& cfg) {
  params.validate();
  EvolutionResult out{g, 0};
  std::mt19937_64 rng(cfg.rng_seed);
  int counter = 0;
  out.steps = evolve_in_place(out.graph, params, cfg.max_steps_per_entry, rng, nullptr, counter);
  return out;
}

FormationTrace run_formation(const ConditionSchedule& schedule, int n_max, const Network& base,
                             const EvolutionConfig& cfg) {
  if (base.node_count() < 1) throw GraphError("formation needs a non-empty base graph");
  FormationTrace trace;
  trace.rng_seed = cfg.rng_seed;
  std::mt19937_64 rng(cfg.rng_seed);
  int counter = 0;

  Network g = base;
  int slot = g.node_count();
  evolve_in_place(g, schedule.at(slot), cfg.max_steps_per_entry, rng, &trace.events, counter);
  trace.snapshots.push_back({slot, g});

  while (g.node_count() < n_max) {
    ++slot;
    const UtilityParams& params = schedule.at(slot);
    params.validate();
    const Move decision = entry_decision(g, params);
    const bool entered = decision.kind == MoveKind::Enter;
    trace.events.push_back({++counter, decision, entered});
    if (entered) {
      g.add_node();
      g.add_edge(decision.actor, *decision.target);
    }
    evolve_in_place(g, params, cfg.max_steps_per_entry, rng, &trace.events, counter);
    trace.snapshots.push_back({slot, g});
    if (!entered && !schedule.changes_after(slot)) break;
  }
  return trace;
}

}  // namespace netforge
