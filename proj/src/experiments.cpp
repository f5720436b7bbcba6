#include "netforge/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <span>
#include <thread>

#include "netforge/ged.hpp"

namespace netforge {

std::string to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::A: return "A";
    case OutcomeKind::B: return "B";
    case OutcomeKind::C: return "C";
    case OutcomeKind::D: return "D";
    case OutcomeKind::Unclassified: return "unclassified";
  }
  return "unknown";
}

OutcomeClass classify(const GedSeries& series) {
  constexpr std::size_t kRestoreWindow = 3;
  constexpr std::size_t kTailWindow = 5;
  OutcomeClass out;
  out.ged_series = series;
  if (series.empty()) return out;
  const auto positive = [](const auto& point) { return point.second > 0; };
  if (std::ranges::none_of(series, positive)) {
    out.kind = OutcomeKind::A;
    return out;
  }
  std::size_t zero_run = 0;
  while (zero_run < series.size() && series[series.size() - 1 - zero_run].second == 0) ++zero_run;
  if (zero_run >= kRestoreWindow) {
    out.kind = OutcomeKind::B;
    out.restore_entry = series[series.size() - zero_run].first;
    return out;
  }
  if (series.size() < kTailWindow) return out;
  const auto tail = std::span(series).last(kTailWindow);
  const bool constant = std::ranges::all_of(tail, [&](const auto& p) { return p.second == tail[0].second; });
  if (constant && tail[0].second > 0) {
    out.kind = OutcomeKind::C;
    return out;
  }
  bool increasing = true;
  for (std::size_t i = 1; i < tail.size(); ++i) increasing = increasing && tail[i].second > tail[i - 1].second;
  if (increasing) out.kind = OutcomeKind::D;
  return out;
}

GedSeries ged_series(const FormationTrace& trace, const TopologyTarget& target) {
  GedSeries out;
  for (const Snapshot& s : trace.snapshots) {
    const int n = s.graph.node_count();
    const int ged = recognize(s.graph, target) ? 0 : ged_to_target(s.graph, target).distance;
    if (!out.empty() && out.back().first == n) {
      out.back().second = ged;
    } else {
      out.emplace_back(n, ged);
    }
  }
  return out;
}

double DeviationResult::majority_share() const {
  if (per_seed.empty()) return 0.0;
  const auto it = counts.find(majority);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(per_seed.size());
}

ConditionSchedule deviation_schedule(const DeviationSpec& spec) {
  if (spec.deviation_node < 2) throw std::invalid_argument("deviation node must be at least 2");
  if (spec.target.kind == TopologyKind::KStar && spec.deviation_node <= 2 * spec.target.parameter) {
    throw std::invalid_argument("k-star deviation node must follow the 2k-node base graph");
  }
  const auto region = region_for(spec.target, spec.benefit, spec.sigma);
  const UtilityParams restored = sample_levels(region, spec.restore_levels);
  const UtilityParams before = sample_levels(region, spec.base_levels.value_or(spec.restore_levels));
  ConditionSchedule schedule(before);
  schedule.set_from(spec.deviation_node, deviate(region, before, spec.parameter, spec.sign, spec.fraction));
  schedule.set_from(spec.deviation_node + 1, restored);
  return schedule;
}

Network formation_base(const TopologyTarget& target) {
  if (target.kind == TopologyKind::KStar) return kstar_base_graph(target.parameter);
  return Network(1);
}

void parallel_for(int count, int jobs, const std::function<void(int)>& task) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

DeviationResult run_deviation(const DeviationSpec& spec, int jobs) {
  const ConditionSchedule schedule = deviation_schedule(spec);
  const Network base = formation_base(spec.target);
  DeviationResult result;
  result.per_seed.resize(spec.seeds.size());
  parallel_for(static_cast<int>(spec.seeds.size()), jobs, [&](int i) {
    const std::uint64_t seed = spec.seeds[static_cast<std::size_t>(i)];
    const FormationTrace trace = run_formation(schedule, spec.n_max, base, {spec.max_steps_per_entry, seed});
    SeedOutcome& out = result.per_seed[static_cast<std::size_t>(i)];
    out.seed = seed;
    out.outcome = classify(ged_series(trace, spec.target));
    out.final_graph = trace.final_graph();
    for (std::size_t s = 1; s < trace.snapshots.size(); ++s) {
      if (trace.snapshots[s].graph.node_count() == trace.snapshots[s - 1].graph.node_count()) {
        out.stay_outs.push_back(trace.snapshots[s].entry_index);
      }
    }
  });
  for (const auto& s : result.per_seed) ++result.counts[s.outcome.kind];
  int best = -1;
  for (const auto& [kind, count] : result.counts) {
    if (count > best) {
      best = count;
      result.majority = kind;
    }
  }
  return result;
}

double kstar_c0_threshold(int k, int n, const std::vector<int>& leaf_counts, const BenefitSequence& b) {
  if (k < 2 || static_cast<int>(leaf_counts.size()) != k) {
    throw std::invalid_argument("need one leaf count per center");
  }
  const auto lowest = std::ranges::min_element(leaf_counts);
  int others = 0;
  for (auto it = leaf_counts.begin(); it != leaf_counts.end(); ++it) {
    if (it != lowest) others += *it;
  }
  const int not_pk_plus_one = (n - 1) % k != 0 ? 1 : 0;
  const double ratio = static_cast<double>(others + not_pk_plus_one) / static_cast<double>(k + *lowest - 2);
  return (b.at(3) - b.at(4)) * (ratio - 1.0);
}

int restoration_lag(int k, int n) {
  if (k < 2) throw std::invalid_argument("restoration lag needs k >= 2");
  return (k + 1 - n % k) % k;
}

}  // namespace netforge
