#pragma once

#include <utility>
#include <vector>

#include "netforge/utility.hpp"

namespace netforge {

/// Utility parameters as a function of entry index ("dynamic conditions").
/// Entry index i is the i-th entry attempt, 1-based; slot 1 is the founder.
class ConditionSchedule {
 public:
  ConditionSchedule() = default;
  explicit ConditionSchedule(UtilityParams base) : base_(std::move(base)) {}

  /// Params in force from `entry_index` onward until the next override.
  void set_from(int entry_index, UtilityParams params);

  /// Latest override at or below `entry_index`, else the base.
  [[nodiscard]] const UtilityParams& at(int entry_index) const;

  /// True when some override starts strictly after `entry_index`.
  [[nodiscard]] bool changes_after(int entry_index) const;

  [[nodiscard]] const UtilityParams& base() const { return base_; }
  [[nodiscard]] const std::vector<std::pair<int, UtilityParams>>& overrides() const { return overrides_; }

 private:
  UtilityParams base_;
  std::vector<std::pair<int, UtilityParams>> overrides_;  // sorted by index
};

}  // namespace netforge
