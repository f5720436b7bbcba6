#include "netforge/schedule.hpp"

#include <algorithm>

namespace netforge {

void ConditionSchedule::set_from(int entry_index, UtilityParams params) {
  auto it = std::ranges::lower_bound(overrides_, entry_index, {}, &std::pair<int, UtilityParams>::first);
  if (it != overrides_.end() && it->first == entry_index) {
    it->second = std::move(params);
  } else {
    overrides_.insert(it, {entry_index, std::move(params)});
  }
}

const UtilityParams& ConditionSchedule::at(int entry_index) const {
  const UtilityParams* out = &base_;
  for (const auto& [index, params] : overrides_) {
    if (index > entry_index) break;
    out = &params;
  }
  return *out;
}

bool ConditionSchedule::changes_after(int entry_index) const {
  return !overrides_.empty() && overrides_.back().first > entry_index;
}

}  // namespace netforge
