#include "netforge/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace netforge {

namespace {

// Absorbs the rounding in closed-form bounds such as 0.8 - 0.8^2.
constexpr double kBoundTolerance = 1e-12;
// Absolute push for parameters pinned to a single value.
constexpr double kSingletonDeviation = 0.01;

Bound closed(double v) { return {v, true, false}; }
Bound open(double v) { return {v, false, false}; }
Bound implicit_closed(double v) { return {v, true, true}; }
Bound implicit_open(double v) { return {v, false, true}; }

}  // namespace

bool Interval::contains(double x) const {
  const bool above = lo.closed ? x >= lo.value - kBoundTolerance : x > lo.value + kBoundTolerance;
  const bool below = hi.closed ? x <= hi.value + kBoundTolerance : x < hi.value - kBoundTolerance;
  return above && below;
}

bool Interval::empty() const {
  if (lo.closed && hi.closed) return lo.value > hi.value + kBoundTolerance;
  return lo.value >= hi.value - kBoundTolerance;
}

bool Interval::singleton() const {
  return lo.closed && hi.closed && std::abs(hi.value - lo.value) <= kBoundTolerance;
}

std::string Interval::notation() const {
  std::ostringstream os;
  os.precision(12);
  os << (lo.closed ? '[' : '(') << lo.value << ", " << hi.value << (hi.closed ? ']' : ')');
  return os.str();
}

double level_fraction(Level level) {
  switch (level) {
    case Level::L: return 0.1;
    case Level::M: return 0.5;
    case Level::H: return 0.9;
  }
  return 0.5;
}

Level parse_level(const std::string& text) {
  if (text == "L") return Level::L;
  if (text == "M") return Level::M;
  if (text == "H") return Level::H;
  throw std::invalid_argument("level must be L, M or H, got '" + text + "'");
}

char to_char(Level level) {
  switch (level) {
    case Level::L: return 'L';
    case Level::M: return 'M';
    case Level::H: return 'H';
  }
  return '?';
}

ConditionRegion::ConditionRegion(TopologyTarget target, BenefitSequence benefit, std::optional<int> sigma)
    : target_(target), benefit_(std::move(benefit)), sigma_(sigma) {
  if (sigma_ && target_.kind != TopologyKind::TwoStar) sigma_.reset();
  if (sigma_ && *sigma_ < 2) throw std::invalid_argument("sigma must be at least 2");
}

double ConditionRegion::lambda() const {
  if (!sigma_) throw std::logic_error("lambda is only defined for the sigma-bounded 2-star region");
  return std::ceil(*sigma_ / 2.0 - 1.0) * (2 * b(2) - b(3));
}

// Branch (i) threshold (b2-b3)/(lambda-b3); no constraint when lambda <= b3.
bool ConditionRegion::two_star_branch_one(double gamma) const {
  const double denom = lambda() - b(3);
  const double t1 = denom > 0 ? (b(2) - b(3)) / denom : std::numeric_limits<double>::infinity();
  return gamma < t1;
}

Interval ConditionRegion::gamma_range() const {
  switch (target_.kind) {
    case TopologyKind::Star:
    case TopologyKind::Complete:
    case TopologyKind::DiameterAtMost:
      return {implicit_closed(0.0), implicit_open(1.0)};
    case TopologyKind::BipartiteTuran:
      return {implicit_closed(0.0), open((b(2) - b(3)) / (3 * b(2) - b(3)))};
    case TopologyKind::TwoStar: {
      if (!sigma_) return {closed(0.0), closed(0.0)};
      const double denom = lambda() - b(3);
      const double t1 = denom > 0 ? (b(2) - b(3)) / denom : std::numeric_limits<double>::infinity();
      const double t2 = b(2) / (lambda() + b(2));
      const double t3 = b(3) / (b(2) + b(3));
      return {implicit_closed(0.0), open(std::min(std::max(t1, t2), t3))};
    }
    case TopologyKind::KStar:
      return {closed(0.0), closed(0.0)};
  }
  return {};
}

Interval ConditionRegion::c_range(double gamma) const {
  switch (target_.kind) {
    case TopologyKind::Star:
      return {closed(b(1) - b(2) + gamma * b(2)), open(b(1))};
    case TopologyKind::Complete:
      return {implicit_closed(0.0), open(b(1) - b(2))};
    case TopologyKind::DiameterAtMost:
      return {implicit_closed(0.0), open(b(1) - b(target_.parameter + 1))};
    case TopologyKind::BipartiteTuran:
      return {open(b(1) - b(2) + gamma * (3 * b(2) - b(3))), open(b(1) - b(3))};
    case TopologyKind::TwoStar:
      if (!sigma_) return {closed(b(1) - b(3)), open(b(1))};
      if (two_star_branch_one(gamma)) return {closed(b(1) - b(3) + gamma * (b(2) + b(3))), open(b(1))};
      return {closed(b(1) - b(2) + gamma * b(2) + gamma * lambda()), open(b(1))};
    case TopologyKind::KStar:
      return {closed(b(1) - b(3)), closed(b(1) - b(3))};
  }
  return {};
}

Interval ConditionRegion::c0_range(double gamma) const {
  switch (target_.kind) {
    case TopologyKind::Star:
      return {implicit_open(0.0), open((1 - gamma) * (b(2) - b(3)))};
    case TopologyKind::Complete:
    case TopologyKind::DiameterAtMost:
      return {implicit_open(0.0), closed((1 - gamma) * b(2))};
    case TopologyKind::BipartiteTuran:
      return {open((1 - gamma) * (b(2) - b(3))), closed((1 - gamma) * b(2))};
    case TopologyKind::TwoStar:
      if (sigma_) return {open((1 - gamma) * (b(2) - b(3))), open((1 - gamma) * (b(2) - b(4)))};
      return {open(b(2) - b(3)), open(b(2) - b(4))};
    case TopologyKind::KStar:
      return {open(b(2) - b(3)), open(b(2) - b(4))};
  }
  return {};
}

bool ConditionRegion::feasible(double gamma) const {
  return gamma_range().contains(gamma) && !c_range(gamma).empty() && !c0_range(gamma).empty();
}

bool ConditionRegion::feasible() const {
  const auto g = gamma_range();
  if (g.empty()) return false;
  return feasible(g.lo.value) || feasible(g.at_fraction(0.5));
}

ConditionRegion region_for(const TopologyTarget& t, const BenefitSequence& b, std::optional<int> sigma) {
  return ConditionRegion(t, b, sigma);
}

bool satisfies(const UtilityParams& params, const ConditionRegion& region) {
  return region.gamma_range().contains(params.gamma) && region.c_range(params.gamma).contains(params.c) &&
         region.c0_range(params.gamma).contains(params.c0);
}

bool kstar_necessary(const UtilityParams& params, const BenefitSequence& b) {
  return params.gamma == 0.0 && std::abs(params.c - (b.at(1) - b.at(3))) <= kBoundTolerance;
}

UtilityParams sample_levels(const ConditionRegion& region, const LevelPoint& levels) {
  const auto pick = [](const Interval& range, Level level) {
    return range.singleton() ? range.lo.value : range.at_fraction(level_fraction(level));
  };
  const auto gammas = region.gamma_range();
  if (gammas.empty()) throw InfeasibleRegion("empty gamma range for " + to_string(region.target()));
  UtilityParams out;
  out.benefit = region.benefit();
  out.gamma = pick(gammas, levels.gamma);
  if (!region.feasible(out.gamma)) {
    throw InfeasibleRegion("region for " + to_string(region.target()) + " is empty at gamma " +
                           std::to_string(out.gamma));
  }
  out.c = pick(region.c_range(out.gamma), levels.c);
  out.c0 = pick(region.c0_range(out.gamma), levels.c0);
  return out;
}

UtilityParams deviate(const ConditionRegion& region, const UtilityParams& params, Parameter which, Sign sign,
                      double fraction) {
  const Interval range = which == Parameter::C ? region.c_range(params.gamma) : region.c0_range(params.gamma);
  const double amount = range.singleton() ? kSingletonDeviation : fraction * range.length();
  const Bound& bound = sign == Sign::Negative ? range.lo : range.hi;
  if (bound.implicit) {
    throw InfeasibleRegion(std::string("no finite ") + (sign == Sign::Negative ? "lower" : "upper") +
                           " bound to deviate " + (which == Parameter::C ? "c" : "c0") + " across");
  }
  const double value = sign == Sign::Negative ? bound.value - amount : bound.value + amount;
  UtilityParams out = params;
  (which == Parameter::C ? out.c : out.c0) = value;
  return out;
}

}  // namespace netforge
