#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "netforge/topology.hpp"
#include "netforge/utility.hpp"

namespace netforge {

class InfeasibleRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One endpoint. `implicit` marks a bound that is not a real constraint
/// (c >= 0, c0 > 0, gamma < 1) and therefore cannot be deviated across.
struct Bound {
  double value = 0.0;
  bool closed = false;
  bool implicit = false;
};

struct Interval {
  Bound lo;
  Bound hi;

  [[nodiscard]] bool contains(double x) const;
  [[nodiscard]] bool empty() const;
  [[nodiscard]] bool singleton() const;
  [[nodiscard]] double length() const { return hi.value - lo.value; }
  [[nodiscard]] double at_fraction(double f) const { return lo.value + f * length(); }
  /// e.g. "[0.16, 0.8)"
  [[nodiscard]] std::string notation() const;
};

enum class Level { L, M, H };

/// 10%, 50%, 90% of a range.
double level_fraction(Level level);
Level parse_level(const std::string& text);
char to_char(Level level);

struct LevelPoint {
  Level gamma = Level::M;
  Level c = Level::M;
  Level c0 = Level::M;

  friend bool operator==(const LevelPoint&, const LevelPoint&) = default;
};

enum class Parameter { C, C0 };
enum class Sign { Negative, Positive };

/// Sufficient-condition region for a target family. The c and c0 ranges
/// depend on gamma; the 2-star region uses the sigma-dependent branches
/// when sigma is given and the gamma = 0 variant otherwise.
class ConditionRegion {
 public:
  ConditionRegion(TopologyTarget target, BenefitSequence benefit, std::optional<int> sigma);

  [[nodiscard]] const TopologyTarget& target() const { return target_; }
  [[nodiscard]] const BenefitSequence& benefit() const { return benefit_; }
  [[nodiscard]] std::optional<int> sigma() const { return sigma_; }

  [[nodiscard]] Interval gamma_range() const;
  [[nodiscard]] Interval c_range(double gamma) const;
  [[nodiscard]] Interval c0_range(double gamma) const;

  /// Non-empty c and c0 ranges at this gamma, gamma itself admissible.
  [[nodiscard]] bool feasible(double gamma) const;
  /// Feasible at some admissible gamma (checked at the gamma range's low end and midpoint).
  [[nodiscard]] bool feasible() const;

  /// ceil(sigma/2 - 1) (2 b_2 - b_3); only for the sigma-bounded 2-star region.
  [[nodiscard]] double lambda() const;

 private:
  [[nodiscard]] double b(int i) const { return benefit_.at(i); }
  [[nodiscard]] bool two_star_branch_one(double gamma) const;

  TopologyTarget target_;
  BenefitSequence benefit_;
  std::optional<int> sigma_;
};

ConditionRegion region_for(const TopologyTarget& t, const BenefitSequence& b, std::optional<int> sigma = {});

/// Endpoint-aware membership of (gamma, c, c0); the region's own benefit
/// sequence defines the bounds.
bool satisfies(const UtilityParams& params, const ConditionRegion& region);

/// gamma = 0 and c = b_1 - b_3, the pinned values every k-star family needs.
bool kstar_necessary(const UtilityParams& params, const BenefitSequence& b);

/// Parameters at the requested levels. Throws InfeasibleRegion.
UtilityParams sample_levels(const ConditionRegion& region, const LevelPoint& levels);

/// Pushes one parameter `fraction` of its range length past the violated
/// bound (0.01 absolute for singleton ranges). Throws InfeasibleRegion when
/// the side has no finite bound.
UtilityParams deviate(const ConditionRegion& region, const UtilityParams& params, Parameter which, Sign sign,
                      double fraction);

}  // namespace netforge
