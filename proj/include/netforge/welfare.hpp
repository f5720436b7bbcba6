#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netforge/graph.hpp"
#include "netforge/utility.hpp"

namespace netforge {

/// Efficient class for a node count; Boundary at c = b_1 - b_2,
/// where star and complete tie.
enum class EfficientClass { Null, Star, Complete, Boundary };

std::string to_string(EfficientClass cls);

struct WelfareReport {
  double total = 0.0;
  std::vector<double> per_node;
  std::optional<EfficientClass> efficient_class;  // set when mu >= 2
  std::optional<double> relative_to_star;         // set when g is connected and mu >= 2
};

/// Sum over nodes of d_j (b_1 - c) plus indirect benefits. Rents are
/// transfers and entry fees are one-off, so neither appears.
WelfareReport welfare(const Network& g, const UtilityParams& params);

/// Throws std::invalid_argument for mu < 2.
EfficientClass efficient_class(const UtilityParams& params, int mu);

/// welfare(g) / welfare(star on the same node count). Throws GraphError
/// when g is disconnected or has fewer than two nodes.
double relative_efficiency(const Network& g, const UtilityParams& params);

}  // namespace netforge
