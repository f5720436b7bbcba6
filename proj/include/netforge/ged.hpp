#pragma once

#include <optional>
#include <vector>

#include "netforge/graph.hpp"
#include "netforge/topology.hpp"

namespace netforge {

/// Edit script realising the distance: `centers` are the nodes mapped to
/// the target's centers (empty for complete graphs).
struct GedWitness {
  std::vector<NodeId> centers;
  std::vector<Edge> additions;
  std::vector<Edge> deletions;
};

struct GedResult {
  int distance = 0;
  std::optional<GedWitness> witness;
};

/// mu + xi - 2*max_degree - 1.
GedResult ged_star(const Network& g);

/// mu(mu-1)/2 - xi.
GedResult ged_complete(const Network& g);

/// Leaf allocation problem for a fixed choice of pseudo-centers.
/// mu = p*k + q with 0 <= q < k: q centers take p leaves, the rest p-1.
struct VacancyProblem {
  int k = 0;
  int p = 0;
  int q = 0;
  /// adjacency[leaf] = indices (0..k-1) of the pseudo-centers the leaf touches.
  std::vector<std::vector<int>> adjacency;

  static VacancyProblem for_node_count(int mu, int k);
};

struct Allocation {
  int retained = 0;
  /// Center index per leaf, -1 when the leaf keeps none of its center links.
  std::vector<int> center_of_leaf;
  /// The q center indices allowed p leaves in the optimal assignment.
  std::vector<int> big_centers;
};

/// Maximum number of leaf-center edges that can stay in place. Each choice of
/// the q centers receiving p leaves is an integral bipartite max-flow.
Allocation max_retained_edges(const VacancyProblem& problem);

/// Minimum over all C(mu, k) center choices; k >= 2, mu >= 2k.
GedResult ged_kstar(const Network& g, int k);

/// Minimum over balanced bipartitions of missing cross pairs plus intra-part edges.
int ged_bipartite_turan(const Network& g);

/// Reference value by enumerating every vertex bijection; mu <= 8.
int ged_bruteforce(const Network& g, const TopologyTarget& t);

/// Dispatch by family; DiameterAtMost has no single target and is rejected.
GedResult ged_to_target(const Network& g, const TopologyTarget& t);

}  // namespace netforge
