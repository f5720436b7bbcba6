#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netforge {

/// Node ids are dense, 0..n-1, and double as entry order.
using NodeId = int;

/// Hop distance; std::nullopt means the nodes lie in different components.
using Distance = std::optional<int>;

struct Edge {
  NodeId u;
  NodeId v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected simple graph. Nodes are only ever appended.
class Network {
 public:
  Network() = default;
  explicit Network(int node_count);
  Network(int node_count, const std::vector<Edge>& edges);

  NodeId add_node();
  void add_edge(NodeId u, NodeId v);
  void remove_edge(NodeId u, NodeId v);

  [[nodiscard]] int node_count() const { return static_cast<int>(adjacency_.size()); }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
  [[nodiscard]] bool has_node(NodeId v) const { return v >= 0 && v < node_count(); }
  [[nodiscard]] bool has_edge(NodeId u, NodeId v) const;

  /// Sorted neighbor list.
  [[nodiscard]] const std::vector<NodeId>& neighbors(NodeId v) const;
  [[nodiscard]] int degree(NodeId v) const;
  [[nodiscard]] int max_degree() const;

  /// All edges with u < v, lexicographically sorted.
  [[nodiscard]] std::vector<Edge> edges() const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  void check_node(NodeId v) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// BFS distances from `source`; throws GraphError on an unknown id.
std::vector<Distance> shortest_distances(const Network& g, NodeId source);

int degree(const Network& g, NodeId j);

bool is_connected(const Network& g);

/// Largest finite pairwise distance (0 for n <= 1).
int diameter(const Network& g);

/// Nodes lying on every y-z path, i.e. the essential set E(y, z).
struct EssentialSet {
  NodeId y;
  NodeId z;
  std::vector<NodeId> members;
};

/// Throws GraphError when y == z or either id is unknown.
EssentialSet essential_nodes(const Network& g, NodeId y, NodeId z);

/// All-pairs distances together with the number of essential nodes of
/// every pair. Built once per graph; every query afterwards is O(1) or
/// O(|cut vertices|).
class NetworkAnalysis {
 public:
  explicit NetworkAnalysis(const Network& g);

  [[nodiscard]] int node_count() const { return n_; }
  [[nodiscard]] Distance distance(NodeId u, NodeId v) const;
  [[nodiscard]] bool connected(NodeId u, NodeId v) const { return dist_[index(u, v)] >= 0; }
  /// Raw hop count; only meaningful when connected(u, v).
  [[nodiscard]] int hops(NodeId u, NodeId v) const { return dist_[index(u, v)]; }
  [[nodiscard]] int essential_count(NodeId y, NodeId z) const { return essential_[index(y, z)]; }
  [[nodiscard]] bool is_essential(NodeId j, NodeId y, NodeId z) const;
  [[nodiscard]] const std::vector<NodeId>& cut_vertices() const { return cut_vertices_; }

 private:
  [[nodiscard]] std::size_t index(NodeId u, NodeId v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<int> dist_;       // -1 when unreachable
  std::vector<int> essential_;  // |E(u, v)|
  std::vector<NodeId> cut_vertices_;
  // component label of each node in g - j, for every cut vertex j (row
  // order follows cut_vertices_); -1 marks j itself.
  std::vector<std::vector<int>> split_labels_;
};

}  // namespace netforge
