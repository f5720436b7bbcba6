#include "netforge/graph.hpp"

#include <algorithm>

namespace netforge {

Network::Network(int node_count) {
  if (node_count < 0) throw GraphError("negative node count");
  adjacency_.resize(static_cast<std::size_t>(node_count));
}

Network::Network(int node_count, const std::vector<Edge>& edges) : Network(node_count) {
  for (const auto& e : edges) add_edge(e.u, e.v);
}

NodeId Network::add_node() {
  adjacency_.emplace_back();
  return node_count() - 1;
}

void Network::check_node(NodeId v) const {
  if (!has_node(v)) throw GraphError("unknown node id " + std::to_string(v));
}

bool Network::has_edge(NodeId u, NodeId v) const {
  if (!has_node(u) || !has_node(v)) return false;
  const auto& a = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

void Network::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) throw GraphError("self-loop on node " + std::to_string(u));
  if (has_edge(u, v)) {
    throw GraphError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  auto insert = [](std::vector<NodeId>& list, NodeId x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert(adjacency_[static_cast<std::size_t>(u)], v);
  insert(adjacency_[static_cast<std::size_t>(v)], u);
  ++edge_count_;
}

void Network::remove_edge(NodeId u, NodeId v) {
  if (!has_edge(u, v)) {
    throw GraphError("no edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  auto erase = [](std::vector<NodeId>& list, NodeId x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  };
  erase(adjacency_[static_cast<std::size_t>(u)], v);
  erase(adjacency_[static_cast<std::size_t>(v)], u);
  --edge_count_;
}

const std::vector<NodeId>& Network::neighbors(NodeId v) const {
  check_node(v);
  return adjacency_[static_cast<std::size_t>(v)];
}

int Network::degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }

int Network::max_degree() const {
  int best = 0;
  for (const auto& a : adjacency_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : adjacency_[static_cast<std::size_t>(u)]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

namespace {

// BFS that ignores `blocked` (pass -1 for none); writes hop counts into
// `dist` (-1 = unreached).
void bfs(const Network& g, NodeId source, NodeId blocked, std::vector<int>& dist,
         std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  dist[static_cast<std::size_t>(source)] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const int du = dist[static_cast<std::size_t>(u)];
    for (NodeId w : g.neighbors(u)) {
      if (w == blocked || dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = du + 1;
      queue.push_back(w);
    }
  }
}

}  // namespace

std::vector<Distance> shortest_distances(const Network& g, NodeId source) {
  if (!g.has_node(source)) throw GraphError("unknown source id " + std::to_string(source));
  std::vector<int> raw(static_cast<std::size_t>(g.node_count()));
  std::vector<NodeId> queue;
  bfs(g, source, -1, raw, queue);
  std::vector<Distance> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] >= 0) out[i] = raw[i];
  }
  return out;
}

int degree(const Network& g, NodeId j) { return g.degree(j); }

bool is_connected(const Network& g) {
  if (g.node_count() <= 1) return true;
  std::vector<int> dist(static_cast<std::size_t>(g.node_count()));
  std::vector<NodeId> queue;
  bfs(g, 0, -1, dist, queue);
  return std::ranges::none_of(dist, [](int d) { return d < 0; });
}

int diameter(const Network& g) {
  const int n = g.node_count();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<NodeId> queue;
  int best = 0;
  for (NodeId s = 0; s < n; ++s) {
    bfs(g, s, -1, dist, queue);
    for (int d : dist) best = std::max(best, d);
  }
  return best;
}

EssentialSet essential_nodes(const Network& g, NodeId y, NodeId z) {
  if (!g.has_node(y) || !g.has_node(z)) throw GraphError("unknown node in essential_nodes");
  if (y == z) throw GraphError("essential_nodes requires two distinct nodes");
  EssentialSet out{y, z, {}};
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<int> dist(n);
  std::vector<NodeId> queue;
  bfs(g, y, -1, dist, queue);
  if (dist[static_cast<std::size_t>(z)] <= 1) return out;  // disconnected or adjacent
  for (NodeId j = 0; j < g.node_count(); ++j) {
    if (j == y || j == z) continue;
    bfs(g, y, j, dist, queue);
    if (dist[static_cast<std::size_t>(z)] < 0) out.members.push_back(j);
  }
  return out;
}

NetworkAnalysis::NetworkAnalysis(const Network& g) : n_(g.node_count()) {
  const auto n = static_cast<std::size_t>(n_);
  dist_.assign(n * n, -1);
  essential_.assign(n * n, 0);

  std::vector<int> dist(n);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < n_; ++s) {
    bfs(g, s, -1, dist, queue);
    std::copy(dist.begin(), dist.end(), dist_.begin() + static_cast<std::ptrdiff_t>(index(s, 0)));
  }

  // A node is a cut vertex iff deleting it splits its own component.
  std::vector<int> labels(n);
  for (NodeId j = 0; j < n_; ++j) {
    if (g.degree(j) < 2) continue;
    std::fill(labels.begin(), labels.end(), -1);
    labels[static_cast<std::size_t>(j)] = -2;
    int pieces = 0;
    for (NodeId start : g.neighbors(j)) {
      if (labels[static_cast<std::size_t>(start)] >= 0) continue;
      bfs(g, start, j, dist, queue);
      for (NodeId v : queue) labels[static_cast<std::size_t>(v)] = pieces;
      ++pieces;
    }
    if (pieces < 2) continue;
    labels[static_cast<std::size_t>(j)] = -1;
    cut_vertices_.push_back(j);
    split_labels_.push_back(labels);
  }

  for (std::size_t c = 0; c < cut_vertices_.size(); ++c) {
    const auto& lab = split_labels_[c];
    for (NodeId y = 0; y < n_; ++y) {
      const int ly = lab[static_cast<std::size_t>(y)];
      if (ly < 0) continue;  // j itself, or outside j's component
      for (NodeId z = y + 1; z < n_; ++z) {
        const int lz = lab[static_cast<std::size_t>(z)];
        if (lz < 0 || lz == ly) continue;
        ++essential_[index(y, z)];
        ++essential_[index(z, y)];
      }
    }
  }
}

Distance NetworkAnalysis::distance(NodeId u, NodeId v) const {
  const int d = dist_[index(u, v)];
  if (d < 0) return std::nullopt;
  return d;
}

bool NetworkAnalysis::is_essential(NodeId j, NodeId y, NodeId z) const {
  auto it = std::ranges::find(cut_vertices_, j);
  if (it == cut_vertices_.end()) return false;
  const auto& lab = split_labels_[static_cast<std::size_t>(it - cut_vertices_.begin())];
  const int ly = lab[static_cast<std::size_t>(y)];
  const int lz = lab[static_cast<std::size_t>(z)];
  return ly >= 0 && lz >= 0 && ly != lz;
}

}  // namespace netforge
