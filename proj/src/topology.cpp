#include "netforge/topology.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace netforge {

TopologyTarget TopologyTarget::k_star(int k) {
  if (k < 3) throw GraphError("k-star requires k >= 3 (use two_star for k = 2)");
  return {TopologyKind::KStar, k};
}

TopologyTarget TopologyTarget::diameter_at_most(int d) {
  if (d < 1) throw GraphError("diameter bound must be >= 1");
  return {TopologyKind::DiameterAtMost, d};
}

int TopologyTarget::centers() const {
  if (kind == TopologyKind::TwoStar) return 2;
  if (kind == TopologyKind::KStar) return parameter;
  return 0;
}

namespace {

int parse_suffix(std::string_view text, std::string_view prefix) {
  const auto digits = text.substr(prefix.size());
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
    throw GraphError("bad target parameter in '" + std::string(text) + "'");
  }
  return value;
}

// Centers are the k highest-degree nodes (ties by id); any tie among
// equal-degree candidates is symmetric, so one verification pass is exact.
bool recognize_multistar(const Network& g, int k) {
  const int n = g.node_count();
  if (n < k) return false;
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
  std::vector<char> is_center(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < k; ++i) is_center[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;

  const auto expected_edges = static_cast<std::size_t>(k * (k - 1) / 2 + (n - k));
  if (g.edge_count() != expected_edges) return false;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!g.has_edge(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)])) return false;
    }
  }
  std::vector<int> leaves(static_cast<std::size_t>(n), 0);
  for (NodeId v = 0; v < n; ++v) {
    if (is_center[static_cast<std::size_t>(v)]) continue;
    if (g.degree(v) != 1) return false;
    const NodeId hub = g.neighbors(v).front();
    if (!is_center[static_cast<std::size_t>(hub)]) return false;
    ++leaves[static_cast<std::size_t>(hub)];
  }
  int lo = n, hi = 0;
  for (int i = 0; i < k; ++i) {
    const int m = leaves[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return hi - lo <= 1;
}

}  // namespace

TopologyTarget parse_target(std::string_view text) {
  if (text == "star") return TopologyTarget::star();
  if (text == "complete") return TopologyTarget::complete();
  if (text == "turan") return TopologyTarget::bipartite_turan();
  if (text == "2star") return TopologyTarget::two_star();
  if (text.starts_with("kstar:")) {
    const int k = parse_suffix(text, "kstar:");
    return k == 2 ? TopologyTarget::two_star() : TopologyTarget::k_star(k);
  }
  if (text.starts_with("diam:")) return TopologyTarget::diameter_at_most(parse_suffix(text, "diam:"));
  throw GraphError("unknown topology target '" + std::string(text) + "'");
}

std::string to_string(const TopologyTarget& t) {
  switch (t.kind) {
    case TopologyKind::Star: return "star";
    case TopologyKind::Complete: return "complete";
    case TopologyKind::BipartiteTuran: return "turan";
    case TopologyKind::TwoStar: return "2star";
    case TopologyKind::KStar: return "kstar:" + std::to_string(t.parameter);
    case TopologyKind::DiameterAtMost: return "diam:" + std::to_string(t.parameter);
  }
  return "unknown";
}

bool is_complete_bipartite(const Network& g, int part_a, int part_b) {
  const int n = g.node_count();
  if (part_a < 0 || part_b < 0 || part_a + part_b != n) return false;
  if (g.edge_count() != static_cast<std::size_t>(part_a) * static_cast<std::size_t>(part_b)) return false;
  if (n == 0) return true;
  if (part_a == 0 || part_b == 0) return g.edge_count() == 0;
  // 2-colour; with the edge count fixed, a proper colouring with the
  // right part sizes forces every cross pair to be present.
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  std::vector<NodeId> queue{0};
  colour[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      auto& cw = colour[static_cast<std::size_t>(w)];
      if (cw < 0) {
        cw = 1 - colour[static_cast<std::size_t>(u)];
        queue.push_back(w);
      } else if (cw == colour[static_cast<std::size_t>(u)]) {
        return false;
      }
    }
  }
  if (static_cast<int>(queue.size()) != n) return false;
  const auto zeros = std::count(colour.begin(), colour.end(), 0);
  return zeros == part_a || zeros == part_b;
}

bool recognize(const Network& g, const TopologyTarget& t) {
  const int n = g.node_count();
  switch (t.kind) {
    case TopologyKind::Star:
      if (n <= 2) return g.edge_count() == static_cast<std::size_t>(std::max(0, n - 1));
      return g.edge_count() == static_cast<std::size_t>(n - 1) && g.max_degree() == n - 1;
    case TopologyKind::Complete:
      return g.edge_count() == static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
    case TopologyKind::BipartiteTuran:
      if (n <= 1) return true;
      return is_complete_bipartite(g, (n + 1) / 2, n / 2);
    case TopologyKind::TwoStar:
      if (n <= 1) return true;
      return recognize_multistar(g, 2);
    case TopologyKind::KStar:
      return recognize_multistar(g, t.parameter);
    case TopologyKind::DiameterAtMost:
      return is_connected(g) && diameter(g) <= t.parameter;
  }
  return false;
}

Network build_canonical(const TopologyTarget& t, int n) {
  if (n < 1) throw GraphError("canonical topology needs at least one node");
  Network g(n);
  switch (t.kind) {
    case TopologyKind::Star:
      for (NodeId v = 1; v < n; ++v) g.add_edge(0, v);
      break;
    case TopologyKind::Complete:
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
      }
      break;
    case TopologyKind::BipartiteTuran: {
      const int a = (n + 1) / 2;
      for (NodeId u = 0; u < a; ++u) {
        for (NodeId v = a; v < n; ++v) g.add_edge(u, v);
      }
      break;
    }
    case TopologyKind::TwoStar:
    case TopologyKind::KStar: {
      const int k = t.centers();
      if (t.kind == TopologyKind::KStar && n < 2 * k) {
        throw GraphError("k-star with k=" + std::to_string(k) + " needs at least " + std::to_string(2 * k) +
                         " nodes");
      }
      const int centers = std::min(k, n);
      for (NodeId u = 0; u < centers; ++u) {
        for (NodeId v = u + 1; v < centers; ++v) g.add_edge(u, v);
      }
      for (NodeId leaf = centers; leaf < n; ++leaf) g.add_edge((leaf - centers) % k, leaf);
      break;
    }
    case TopologyKind::DiameterAtMost:
      return build_canonical(t.parameter == 1 ? TopologyTarget::complete() : TopologyTarget::star(), n);
  }
  return g;
}

Network kstar_base_graph(int k) {
  if (k < 3) throw GraphError("k-star base graph requires k >= 3");
  return build_canonical(TopologyTarget::k_star(k), 2 * k);
}

}  // namespace netforge
