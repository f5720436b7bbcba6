#include "netforge/ged.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>

namespace netforge {

GedResult ged_star(const Network& g) {
  const int mu = g.node_count();
  if (mu < 1) throw GraphError("GED needs at least one node");
  NodeId center = 0;
  for (NodeId v = 1; v < mu; ++v) {
    if (g.degree(v) > g.degree(center)) center = v;
  }
  GedWitness w;
  w.centers = {center};
  for (NodeId v = 0; v < mu; ++v) {
    if (v != center && !g.has_edge(center, v)) w.additions.push_back({std::min(center, v), std::max(center, v)});
  }
  for (const Edge& e : g.edges()) {
    if (e.u != center && e.v != center) w.deletions.push_back(e);
  }
  const int distance = mu + static_cast<int>(g.edge_count()) - 2 * g.degree(center) - 1;
  return {distance, std::move(w)};
}

GedResult ged_complete(const Network& g) {
  const int mu = g.node_count();
  GedWitness w;
  for (NodeId u = 0; u < mu; ++u) {
    for (NodeId v = u + 1; v < mu; ++v) {
      if (!g.has_edge(u, v)) w.additions.push_back({u, v});
    }
  }
  const int distance = mu * (mu - 1) / 2 - static_cast<int>(g.edge_count());
  return {distance, std::move(w)};
}

VacancyProblem VacancyProblem::for_node_count(int mu, int k) {
  if (k < 1 || mu < k) throw GraphError("vacancy problem needs mu >= k >= 1");
  VacancyProblem vp;
  vp.k = k;
  vp.p = mu / k;
  vp.q = mu % k;
  vp.adjacency.resize(static_cast<std::size_t>(mu - k));
  return vp;
}

namespace {

// Max flow on source -> center (capacity) -> leaf (1) -> sink (1), run as
// BFS augmenting paths over the leaf/center alternation. Buffers persist
// across calls.
class LeafMatcher {
 public:
  int run(const std::vector<std::vector<int>>& adjacency, const std::vector<int>& capacity,
          std::vector<int>& center_of_leaf) {
    const int leaves = static_cast<int>(adjacency.size());
    const int k = static_cast<int>(capacity.size());
    center_of_leaf.assign(static_cast<std::size_t>(leaves), -1);
    load_.assign(static_cast<std::size_t>(k), 0);
    via_.resize(static_cast<std::size_t>(k));
    int matched = 0;
    for (int start = 0; start < leaves; ++start) {
      if (adjacency[static_cast<std::size_t>(start)].empty()) continue;
      std::fill(via_.begin(), via_.end(), -1);
      queue_.clear();
      int free_center = -1;
      auto reach = [&](int leaf) {
        for (int c : adjacency[static_cast<std::size_t>(leaf)]) {
          if (via_[static_cast<std::size_t>(c)] >= 0) continue;
          via_[static_cast<std::size_t>(c)] = leaf;
          if (load_[static_cast<std::size_t>(c)] < capacity[static_cast<std::size_t>(c)]) {
            free_center = c;
            return;
          }
          queue_.push_back(c);
        }
      };
      reach(start);
      for (std::size_t head = 0; free_center < 0 && head < queue_.size(); ++head) {
        const int full = queue_[head];
        for (int l = 0; l < leaves && free_center < 0; ++l) {
          if (center_of_leaf[static_cast<std::size_t>(l)] == full) reach(l);
        }
      }
      if (free_center < 0) continue;
      ++load_[static_cast<std::size_t>(free_center)];
      for (int c = free_center; c >= 0;) {
        const int leaf = via_[static_cast<std::size_t>(c)];
        const int previous = center_of_leaf[static_cast<std::size_t>(leaf)];
        center_of_leaf[static_cast<std::size_t>(leaf)] = c;
        c = previous;
      }
      ++matched;
    }
    return matched;
  }

 private:
  std::vector<int> load_;
  std::vector<int> via_;
  std::vector<int> queue_;
};

// Calls fn(mask) for every k-subset of {0..n-1}, ascending lexicographic by members.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

Allocation allocate_with_big_centers(const VacancyProblem& vp, const std::vector<int>& big, LeafMatcher& matcher,
                                     std::vector<int>& capacity) {
  capacity.assign(static_cast<std::size_t>(vp.k), std::max(vp.p - 1, 0));
  for (int c : big) capacity[static_cast<std::size_t>(c)] = vp.p;
  Allocation out;
  out.big_centers = big;
  out.retained = matcher.run(vp.adjacency, capacity, out.center_of_leaf);
  return out;
}

int best_allocation(const VacancyProblem& vp, LeafMatcher& matcher, std::vector<int>& capacity, Allocation* keep) {
  int best = -1;
  for_each_subset(vp.k, vp.q, [&](const std::vector<int>& big) {
    Allocation a = allocate_with_big_centers(vp, big, matcher, capacity);
    if (a.retained > best) {
      best = a.retained;
      if (keep) *keep = std::move(a);
    }
  });
  return best;
}

}  // namespace

Allocation max_retained_edges(const VacancyProblem& vp) {
  if (vp.k < 1 || vp.q < 0 || vp.q >= vp.k || vp.p < 0) throw GraphError("malformed vacancy problem");
  LeafMatcher matcher;
  std::vector<int> capacity;
  Allocation best;
  best_allocation(vp, matcher, capacity, &best);
  return best;
}

namespace {

// Splits g around a center choice: fills vp.adjacency and leaf_nodes and
// returns {beta_1, beta_2, beta_3}.
std::array<int, 3> split_by_centers(const Network& g, const std::vector<int>& centers, std::vector<int>& center_slot,
                                    VacancyProblem& vp, std::vector<NodeId>& leaf_nodes) {
  const int k = static_cast<int>(centers.size());
  std::fill(center_slot.begin(), center_slot.end(), -1);
  for (int i = 0; i < k; ++i) center_slot[static_cast<std::size_t>(centers[static_cast<std::size_t>(i)])] = i;
  int missing_center_links = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!g.has_edge(centers[static_cast<std::size_t>(i)], centers[static_cast<std::size_t>(j)])) {
        ++missing_center_links;
      }
    }
  }
  leaf_nodes.clear();
  int leaf_links = 0;
  int cross_links = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (center_slot[static_cast<std::size_t>(v)] >= 0) continue;
    auto& adj = vp.adjacency[leaf_nodes.size()];
    adj.clear();
    for (NodeId w : g.neighbors(v)) {
      const int slot = center_slot[static_cast<std::size_t>(w)];
      if (slot >= 0) {
        adj.push_back(slot);
        ++cross_links;
      } else if (w > v) {
        ++leaf_links;
      }
    }
    leaf_nodes.push_back(v);
  }
  return {missing_center_links, leaf_links, cross_links};
}

}  // namespace

GedResult ged_kstar(const Network& g, int k) {
  const int mu = g.node_count();
  if (k < 2) throw GraphError("k-star GED needs k >= 2");
  if (mu < 2 * k) throw GraphError("k-star GED needs at least 2k nodes");

  VacancyProblem vp = VacancyProblem::for_node_count(mu, k);
  std::vector<int> center_slot(static_cast<std::size_t>(mu));
  std::vector<NodeId> leaf_nodes;
  LeafMatcher matcher;
  std::vector<int> capacity;
  int best = std::numeric_limits<int>::max();
  std::vector<int> best_centers;
  for_each_subset(mu, k, [&](const std::vector<int>& centers) {
    const auto [beta1, beta2, beta3] = split_by_centers(g, centers, center_slot, vp, leaf_nodes);
    // Each pseudo-leaf keeps at most one center link.
    int reachable = 0;
    for (const auto& adj : vp.adjacency) reachable += adj.empty() ? 0 : 1;
    if (beta1 + beta2 + beta3 + (mu - k) - 2 * reachable >= best) return;
    const int retained = best_allocation(vp, matcher, capacity, nullptr);
    const int distance = beta1 + beta2 + (beta3 - retained) + (mu - k - retained);
    if (distance < best) {
      best = distance;
      best_centers = centers;
    }
  });

  const std::vector<int>& centers = best_centers;
  split_by_centers(g, centers, center_slot, vp, leaf_nodes);
  Allocation alloc;
  best_allocation(vp, matcher, capacity, &alloc);

  GedWitness w;
  w.centers.assign(centers.begin(), centers.end());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const NodeId a = centers[static_cast<std::size_t>(i)], b = centers[static_cast<std::size_t>(j)];
      if (!g.has_edge(a, b)) w.additions.push_back({a, b});
    }
  }
  // Unallocated leaves fill the remaining vacancies in center order.
  std::vector<int> load(static_cast<std::size_t>(k), 0);
  for (int c : alloc.center_of_leaf) {
    if (c >= 0) ++load[static_cast<std::size_t>(c)];
  }
  capacity.assign(static_cast<std::size_t>(k), vp.p - 1);
  for (int c : alloc.big_centers) capacity[static_cast<std::size_t>(c)] = vp.p;
  std::vector<NodeId> assigned(leaf_nodes.size(), -1);
  for (std::size_t l = 0; l < leaf_nodes.size(); ++l) {
    const int c = alloc.center_of_leaf[l];
    if (c >= 0) assigned[l] = centers[static_cast<std::size_t>(c)];
  }
  for (std::size_t l = 0; l < leaf_nodes.size(); ++l) {
    if (assigned[l] >= 0) continue;
    for (int c = 0; c < k; ++c) {
      if (load[static_cast<std::size_t>(c)] < capacity[static_cast<std::size_t>(c)]) {
        ++load[static_cast<std::size_t>(c)];
        assigned[l] = centers[static_cast<std::size_t>(c)];
        const NodeId v = leaf_nodes[l], a = assigned[l];
        w.additions.push_back({std::min(v, a), std::max(v, a)});
        break;
      }
    }
  }
  for (const Edge& e : g.edges()) {
    const bool cu = center_slot[static_cast<std::size_t>(e.u)] >= 0;
    const bool cv = center_slot[static_cast<std::size_t>(e.v)] >= 0;
    if (cu && cv) continue;
    if (!cu && !cv) {
      w.deletions.push_back(e);
      continue;
    }
    const NodeId leaf = cu ? e.v : e.u;
    const NodeId hub = cu ? e.u : e.v;
    const auto l = static_cast<std::size_t>(std::ranges::find(leaf_nodes, leaf) - leaf_nodes.begin());
    if (assigned[l] != hub) w.deletions.push_back(e);
  }
  std::ranges::sort(w.additions);
  return {best, std::move(w)};
}

int ged_bipartite_turan(const Network& g) {
  const int n = g.node_count();
  if (n <= 1) return 0;
  if (n > 30) throw GraphError("bipartite Turan GED enumeration is limited to 30 nodes");
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= 1u << e.v;
    adj[static_cast<std::size_t>(e.v)] |= 1u << e.u;
  }
  const int a = (n + 1) / 2;
  const int b = n / 2;
  const int m = static_cast<int>(g.edge_count());
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1;
  int best = std::numeric_limits<int>::max();
  // Gosper's hack over a-subsets; for even n fixing node 0 in part A halves the work.
  std::uint32_t part = (1u << a) - 1;
  const std::uint32_t limit = 1u << n;
  while (part < limit) {
    if (a != b || (part & 1u)) {
      const std::uint32_t other = all & ~part;
      int intra2 = 0;  // twice the intra-part edge count
      for (int v = 0; v < n; ++v) {
        const std::uint32_t side = (part >> v) & 1u ? part : other;
        intra2 += std::popcount(adj[static_cast<std::size_t>(v)] & side);
      }
      best = std::min(best, a * b - m + intra2);
    }
    const std::uint32_t low = part & (~part + 1);
    const std::uint32_t ripple = part + low;
    part = (((ripple ^ part) >> 2) / low) | ripple;
  }
  return best;
}

int ged_bruteforce(const Network& g, const TopologyTarget& t) {
  const int mu = g.node_count();
  if (mu > 8) throw GraphError("brute-force GED is limited to 8 nodes");
  if (t.kind == TopologyKind::DiameterAtMost) throw GraphError("no single canonical graph for a diameter bound");
  if (mu <= 1) return 0;
  const Network target = build_canonical(t, mu);
  int bit[8][8] = {};
  int next = 0;
  for (int u = 0; u < mu; ++u) {
    for (int v = u + 1; v < mu; ++v) bit[u][v] = bit[v][u] = next++;
  }
  std::uint32_t gmask = 0;
  for (const Edge& e : g.edges()) gmask |= 1u << bit[e.u][e.v];
  const auto target_edges = target.edges();
  std::vector<int> perm(static_cast<std::size_t>(mu));
  std::iota(perm.begin(), perm.end(), 0);
  int best = std::numeric_limits<int>::max();
  do {
    std::uint32_t tmask = 0;
    for (const Edge& e : target_edges) {
      tmask |= 1u << bit[perm[static_cast<std::size_t>(e.u)]][perm[static_cast<std::size_t>(e.v)]];
    }
    best = std::min(best, std::popcount(gmask ^ tmask));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

GedResult ged_to_target(const Network& g, const TopologyTarget& t) {
  switch (t.kind) {
    case TopologyKind::Star: return ged_star(g);
    case TopologyKind::Complete: return ged_complete(g);
    case TopologyKind::BipartiteTuran: return {ged_bipartite_turan(g), std::nullopt};
    case TopologyKind::TwoStar:
    case TopologyKind::KStar: {
      const int k = t.centers();
      if (g.node_count() >= 2 * k) return ged_kstar(g, k);
      if (t.kind == TopologyKind::TwoStar) return {ged_bruteforce(g, t), std::nullopt};
      throw GraphError("k-star GED needs at least 2k nodes");
    }
    case TopologyKind::DiameterAtMost:
      break;
  }
  throw GraphError("GED is not defined for target " + to_string(t));
}

}  // namespace netforge
