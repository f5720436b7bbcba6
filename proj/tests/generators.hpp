#pragma once

#include <random>

#include "netforge/graph.hpp"

namespace netforge::testing {

inline Network random_graph(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  Network g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

/// Random tree plus extra edges at a random density.
inline Network random_connected_graph(int n, std::mt19937_64& rng) {
  Network g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
  std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.0, 0.5)(rng));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v) && coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

inline Network path_graph(int n) {
  Network g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

inline Network cycle_graph(int n) {
  Network g = path_graph(n);
  g.add_edge(0, n - 1);
  return g;
}

inline Network complete_graph(int n) {
  Network g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline Network star_graph(int n) {
  Network g(n);
  for (int v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

}  // namespace netforge::testing
