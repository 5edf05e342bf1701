#pragma once

// Brute-force reference implementations. Each one enumerates its whole search
// space and shares no code with the library beyond Graph itself.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "sd/graph.hpp"
#include "sd/rational.hpp"

namespace oracle {

using sd::Graph;
using sd::Vertex;

// Calls visit(map) for every map V(G) -> V(H) until it returns true.
template <class Visit>
bool for_each_map(std::size_t n, std::size_t k, Visit&& visit) {
  if (k == 0) return n == 0 && visit(std::vector<Vertex>{});
  std::vector<Vertex> f(n, 0);
  while (true) {
    if (visit(f)) return true;
    std::size_t i = 0;
    while (i < n && ++f[i] == k) f[i++] = 0;
    if (i == n) return false;
  }
}

inline bool is_hom(const Graph& g, const Graph& h, const std::vector<Vertex>& f) {
  for (auto [u, v] : g.edges())
    if (!h.adjacent(f[u], f[v])) return false;
  return true;
}

inline bool hom_exists(const Graph& g, const Graph& h) {
  return for_each_map(g.order(), h.order(), [&](const std::vector<Vertex>& f) { return is_hom(g, h, f); });
}

inline std::size_t chromatic(const Graph& g) {
  for (std::size_t k = 0;; ++k)
    if (for_each_map(g.order(), k, [&](const std::vector<Vertex>& f) {
          for (auto [u, v] : g.edges())
            if (f[u] == f[v]) return false;
          return true;
        }))
      return k;
}

inline bool isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return false;
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (is_hom(g, h, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Minimum height over all rooted forests whose closure contains G: every parent
// vector over V(G) is tried.
inline std::size_t tree_depth(const Graph& g) {
  const std::size_t n = g.order();
  if (n == 0) return 0;
  std::size_t best = n;
  // parent[v] == n encodes a root
  for_each_map(n, n + 1, [&](const std::vector<Vertex>& parent) {
    std::vector<std::size_t> height(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      std::size_t h = 1;
      for (Vertex x = v; parent[x] != n; x = parent[x])
        if (++h > n) return false;  // cycle
      height[v] = h;
    }
    auto ancestor = [&](Vertex a, Vertex b) {
      for (Vertex x = b; parent[x] != n;) {
        x = parent[x];
        if (x == a) return true;
      }
      return false;
    };
    for (auto [u, v] : g.edges())
      if (!ancestor(u, v) && !ancestor(v, u)) return false;
    best = std::min(best, *std::max_element(height.begin(), height.end()));
    return false;
  });
  return best;
}

// max over nonempty vertex subsets of |E(G[S])| / |S|.
inline sd::Rational max_density(const Graph& g) {
  sd::Rational best(0);
  const std::size_t n = g.order();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    std::int64_t e = 0;
    for (auto [u, v] : g.edges())
      if ((s >> u & 1) && (s >> v & 1)) ++e;
    best = std::max(best, sd::Rational(e, std::popcount(s)));
  }
  return best;
}

// Vertices joined by a simple path with exactly p edges.
inline bool simple_path(const Graph& g, Vertex a, Vertex b, std::size_t p) {
  std::vector<bool> used(g.order(), false);
  auto go = [&](auto&& self, Vertex v, std::size_t left) -> bool {
    if (left == 0) return v == b;
    used[v] = true;
    for (Vertex w = 0; w < g.order(); ++w)
      if (g.adjacent(v, w) && !used[w] && self(self, w, left - 1)) {
        used[v] = false;
        return true;
      }
    used[v] = false;
    return false;
  };
  return go(go, a, p);
}

// Shortest odd closed walk length via parity BFS on the bipartite double cover;
// the shortest odd closed walk always contains an odd cycle of the same length.
inline std::optional<std::size_t> odd_girth(const Graph& g) {
  std::optional<std::size_t> best;
  const std::size_t n = g.order();
  for (Vertex s = 0; s < n; ++s) {
    std::vector<std::size_t> d(2 * n, SIZE_MAX);
    std::vector<std::size_t> queue{2 * s};
    d[2 * s] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Vertex v = queue[qi] / 2;
      const std::size_t parity = queue[qi] % 2;
      for (Vertex w = 0; w < n; ++w)
        if (g.adjacent(v, w) && d[2 * w + (1 - parity)] == SIZE_MAX) {
          d[2 * w + (1 - parity)] = d[queue[qi]] + 1;
          queue.push_back(2 * w + (1 - parity));
        }
    }
    if (d[2 * s + 1] != SIZE_MAX && (!best || d[2 * s + 1] < *best)) best = d[2 * s + 1];
  }
  return best;
}

inline Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(density);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

}  // namespace oracle
