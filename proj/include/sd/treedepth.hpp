#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sd/error.hpp"
#include "sd/graph.hpp"

namespace sd {

// Parent pointers of a rooted forest on 0..n-1; nullopt marks a root.
struct RootedForest {
  std::vector<std::optional<Vertex>> parent;

  std::size_t order() const noexcept { return parent.size(); }

  // Throws unless every parent index is in range and the parent relation is acyclic.
  void validate() const {
    for (Vertex v = 0; v < order(); ++v) {
      std::size_t steps = 0;
      for (auto x = parent[v]; x; x = parent[*x]) {
        if (*x >= order()) throw InvalidArgument("parent index out of range");
        if (++steps > order()) throw InvalidArgument("parent relation has a cycle");
      }
    }
  }

  // Number of vertices on the root-to-v path (roots have height 1).
  std::size_t height(Vertex v) const {
    std::size_t h = 1;
    for (auto x = parent[v]; x; x = parent[*x]) ++h;
    return h;
  }

  std::size_t height() const {
    std::size_t h = 0;
    for (Vertex v = 0; v < order(); ++v) h = std::max(h, height(v));
    return h;
  }

  bool is_strict_ancestor(Vertex a, Vertex v) const {
    for (auto x = parent[v]; x; x = parent[*x])
      if (*x == a) return true;
    return false;
  }
};

// Ancestor closure: x ~ y iff one is a strict ancestor of the other.
inline Graph closure(const RootedForest& f) {
  f.validate();
  Graph g(f.order());
  for (Vertex v = 0; v < f.order(); ++v)
    for (auto x = f.parent[v]; x; x = f.parent[*x]) g.add_edge(*x, v);
  return g;
}

struct TdCertificate {
  std::size_t value = 0;
  RootedForest forest;
  bool exact = true;  // false: value is only an upper bound (size cap exceeded)
};

inline bool verify_td(const Graph& g, const TdCertificate& cert) {
  if (cert.forest.order() != g.order()) return false;
  try {
    cert.forest.validate();
  } catch (const InvalidArgument&) {
    return false;
  }
  if (cert.forest.height() != cert.value) return false;
  for (auto [u, v] : g.edges())
    if (!cert.forest.is_strict_ancestor(u, v) && !cert.forest.is_strict_ancestor(v, u)) return false;
  return true;
}

inline constexpr std::size_t kTreeDepthLimit = 16;

namespace detail {

inline std::vector<std::uint64_t> mask_components(const Graph& g, std::uint64_t mask) {
  std::vector<std::uint64_t> out;
  while (mask != 0) {
    std::uint64_t comp = mask & (~mask + 1), frontier = comp;
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1)
        next |= g.neighbor_mask(static_cast<Vertex>(std::countr_zero(f)));
      next &= mask & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    mask &= ~comp;
  }
  return out;
}

// Memoised elimination recursion over connected vertex subsets:
// td(S) = 1 + min_v max over components C of S - v of td(C).
class TreeDepthSolver {
 public:
  explicit TreeDepthSolver(const Graph& g) : g_(g) {}

  std::size_t depth_of_connected(std::uint64_t mask) {
    if (std::popcount(mask) == 1) return 1;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second.depth;
    Entry best{kUnreachable, 0};
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto v = static_cast<Vertex>(std::countr_zero(rest));
      std::size_t worst = 0;
      for (auto comp : mask_components(g_, mask & ~(std::uint64_t{1} << v))) {
        worst = std::max(worst, depth_of_connected(comp));
        if (1 + worst >= best.depth) break;
      }
      if (1 + worst < best.depth) best = {1 + worst, v};
      if (best.depth == 2) break;  // a non-singleton connected set has depth >= 2
    }
    memo_.emplace(mask, best);
    return best.depth;
  }

  std::size_t depth(std::uint64_t mask) {
    std::size_t worst = 0;
    for (auto comp : mask_components(g_, mask)) worst = std::max(worst, depth_of_connected(comp));
    return worst;
  }

  // Roots each component at its optimal deletion vertex, recursively.
  void build(std::uint64_t mask, std::optional<Vertex> above, RootedForest& f) {
    for (auto comp : mask_components(g_, mask)) {
      depth_of_connected(comp);
      const Vertex root = std::popcount(comp) == 1 ? static_cast<Vertex>(std::countr_zero(comp))
                                                   : memo_.at(comp).root;
      f.parent[root] = above;
      build(comp & ~(std::uint64_t{1} << root), root, f);
    }
  }

 private:
  struct Entry {
    std::size_t depth;
    Vertex root;
  };
  const Graph& g_;
  std::unordered_map<std::uint64_t, Entry> memo_;
};

// DFS forest: every edge joins an ancestor and a descendant, so it witnesses an upper bound.
inline RootedForest dfs_forest(const Graph& g) {
  RootedForest f{std::vector<std::optional<Vertex>>(g.order())};
  std::vector<bool> seen(g.order(), false);
  auto dfs = [&](auto&& self, Vertex v) -> void {
    seen[v] = true;
    g.neighbors(v).for_each([&](Vertex w) {
      if (!seen[w]) {
        f.parent[w] = v;
        self(self, w);
      }
    });
  };
  for (Vertex v = 0; v < g.order(); ++v)
    if (!seen[v]) dfs(dfs, v);
  return f;
}

}  // namespace detail

// Exact tree-depth with a witness forest for |V(g)| <= limit. Above the cap a DFS
// forest is returned as an upper bound with exact = false.
inline TdCertificate tree_depth(const Graph& g, std::size_t limit = kTreeDepthLimit) {
  TdCertificate cert;
  if (g.order() > limit || g.order() > 64) {
    cert.forest = detail::dfs_forest(g);
    cert.value = cert.forest.height();
    cert.exact = false;
    return cert;
  }
  cert.forest.parent.assign(g.order(), std::nullopt);
  if (g.order() == 0) return cert;
  detail::TreeDepthSolver solver(g);
  const std::uint64_t all = g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  cert.value = solver.depth(all);
  solver.build(all, std::nullopt, cert.forest);
  return cert;
}

}  // namespace sd
