#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sd/error.hpp"
#include "sd/vertex_set.hpp"

namespace sd {

using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// Simple undirected graph on 0..n-1 stored as a symmetric bit matrix.
// Rows are multi-word, so n is unbounded; the exhaustive algorithms cap it themselves.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), stride_(words_for(n)), bits_(n * words_for(n), 0) {}

  std::size_t order() const noexcept { return n_; }

  std::size_t size() const noexcept {
    std::size_t twice = 0;
    for (Vertex v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
  }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    return (bits_[u * stride_ + v / kWordBits] >> (v % kWordBits)) & 1u;
  }

  void add_edge(Vertex u, Vertex v) {
    if (u >= n_ || v >= n_) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("loop at vertex " + std::to_string(u));
    bits_[u * stride_ + v / kWordBits] |= std::uint64_t{1} << (v % kWordBits);
    bits_[v * stride_ + u / kWordBits] |= std::uint64_t{1} << (u % kWordBits);
  }

  void remove_edge(Vertex u, Vertex v) {
    bits_[u * stride_ + v / kWordBits] &= ~(std::uint64_t{1} << (v % kWordBits));
    bits_[v * stride_ + u / kWordBits] &= ~(std::uint64_t{1} << (u % kWordBits));
  }

  std::span<const std::uint64_t> row(Vertex v) const noexcept {
    return {bits_.data() + v * stride_, stride_};
  }

  VertexSet neighbors(Vertex v) const {
    return VertexSet::from_words(n_, row(v));
  }

  // Neighborhood as a 64-bit mask; requires order() <= 64.
  std::uint64_t neighbor_mask(Vertex v) const noexcept { return stride_ == 0 ? 0 : bits_[v * stride_]; }

  std::size_t degree(Vertex v) const noexcept {
    std::size_t d = 0;
    for (auto w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for_each_edge([&](Vertex u, Vertex v) { out.emplace_back(u, v); });
    return out;
  }

  // Visits u < v in row order; f returns false to stop.
  template <class F>
  bool for_each_edge(F&& f) const {
    for (Vertex u = 0; u < n_; ++u) {
      const std::uint64_t* r = bits_.data() + u * stride_;
      for (std::size_t w = (u + 1) / 64; w < stride_; ++w) {
        std::uint64_t word = r[w];
        if (w == (u + 1) / 64) word &= ~std::uint64_t{0} << ((u + 1) % 64);
        while (word) {
          const Vertex v = w * 64 + static_cast<Vertex>(std::countr_zero(word));
          word &= word - 1;
          if constexpr (std::is_same_v<std::invoke_result_t<F, Vertex, Vertex>, bool>) {
            if (!f(u, v)) return false;
          } else {
            f(u, v);
          }
        }
      }
    }
    return true;
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n_) throw InvalidArgument("label count differs from order");
    labels_ = std::move(labels);
  }

  // Labels are provenance only and do not take part in equality.
  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::string> labels_;
};

inline Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // new index -> vertex of the original graph
};

inline Subgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  Subgraph out{Graph(s.size()), s.members()};
  const auto& m = out.to_parent;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (g.adjacent(m[i], m[j])) out.graph.add_edge(i, j);
  return out;
}

inline Graph induced(const Graph& g, const VertexSet& s) { return induced_subgraph(g, s).graph; }

// BFS distances from source inside g[within]; kUnreachable outside or when disconnected.
inline std::vector<std::size_t> distances_within(const Graph& g, const VertexSet& within, Vertex source) {
  std::vector<std::size_t> dist(g.order(), kUnreachable);
  if (!within.contains(source)) return dist;
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    (g.neighbors(u) & within).for_each([&](Vertex w) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    });
  }
  return dist;
}

inline std::vector<std::size_t> distances(const Graph& g, Vertex source) {
  return distances_within(g, VertexSet::full(g.order()), source);
}

// Vertices of g[within] reachable from source.
inline VertexSet reachable_within(const Graph& g, const VertexSet& within, Vertex source) {
  VertexSet seen(g.order());
  if (!within.contains(source)) return seen;
  VertexSet frontier(g.order(), {source});
  seen.insert(source);
  while (!frontier.empty()) {
    VertexSet next(g.order());
    frontier.for_each([&](Vertex u) { next |= g.neighbors(u); });
    next &= within;
    next -= seen;
    seen |= next;
    frontier = std::move(next);
  }
  return seen;
}

inline bool is_connected_set(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  return reachable_within(g, s, s.first()) == s;
}

// Components of g[within], each a VertexSet, ordered by smallest member.
inline std::vector<VertexSet> components_within(const Graph& g, const VertexSet& within) {
  std::vector<VertexSet> out;
  VertexSet rest = within;
  while (!rest.empty()) {
    VertexSet comp = reachable_within(g, rest, rest.first());
    rest -= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
  return components_within(g, VertexSet::full(g.order()));
}

struct RadiusCenter {
  std::size_t radius;
  Vertex center;
};

// Radius of g[s] and its smallest-index center. Throws when s is not a ball.
inline RadiusCenter radius_center(const Graph& g, const VertexSet& s) {
  if (!is_connected_set(g, s)) throw InvalidArgument("not a ball: vertex set is empty or disconnected");
  RadiusCenter best{kUnreachable, 0};
  s.for_each([&](Vertex r) {
    const auto dist = distances_within(g, s, r);
    std::size_t ecc = 0;
    s.for_each([&](Vertex x) { ecc = std::max(ecc, dist[x]); });
    if (ecc < best.radius) best = {ecc, r};
  });
  return best;
}

struct Union {
  Graph graph;
  std::vector<Vertex> offsets;  // offsets[i] = index of vertex 0 of the i-th input
};

inline Union disjoint_union(std::span<const Graph> parts) {
  std::size_t n = 0;
  std::vector<Vertex> offsets;
  for (const auto& p : parts) {
    offsets.push_back(n);
    n += p.order();
  }
  Graph g(n);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (auto [u, v] : parts[i].edges()) g.add_edge(offsets[i] + u, offsets[i] + v);
  return {std::move(g), std::move(offsets)};
}

inline Union disjoint_union(std::initializer_list<Graph> parts) {
  return disjoint_union(std::span<const Graph>(parts.begin(), parts.size()));
}

// Vertex images of a map V(g) -> V(h); total by construction.
using VertexMap = std::vector<Vertex>;

inline bool check_homomorphism(const Graph& g, const Graph& h, const VertexMap& f) {
  if (f.size() != g.order()) return false;
  for (Vertex x : f)
    if (x >= h.order()) return false;
  return g.for_each_edge([&](Vertex u, Vertex v) { return h.adjacent(f[u], f[v]); });
}

namespace graphs {

inline Graph empty(std::size_t n) { return Graph(n); }

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
  Graph g = path(n);
  g.add_edge(n - 1, 0);
  return g;
}

inline Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

inline Graph petersen() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

// Every edge of g replaced by a path of length 2; new vertices follow the originals.
inline Graph subdivide(const Graph& g) {
  const auto es = g.edges();
  Graph out(g.order() + es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    out.add_edge(es[i].first, g.order() + i);
    out.add_edge(g.order() + i, es[i].second);
  }
  return out;
}

}  // namespace graphs

}  // namespace sd
