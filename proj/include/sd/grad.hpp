#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "sd/balls.hpp"
#include "sd/error.hpp"
#include "sd/flow.hpp"
#include "sd/graph.hpp"
#include "sd/rational.hpp"

namespace sd {

struct GradResult {
  Rational value;
  BallFamily witness;
  bool exact = true;  // false: value is a lower bound from greedy ball packing
};

namespace detail {

inline Rational quotient_density(const Graph& g, const BallFamily& family) {
  if (family.balls.empty()) return Rational(0);
  return Rational(static_cast<std::int64_t>(quotient(g, family).size()),
                  static_cast<std::int64_t>(family.balls.size()));
}

// Packs radius-r BFS balls around uncovered vertices taken by decreasing degree.
inline BallFamily greedy_ball_packing(const Graph& g, std::size_t r) {
  std::vector<Vertex> centers(g.order());
  std::iota(centers.begin(), centers.end(), Vertex{0});
  std::stable_sort(centers.begin(), centers.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  BallFamily family{{}, r};
  VertexSet free = VertexSet::full(g.order());
  for (Vertex c : centers) {
    if (!free.contains(c)) continue;
    VertexSet ball(g.order(), {c}), frontier = ball;
    for (std::size_t step = 0; step < r && !frontier.empty(); ++step) {
      VertexSet next(g.order());
      frontier.for_each([&](Vertex u) { next |= g.neighbors(u); });
      next &= free;
      next -= ball;
      ball |= next;
      frontier = std::move(next);
    }
    free -= ball;
    family.balls.push_back(std::move(ball));
  }
  return family;
}

}  // namespace detail

// Densest subgraph value max |E(H)|/|V(H)| by binary search over the candidate
// fractions a/b (b <= |V|, a <= |E|); each probe is one min-cut.
inline Rational grad_0_flow(const Graph& g) {
  const auto es = g.edges();
  const std::size_t n = g.order(), m = es.size();
  if (m == 0) return Rational(0);

  // Does some subgraph H satisfy b|E(H)| - a|V(H)| > 0, i.e. density > a/b?
  auto denser_than = [&](const Rational& d) {
    const std::int64_t a = d.num(), b = d.den();
    const std::size_t s = m + n, t = m + n + 1;
    MaxFlow flow(m + n + 2);
    for (std::size_t i = 0; i < m; ++i) {
      flow.add_arc(s, i, b);
      flow.add_arc(i, m + es[i].first, MaxFlow::kInfinity);
      flow.add_arc(i, m + es[i].second, MaxFlow::kInfinity);
    }
    for (Vertex v = 0; v < n; ++v) flow.add_arc(m + v, t, a);
    return flow.run(s, t) < static_cast<std::int64_t>(m) * b;
  };

  std::vector<Rational> candidates;
  for (std::size_t b = 1; b <= n; ++b)
    for (std::size_t a = 0; a <= m; ++a)
      candidates.emplace_back(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The optimum is the smallest candidate that nothing is denser than.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (denser_than(candidates[mid]))
      lo = mid + 1;
    else
      hi = mid;
  }
  return candidates[lo];
}

// Exact grad of rank r over every family of disjoint balls of radius <= r, for
// |V(g)| <= limit; above the cap, a greedy packing lower bound (exact = false).
inline GradResult grad_r(const Graph& g, std::size_t r, std::size_t limit = kBallFamilyLimit) {
  if (g.order() > limit) {
    GradResult res{grad_0_flow(g), {{}, r}, false};
    auto packed = detail::greedy_ball_packing(g, r);
    if (auto d = detail::quotient_density(g, packed); d > res.value) {
      res.value = d;
      res.witness = std::move(packed);
    }
    return res;
  }

  const std::size_t n = g.order();
  const auto by_min = balls_by_min_vertex(g, r);
  std::vector<std::uint64_t> chosen;
  Rational best(0);
  std::vector<std::uint64_t> best_family;
  auto closed_reach = [&](std::uint64_t ball) {
    std::uint64_t out = 0;
    for (std::uint64_t b = ball; b != 0; b &= b - 1) out |= g.neighbor_mask(static_cast<Vertex>(std::countr_zero(b)));
    return out;
  };
  auto rec = [&](auto&& self, Vertex v, std::uint64_t used, std::int64_t quotient_edges) -> void {
    while (v < n && ((used >> v) & 1u)) ++v;
    if (v == n) {
      if (!chosen.empty()) {
        Rational d(quotient_edges, static_cast<std::int64_t>(chosen.size()));
        if (d > best) {
          best = d;
          best_family = chosen;
        }
      }
      return;
    }
    self(self, v + 1, used, quotient_edges);
    for (std::uint64_t ball : by_min[v]) {
      if (ball & used) continue;
      const std::uint64_t nb = closed_reach(ball);
      std::int64_t added = 0;
      for (std::uint64_t other : chosen)
        if (nb & other) ++added;
      chosen.push_back(ball);
      self(self, v + 1, used | ball, quotient_edges + added);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0, 0);

  GradResult res{best, {{}, r}, true};
  for (auto b : best_family) res.witness.balls.push_back(VertexSet::from_mask(n, b));
  return res;
}

// grad_r for r = 0..r_max; the sequence is asserted nondecreasing.
inline std::vector<GradResult> expansion_profile(const Graph& g, std::size_t r_max,
                                                 std::size_t limit = kBallFamilyLimit) {
  std::vector<GradResult> out;
  for (std::size_t r = 0; r <= r_max; ++r) {
    out.push_back(grad_r(g, r, limit));
    if (out.back().exact && r > 0 && out[r - 1].exact && out[r].value < out[r - 1].value)
      throw Error("expansion profile decreased at rank " + std::to_string(r));
  }
  return out;
}

struct Orientation {
  std::vector<Edge> arcs;  // (tail, head)
  std::size_t max_indegree = 0;

  std::vector<std::size_t> indegrees(std::size_t n) const {
    std::vector<std::size_t> in(n, 0);
    for (auto [t, h] : arcs) ++in[h];
    return in;
  }
};

// Orientation with maximum indegree ceil(grad_0), found as a flow of edges into
// vertices of capacity ceil(grad_0).
inline Orientation min_indegree_orientation(const Graph& g) {
  const auto es = g.edges();
  const std::size_t n = g.order(), m = es.size();
  Orientation out;
  if (m == 0) return out;
  const auto k = grad_0_flow(g).ceil();
  const std::size_t s = m + n, t = m + n + 1;
  MaxFlow flow(m + n + 2);
  std::vector<std::size_t> to_first(m);
  for (std::size_t i = 0; i < m; ++i) {
    flow.add_arc(s, i, 1);
    to_first[i] = flow.add_arc(i, m + es[i].first, 1);
    flow.add_arc(i, m + es[i].second, 1);
  }
  for (Vertex v = 0; v < n; ++v) flow.add_arc(m + v, t, k);
  if (flow.run(s, t) != static_cast<std::int64_t>(m))
    throw Error("no orientation with indegree " + std::to_string(k) + "; grad_0 bound violated");
  for (std::size_t i = 0; i < m; ++i) {
    const auto [u, v] = es[i];
    // the endpoint receiving the edge's unit of flow is its head
    if (flow.flow_on(to_first[i]) > 0)
      out.arcs.emplace_back(v, u);
    else
      out.arcs.emplace_back(u, v);
  }
  const auto in = out.indegrees(n);
  out.max_indegree = *std::max_element(in.begin(), in.end());
  if (static_cast<std::int64_t>(out.max_indegree) != k)
    throw Error("orientation indegree differs from ceil(grad_0)");
  return out;
}

struct Degeneracy {
  std::size_t d = 0;
  std::vector<Vertex> order;  // removal order
};

// Min-degree peeling; asserts d <= floor(2 * grad_0).
inline Degeneracy degeneracy(const Graph& g) {
  Degeneracy out;
  std::vector<std::size_t> deg(g.order());
  for (Vertex v = 0; v < g.order(); ++v) deg[v] = g.degree(v);
  std::vector<bool> removed(g.order(), false);
  for (std::size_t step = 0; step < g.order(); ++step) {
    Vertex best = g.order();
    for (Vertex v = 0; v < g.order(); ++v)
      if (!removed[v] && (best == g.order() || deg[v] < deg[best])) best = v;
    out.d = std::max(out.d, deg[best]);
    out.order.push_back(best);
    removed[best] = true;
    g.neighbors(best).for_each([&](Vertex w) {
      if (!removed[w]) --deg[w];
    });
  }
  if (static_cast<std::int64_t>(out.d) > (grad_0_flow(g) * 2).floor())
    throw Error("degeneracy exceeds floor(2 grad_0)");
  return out;
}

}  // namespace sd
