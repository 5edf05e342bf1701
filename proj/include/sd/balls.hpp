#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sd/error.hpp"
#include "sd/graph.hpp"

namespace sd {

// Default cap on |V(G)| for exhaustive ball-family enumeration.
inline constexpr std::size_t kBallFamilyLimit = 12;

// Calls visit(mask) once for every nonempty connected vertex subset of g[within].
// Subsets are grown from their minimum vertex, so no powerset filtering happens.
// Requires g.order() <= 64.
template <class Visit>
void for_each_connected_subset(const Graph& g, std::uint64_t within, Visit&& visit) {
  if (g.order() > 64) throw LimitExceeded("connected-subset enumeration needs at most 64 vertices");
  std::vector<std::uint64_t> nbr(g.order());
  for (Vertex v = 0; v < g.order(); ++v) nbr[v] = g.neighbor_mask(v) & within;

  // Emits every connected set containing `set`, disjoint from `excluded`, whose
  // remaining vertices are reached through `cand` = N(set) \ (set | excluded).
  auto grow = [&](auto&& self, std::uint64_t set, std::uint64_t cand, std::uint64_t excluded) -> void {
    visit(set);
    while (cand != 0) {
      const auto w = static_cast<Vertex>(std::countr_zero(cand));
      const std::uint64_t bit = std::uint64_t{1} << w;
      cand &= ~bit;
      const std::uint64_t next_set = set | bit;
      self(self, next_set, cand | (nbr[w] & ~next_set & ~excluded), excluded);
      excluded |= bit;
    }
  };

  for (std::uint64_t rest = within; rest != 0; rest &= rest - 1) {
    const auto v = static_cast<Vertex>(std::countr_zero(rest));
    const std::uint64_t at_most_v = (v == 63) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (v + 1)) - 1);
    grow(grow, std::uint64_t{1} << v, nbr[v] & ~at_most_v, at_most_v);
  }
}

template <class Visit>
void for_each_connected_subset(const Graph& g, Visit&& visit) {
  const std::uint64_t all = g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  for_each_connected_subset(g, all, std::forward<Visit>(visit));
}

// Family of pairwise disjoint balls (connected vertex sets) of radius at most r.
struct BallFamily {
  std::vector<VertexSet> balls;
  std::size_t r = 0;
};

// Throws InvalidArgument unless every invariant of the family holds in g.
inline void validate_ball_family(const Graph& g, const BallFamily& family) {
  VertexSet used(g.order());
  for (const auto& ball : family.balls) {
    if (ball.universe() != g.order()) throw InvalidArgument("ball belongs to a different graph");
    if (ball.intersects(used)) throw InvalidArgument("balls are not pairwise disjoint");
    if (radius_center(g, ball).radius > family.r)
      throw InvalidArgument("ball radius exceeds the family bound " + std::to_string(family.r));
    used |= ball;
  }
}

// Graph on the balls; i ~ j iff an edge of g joins ball i to ball j. Uncovered vertices are dropped.
inline Graph quotient(const Graph& g, const BallFamily& family) {
  validate_ball_family(g, family);
  const auto& balls = family.balls;
  std::vector<VertexSet> reach;
  reach.reserve(balls.size());
  for (const auto& ball : balls) {
    VertexSet nb(g.order());
    ball.for_each([&](Vertex v) { nb |= g.neighbors(v); });
    reach.push_back(std::move(nb));
  }
  Graph q(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      if (reach[i].intersects(balls[j])) q.add_edge(i, j);
  return q;
}

// Radius of g[mask] (mask connected, nonempty), via BFS from each member.
inline std::size_t mask_radius(const Graph& g, std::uint64_t mask) {
  std::size_t best = kUnreachable;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    const auto src = static_cast<Vertex>(std::countr_zero(rest));
    std::uint64_t seen = std::uint64_t{1} << src, frontier = seen;
    std::size_t ecc = 0;
    while (true) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1)
        next |= g.neighbor_mask(static_cast<Vertex>(std::countr_zero(f)));
      next &= mask & ~seen;
      if (next == 0) break;
      seen |= next;
      frontier = next;
      ++ecc;
      if (ecc >= best) break;
    }
    best = std::min(best, ecc);
  }
  return best;
}

// All balls of radius <= r, bucketed by their minimum vertex.
inline std::vector<std::vector<std::uint64_t>> balls_by_min_vertex(const Graph& g, std::size_t r) {
  std::vector<std::vector<std::uint64_t>> out(g.order());
  for_each_connected_subset(g, [&](std::uint64_t s) {
    if (mask_radius(g, s) <= r) out[static_cast<Vertex>(std::countr_zero(s))].push_back(s);
  });
  return out;
}

// Calls visit(span of ball masks) once per family of pairwise disjoint balls of radius <= r,
// including the empty family. Balls inside a family are ordered by minimum vertex.
template <class Visit>
void for_each_ball_family(const Graph& g, std::size_t r, Visit&& visit, std::size_t limit = kBallFamilyLimit) {
  if (g.order() > limit)
    throw LimitExceeded("exhaustive ball-family enumeration is capped at " + std::to_string(limit) +
                        " vertices; use the heuristic grad lower bound instead");
  const auto by_min = balls_by_min_vertex(g, r);
  std::vector<std::uint64_t> chosen;
  auto rec = [&](auto&& self, Vertex v, std::uint64_t used) -> void {
    while (v < g.order() && ((used >> v) & 1u)) ++v;
    if (v == g.order()) {
      visit(std::span<const std::uint64_t>(chosen));
      return;
    }
    self(self, v + 1, used);
    for (std::uint64_t ball : by_min[v]) {
      if (ball & used) continue;
      chosen.push_back(ball);
      self(self, v + 1, used | ball);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
}

inline std::vector<BallFamily> enumerate_ball_families(const Graph& g, std::size_t r,
                                                       std::size_t limit = kBallFamilyLimit) {
  std::vector<BallFamily> out;
  for_each_ball_family(
      g, r,
      [&](std::span<const std::uint64_t> balls) {
        BallFamily f{{}, r};
        for (auto b : balls) f.balls.push_back(VertexSet::from_mask(g.order(), b));
        out.push_back(std::move(f));
      },
      limit);
  return out;
}

}  // namespace sd
