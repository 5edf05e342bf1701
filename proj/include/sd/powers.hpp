#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sd/error.hpp"
#include "sd/graph.hpp"

namespace sd {

enum class PowerKind { exact_path, exact_distance };

inline constexpr std::size_t kExactPathLimit = 7;

// x ~ y iff some simple path of length exactly p joins them.
inline Graph exact_power(const Graph& g, std::size_t p) {
  if (p == 0) throw InvalidArgument("path length must be at least 1");
  if (p > kExactPathLimit) throw LimitExceeded("exact powers are capped at length " + std::to_string(kExactPathLimit));
  const std::size_t n = g.order();
  Graph out(n);
  std::vector<bool> on_path(n, false);
  for (Vertex s = 0; s < n; ++s) {
    // DFS over simple paths from s; endpoints t > s at depth p become edges.
    auto walk = [&](auto&& self, Vertex v, std::size_t depth) -> void {
      if (depth == p) {
        if (v > s) out.add_edge(s, v);
        return;
      }
      g.neighbors(v).for_each([&](Vertex w) {
        if (on_path[w]) return;
        if (depth + 1 == p && (w < s || out.adjacent(s, w))) return;
        on_path[w] = true;
        self(self, w, depth + 1);
        on_path[w] = false;
      });
    };
    on_path[s] = true;
    walk(walk, s, 0);
    on_path[s] = false;
  }
  return out;
}

// x ~ y iff their distance in g is exactly p.
inline Graph exact_distance_graph(const Graph& g, std::size_t p) {
  if (p == 0) throw InvalidArgument("distance must be at least 1");
  Graph out(g.order());
  for (Vertex s = 0; s < g.order(); ++s) {
    const auto d = distances(g, s);
    for (Vertex t = s + 1; t < g.order(); ++t)
      if (d[t] == p) out.add_edge(s, t);
  }
  return out;
}

inline Graph power(const Graph& g, PowerKind kind, std::size_t p) {
  return kind == PowerKind::exact_path ? exact_power(g, p) : exact_distance_graph(g, p);
}

// Length of a shortest odd cycle; nullopt (infinite) iff g is bipartite. An edge
// joining two vertices at equal BFS distance d from some root closes an odd walk
// of length 2d + 1, and the minimum over all roots is attained by a cycle.
inline std::optional<std::size_t> odd_girth(const Graph& g) {
  std::optional<std::size_t> best;
  for (Vertex s = 0; s < g.order(); ++s) {
    const auto d = distances(g, s);
    for (auto [u, v] : g.edges())
      if (d[u] != kUnreachable && d[u] == d[v]) {
        const std::size_t len = 2 * d[u] + 1;
        if (!best || len < *best) best = len;
      }
  }
  return best;
}

struct ChromaticResult {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact = true;
  std::vector<std::size_t> coloring;  // proper colouring with `upper` colours
};

inline constexpr std::size_t kChromaticLimit = 20;

namespace detail {

inline std::size_t greedy_clique(const Graph& g) {
  std::size_t best = g.order() == 0 ? 0 : 1;
  for (Vertex s = 0; s < g.order(); ++s) {
    VertexSet cand = g.neighbors(s);
    std::size_t size = 1;
    while (!cand.empty()) {
      Vertex pick = cand.first();
      std::size_t pick_deg = 0;
      cand.for_each([&](Vertex v) {
        const std::size_t d = (g.neighbors(v) & cand).size();
        if (d > pick_deg) {
          pick = v;
          pick_deg = d;
        }
      });
      ++size;
      cand &= g.neighbors(pick);
    }
    best = std::max(best, size);
  }
  return best;
}

// DSATUR: next vertex has the most distinct neighbour colours, ties by degree then index.
inline Vertex most_saturated(const Graph& g, const std::vector<long>& colour) {
  Vertex pick = g.order();
  std::size_t best_sat = 0, best_deg = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (colour[v] >= 0) continue;
    std::vector<bool> seen(g.order() + 1, false);
    std::size_t sat = 0;
    g.neighbors(v).for_each([&](Vertex w) {
      if (colour[w] >= 0 && !seen[static_cast<std::size_t>(colour[w])]) {
        seen[static_cast<std::size_t>(colour[w])] = true;
        ++sat;
      }
    });
    const std::size_t deg = g.degree(v);
    if (pick == g.order() || sat > best_sat || (sat == best_sat && deg > best_deg)) {
      pick = v;
      best_sat = sat;
      best_deg = deg;
    }
  }
  return pick;
}

inline std::vector<long> dsatur_greedy(const Graph& g) {
  std::vector<long> colour(g.order(), -1);
  for (std::size_t step = 0; step < g.order(); ++step) {
    const Vertex v = most_saturated(g, colour);
    std::vector<bool> taken(g.order() + 1, false);
    g.neighbors(v).for_each([&](Vertex w) {
      if (colour[w] >= 0) taken[static_cast<std::size_t>(colour[w])] = true;
    });
    long c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    colour[v] = c;
  }
  return colour;
}

// Backtracking k-colouring in DSATUR order; a new colour is opened at most once per level.
inline bool colorable(const Graph& g, std::size_t k, std::vector<long>& colour, std::size_t used) {
  const Vertex v = most_saturated(g, colour);
  if (v == g.order()) return true;
  for (std::size_t c = 0; c < std::min(k, used + 1); ++c) {
    bool ok = true;
    g.neighbors(v).for_each([&](Vertex w) { ok = ok && colour[w] != static_cast<long>(c); });
    if (!ok) continue;
    colour[v] = static_cast<long>(c);
    if (colorable(g, k, colour, std::max(used, c + 1))) return true;
    colour[v] = -1;
  }
  return false;
}

}  // namespace detail

// Exact chromatic number by DSATUR branch-and-bound between a greedy clique bound
// and the DSATUR greedy colouring. Above the cap only the bounds are returned.
inline ChromaticResult chromatic_number(const Graph& g, std::size_t limit = kChromaticLimit) {
  ChromaticResult res;
  if (g.order() == 0) return res;
  res.lower = detail::greedy_clique(g);
  auto greedy = detail::dsatur_greedy(g);
  res.upper = static_cast<std::size_t>(*std::max_element(greedy.begin(), greedy.end())) + 1;
  res.coloring.assign(greedy.begin(), greedy.end());
  if (g.order() > limit) {
    res.exact = res.lower == res.upper;
    return res;
  }
  while (res.lower < res.upper) {
    std::vector<long> colour(g.order(), -1);
    if (!detail::colorable(g, res.upper - 1, colour, 0)) {
      res.lower = res.upper;
      break;
    }
    res.upper = static_cast<std::size_t>(*std::max_element(colour.begin(), colour.end())) + 1;
    res.coloring.assign(colour.begin(), colour.end());
  }
  return res;
}

struct OddPowerItem {
  std::optional<std::size_t> odd_girth;  // nullopt: infinite
  bool skipped = false;                  // hypothesis odd-girth > p fails
  std::size_t max_degree = 0;
  std::uint64_t degree_bound = 0;  // max_degree^p + 1
  std::optional<ChromaticResult> chi_exact_power;
  std::optional<ChromaticResult> chi_exact_distance;
};

struct OddPowerReport {
  std::size_t p = 0;
  std::vector<OddPowerItem> items;
  std::size_t max_chi_exact_power = 0;
  std::size_t max_chi_exact_distance = 0;
  std::optional<std::size_t> claim;
  bool pass = true;
};

inline std::uint64_t saturating_power_plus_one(std::uint64_t base, std::size_t p) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (base != 0 && r > (UINT64_MAX - 1) / base) return UINT64_MAX;
    r *= base;
  }
  return r + 1;
}

// Chromatic numbers of both exact powers over the corpus graphs with odd-girth > p,
// checked against the max-degree ceiling and, when given, against `claim`.
inline OddPowerReport odd_power_experiment(std::span<const Graph> corpus, std::size_t p,
                                           std::optional<std::size_t> claim = std::nullopt) {
  if (p % 2 == 0) throw InvalidArgument("the experiment needs an odd path length");
  OddPowerReport rep;
  rep.p = p;
  rep.claim = claim;
  for (const auto& g : corpus) {
    OddPowerItem item;
    item.odd_girth = odd_girth(g);
    item.max_degree = g.max_degree();
    item.degree_bound = saturating_power_plus_one(item.max_degree, p);
    item.skipped = item.odd_girth && *item.odd_girth <= p;
    if (!item.skipped) {
      item.chi_exact_power = chromatic_number(exact_power(g, p));
      item.chi_exact_distance = chromatic_number(exact_distance_graph(g, p));
      const auto a = item.chi_exact_power->upper, b = item.chi_exact_distance->upper;
      if (!item.chi_exact_power->exact || !item.chi_exact_distance->exact) rep.pass = false;
      rep.max_chi_exact_power = std::max(rep.max_chi_exact_power, a);
      rep.max_chi_exact_distance = std::max(rep.max_chi_exact_distance, b);
      if (a > item.degree_bound) rep.pass = false;
    }
    rep.items.push_back(std::move(item));
  }
  if (claim && (rep.max_chi_exact_power > *claim || rep.max_chi_exact_distance > *claim)) rep.pass = false;
  return rep;
}

}  // namespace sd
