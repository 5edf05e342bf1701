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

enum class HomStatus { found, none, budget };

inline const char* to_string(HomStatus s) {
  switch (s) {
    case HomStatus::found: return "found";
    case HomStatus::none: return "none";
    case HomStatus::budget: return "budget";
  }
  return "?";
}

// Outcome of a homomorphism search. `budget` is never a proof of non-existence.
struct HomResult {
  HomStatus status = HomStatus::none;
  VertexMap map;  // valid iff status == found
  std::uint64_t nodes = 0;

  bool found() const noexcept { return status == HomStatus::found; }
};

struct HomOptions {
  std::uint64_t node_budget = 0;  // 0: unlimited
};

// Source vertices in BFS order, components taken by smallest unvisited vertex.
inline std::vector<Vertex> bfs_order(const Graph& g) {
  std::vector<Vertex> order;
  std::vector<bool> seen(g.order(), false);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    const std::size_t head0 = order.size();
    order.push_back(s);
    for (std::size_t head = head0; head < order.size(); ++head)
      g.neighbors(order[head]).for_each([&](Vertex w) {
        if (!seen[w]) {
          seen[w] = true;
          order.push_back(w);
        }
      });
  }
  return order;
}

// Backtracking search for g -> h over source vertices in BFS order, images ascending,
// with forward checking of the candidate sets of unassigned neighbours.
// The first map found in that order is returned, so results are deterministic.
inline HomResult find_homomorphism(const Graph& g, const Graph& h, const HomOptions& opt = {}) {
  HomResult result;
  const std::size_t n = g.order();
  if (n == 0) {
    result.status = HomStatus::found;
    return result;
  }
  VertexSet non_isolated(h.order());
  for (Vertex x = 0; x < h.order(); ++x)
    if (h.degree(x) > 0) non_isolated.insert(x);
  const VertexSet everything = VertexSet::full(h.order());

  std::vector<VertexSet> domain(n);
  for (Vertex v = 0; v < n; ++v) domain[v] = g.degree(v) > 0 ? non_isolated : everything;
  for (Vertex v = 0; v < n; ++v)
    if (domain[v].empty()) return result;

  const auto order = bfs_order(g);
  std::vector<Vertex> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  std::vector<std::vector<Vertex>> later_neighbors(n);
  for (std::size_t i = 0; i < n; ++i)
    g.neighbors(order[i]).for_each([&](Vertex w) {
      if (position[w] > i) later_neighbors[i].push_back(w);
    });

  VertexMap image(n, 0);
  bool out_of_budget = false;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const Vertex v = order[depth];
    const VertexSet candidates = domain[v];
    for (Vertex x = candidates.first(); x < h.order(); x = candidates.next(x + 1)) {
      if (opt.node_budget != 0 && result.nodes >= opt.node_budget) {
        out_of_budget = true;
        return false;
      }
      ++result.nodes;
      image[v] = x;
      const VertexSet nx = h.neighbors(x);
      std::vector<std::pair<Vertex, VertexSet>> saved;
      bool wiped = false;
      for (Vertex w : later_neighbors[depth]) {
        saved.emplace_back(w, domain[w]);
        domain[w] &= nx;
        if (domain[w].empty()) {
          wiped = true;
          break;
        }
      }
      if (!wiped && self(self, depth + 1)) return true;
      for (auto& [w, d] : saved) domain[w] = std::move(d);
      if (out_of_budget) return false;
    }
    return false;
  };

  if (search(search, 0)) {
    result.status = HomStatus::found;
    result.map = std::move(image);
  } else {
    result.status = out_of_budget ? HomStatus::budget : HomStatus::none;
  }
  return result;
}

// Three-valued truth used where a search can run out of budget.
enum class Verdict { yes, no, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

// Whether no member of `forbidden` maps to g.
inline Verdict forb_member(const Graph& g, std::span<const Graph> forbidden, const HomOptions& opt = {}) {
  bool unknown = false;
  for (const auto& f : forbidden) {
    const auto r = find_homomorphism(f, g, opt);
    if (r.status == HomStatus::found) return Verdict::no;
    if (r.status == HomStatus::budget) unknown = true;
  }
  return unknown ? Verdict::unknown : Verdict::yes;
}

inline Verdict hom_equivalent(const Graph& g, const Graph& h, const HomOptions& opt = {}) {
  const auto a = find_homomorphism(g, h, opt);
  if (a.status == HomStatus::none) return Verdict::no;
  const auto b = find_homomorphism(h, g, opt);
  if (b.status == HomStatus::none) return Verdict::no;
  if (a.found() && b.found()) return Verdict::yes;
  return Verdict::unknown;
}

inline constexpr std::size_t kCoreLimit = 10;

// Minimum retract of g. Among the minimum-size retracts the one with the
// lexicographically smallest sorted vertex list is returned.
inline Subgraph core(const Graph& g, std::size_t limit = kCoreLimit) {
  if (g.order() > limit)
    throw LimitExceeded("core computation is capped at " + std::to_string(limit) + " vertices");
  const std::size_t n = g.order();

  // Shrink by non-surjective endomorphisms: g -> g - v certifies a smaller hom-equivalent graph.
  VertexSet current = VertexSet::full(n);
  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    const Graph cur = induced(g, current);
    for (Vertex v : current.members()) {
      VertexSet smaller = current;
      smaller.erase(v);
      if (find_homomorphism(cur, induced(g, smaller)).found()) {
        current = std::move(smaller);
        shrunk = true;
        break;
      }
    }
  }
  const std::size_t k = current.size();

  // Canonical choice: first k-subset, in lexicographic order, that g retracts onto.
  std::vector<Vertex> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    VertexSet s(n);
    for (Vertex v : pick) s.insert(v);
    if (find_homomorphism(g, induced(g, s)).found()) return induced_subgraph(g, s);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return induced_subgraph(g, current);  // unreachable: `current` itself qualifies
}

inline constexpr std::size_t kIsomorphismLimit = 10;

// Edge-preserving bijection search with degree pruning.
inline bool is_isomorphic(const Graph& g, const Graph& h, std::size_t limit = kIsomorphismLimit) {
  if (g.order() > limit || h.order() > limit)
    throw LimitExceeded("isomorphism test is capped at " + std::to_string(limit) + " vertices");
  const std::size_t n = g.order();
  if (n != h.order() || g.size() != h.size()) return false;
  std::vector<std::size_t> dg(n), dh(n);
  for (Vertex v = 0; v < n; ++v) {
    dg[v] = g.degree(v);
    dh[v] = h.degree(v);
  }
  {
    auto a = dg, b = dh;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  const auto order = bfs_order(g);
  std::vector<Vertex> image(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const Vertex v = order[depth];
    for (Vertex x = 0; x < n; ++x) {
      if (used[x] || dh[x] != dg[v]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i)
        ok = g.adjacent(v, order[i]) == h.adjacent(x, image[order[i]]);
      if (!ok) continue;
      image[v] = x;
      used[x] = true;
      if (self(self, depth + 1)) return true;
      used[x] = false;
    }
    return false;
  };
  return extend(extend, 0);
}

}  // namespace sd
