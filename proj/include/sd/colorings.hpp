#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sd/balls.hpp"
#include "sd/error.hpp"
#include "sd/graph.hpp"
#include "sd/treedepth.hpp"

namespace sd {

// Vertex colouring with colours 0..k-1, every colour used.
class Coloring {
 public:
  Coloring() = default;

  // Re-indexes the given colours densely, preserving their order.
  explicit Coloring(const std::vector<std::size_t>& raw) {
    std::map<std::size_t, std::size_t> dense;
    for (auto c : raw) dense.emplace(c, 0);
    for (std::size_t i = 0; auto& [c, id] : dense) id = i++;
    color_.reserve(raw.size());
    for (auto c : raw) color_.push_back(dense[c]);
    k_ = dense.size();
  }

  std::size_t operator[](Vertex v) const { return color_[v]; }
  std::size_t size() const noexcept { return color_.size(); }
  std::size_t colors() const noexcept { return k_; }
  const std::vector<std::size_t>& values() const noexcept { return color_; }

  VertexSet class_of(std::size_t c) const {
    VertexSet s(color_.size());
    for (Vertex v = 0; v < color_.size(); ++v)
      if (color_[v] == c) s.insert(v);
    return s;
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::vector<std::size_t> color_;
  std::size_t k_ = 0;
};

inline constexpr std::size_t kCenteredLimit = 16;

struct CenteredCheck {
  bool ok = true;
  std::optional<VertexSet> counterexample;
};

// p-centered: every connected vertex set has a colour occurring exactly once in it,
// or sees at least p colours. The condition depends on the vertex set only, so
// connected induced subsets are enumerated.
inline CenteredCheck verify_p_centered(const Graph& g, const Coloring& c, std::size_t p,
                                       std::size_t limit = kCenteredLimit) {
  if (g.order() > limit) throw LimitExceeded("centered verification is capped at " + std::to_string(limit) + " vertices");
  if (c.size() != g.order()) throw InvalidArgument("colouring does not match the graph");
  CenteredCheck out;
  std::vector<std::uint8_t> seen(c.colors(), 0);
  bool stop = false;
  for_each_connected_subset(g, [&](std::uint64_t s) {
    if (stop) return;
    std::size_t distinct = 0;
    for (std::uint64_t b = s; b != 0; b &= b - 1) {
      const auto col = c[static_cast<Vertex>(std::countr_zero(b))];
      if (seen[col]++ == 0) ++distinct;
    }
    bool unique = false;
    for (std::uint64_t b = s; b != 0; b &= b - 1) {
      const auto col = c[static_cast<Vertex>(std::countr_zero(b))];
      unique = unique || seen[col] == 1;
      seen[col] = 0;
    }
    if (!unique && distinct < p) {
      out.ok = false;
      out.counterexample = VertexSet::from_mask(g.order(), s);
      stop = true;
    }
  });
  return out;
}

// Colours each vertex by its level in the witness forest (roots get colour 0).
inline Coloring centered_from_td(const Graph& g, const TdCertificate& cert) {
  if (!verify_td(g, cert)) throw InvalidArgument("tree-depth certificate does not cover the graph");
  std::vector<std::size_t> level(g.order());
  for (Vertex v = 0; v < g.order(); ++v) level[v] = cert.forest.height(v) - 1;
  return Coloring(level);
}

struct LowTdWitness {
  std::vector<std::size_t> classes;  // the colour classes whose union was inspected
  VertexSet component;
  std::size_t depth = 0;
};

struct LowTdReport {
  bool ok = true;
  std::optional<LowTdWitness> violation;  // first failing (classes, component)
  std::optional<LowTdWitness> worst;      // component maximising depth - |classes|
};

namespace detail {

template <class Visit>
void for_each_subset_of_size(std::size_t k, std::size_t size, Visit&& visit) {
  if (size > k) return;
  std::vector<std::size_t> pick(size);
  for (std::size_t i = 0; i < size; ++i) pick[i] = i;
  while (true) {
    visit(std::as_const(pick));
    std::size_t i = size;
    while (i > 0 && pick[i - 1] == k - size + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

// Low tree-depth condition: for i <= p, every component of the subgraph induced
// by any i colour classes has tree-depth at most i.
inline LowTdReport verify_low_td(const Graph& g, const Coloring& c, std::size_t p,
                                 std::size_t td_limit = kTreeDepthLimit) {
  if (c.size() != g.order()) throw InvalidArgument("colouring does not match the graph");
  LowTdReport rep;
  std::vector<VertexSet> cls;
  for (std::size_t col = 0; col < c.colors(); ++col) cls.push_back(c.class_of(col));
  long best_gap = 0;
  bool have_worst = false;
  for (std::size_t i = 1; i <= std::min(p, c.colors()); ++i) {
    detail::for_each_subset_of_size(c.colors(), i, [&](const std::vector<std::size_t>& pick) {
      VertexSet s(g.order());
      for (auto col : pick) s |= cls[col];
      for (auto& comp : components_within(g, s)) {
        const Graph h = induced(g, comp);
        if (h.order() > td_limit)
          throw LimitExceeded("component of " + std::to_string(h.order()) + " vertices exceeds the tree-depth cap");
        const auto td = tree_depth(h, td_limit).value;
        const long gap = static_cast<long>(td) - static_cast<long>(i);
        if (!have_worst || gap > best_gap) {
          have_worst = true;
          best_gap = gap;
          rep.worst = LowTdWitness{pick, comp, td};
        }
        if (td > i && rep.ok) {
          rep.ok = false;
          rep.violation = LowTdWitness{pick, comp, td};
        }
      }
    });
  }
  return rep;
}

inline constexpr std::size_t kExhaustiveColoringLimit = 10;

struct LowTdSearch {
  std::optional<Coloring> coloring;
  bool exhaustive = false;  // true: absence / minimality is proven
};

namespace detail {

// Does assigning colour[v] break the low-td condition on the assigned vertices?
// Only unions containing colour[v], and only v's component, can have changed.
inline bool breaks_low_td(const Graph& g, const std::vector<long>& colour, Vertex v, std::size_t used_colors,
                          std::size_t p) {
  const auto cv = static_cast<std::size_t>(colour[v]);
  std::vector<std::size_t> others;
  for (std::size_t c = 0; c < used_colors; ++c)
    if (c != cv) others.push_back(c);
  bool broken = false;
  for (std::size_t extra = 0; extra < p && !broken; ++extra) {
    for_each_subset_of_size(others.size(), extra, [&](const std::vector<std::size_t>& pick) {
      if (broken) return;
      VertexSet s(g.order());
      for (Vertex u = 0; u < g.order(); ++u) {
        if (colour[u] < 0) continue;
        const auto cu = static_cast<std::size_t>(colour[u]);
        if (cu == cv || std::any_of(pick.begin(), pick.end(), [&](std::size_t i) { return others[i] == cu; }))
          s.insert(u);
      }
      const auto comp = reachable_within(g, s, v);
      if (comp.size() <= extra + 1) return;
      if (tree_depth(induced(g, comp)).value > extra + 1) broken = true;
    });
  }
  return broken;
}

// Exhaustive search for a low-td colouring with exactly k colours, colours in
// first-use order to break symmetry.
inline std::optional<Coloring> exhaustive_low_td(const Graph& g, std::size_t p, std::size_t k) {
  const std::size_t n = g.order();
  std::vector<long> colour(n, -1);
  auto rec = [&](auto&& self, Vertex v, std::size_t used) -> bool {
    if (v == n) return used == k;
    if (k - used > n - v) return false;
    for (std::size_t c = 0; c <= std::min(used, k - 1); ++c) {
      bool proper = true;
      g.neighbors(v).for_each([&](Vertex w) { proper = proper && colour[w] != static_cast<long>(c); });
      if (!proper) continue;
      colour[v] = static_cast<long>(c);
      const std::size_t now = std::max(used, c + 1);
      if (!breaks_low_td(g, colour, v, now, p) && self(self, v + 1, now)) return true;
      colour[v] = -1;
    }
    return false;
  };
  if (!rec(rec, 0, 0)) return std::nullopt;
  std::vector<std::size_t> raw(colour.begin(), colour.end());
  return Coloring(raw);
}

// Greedy colouring along the reversed degeneracy order in which vertices at
// distance <= radius receive distinct colours.
inline Coloring distance_greedy(const Graph& g, std::size_t radius) {
  const std::size_t n = g.order();
  std::vector<std::size_t> deg(n);
  std::vector<bool> removed(n, false);
  std::vector<Vertex> peel;
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = n;
    for (Vertex v = 0; v < n; ++v)
      if (!removed[v] && (best == n || deg[v] < deg[best])) best = v;
    removed[best] = true;
    peel.push_back(best);
    g.neighbors(best).for_each([&](Vertex w) { --deg[w]; });
  }
  std::vector<long> colour(n, -1);
  for (auto it = peel.rbegin(); it != peel.rend(); ++it) {
    const auto dist = distances(g, *it);
    std::vector<bool> taken(n + 1, false);
    for (Vertex u = 0; u < n; ++u)
      if (colour[u] >= 0 && dist[u] <= radius) taken[static_cast<std::size_t>(colour[u])] = true;
    std::size_t c = 0;
    while (taken[c]) ++c;
    colour[*it] = static_cast<long>(c);
  }
  return Coloring(std::vector<std::size_t>(colour.begin(), colour.end()));
}

}  // namespace detail

// Fewest-colour low tree-depth colouring with at most k_max colours. Exhaustive
// iterative deepening for |V| <= kExhaustiveColoringLimit (or when forced);
// otherwise distance-greedy seeds verified by verify_low_td, best effort.
inline LowTdSearch find_low_td_coloring(const Graph& g, std::size_t p, std::size_t k_max,
                                        bool force_exhaustive = false) {
  LowTdSearch out;
  if (g.order() == 0) {
    out.coloring = Coloring{};
    out.exhaustive = true;
    return out;
  }
  if (g.order() <= kExhaustiveColoringLimit || force_exhaustive) {
    out.exhaustive = true;
    for (std::size_t k = 1; k <= std::min(k_max, g.order()); ++k)
      if (auto c = detail::exhaustive_low_td(g, p, k)) {
        out.coloring = std::move(c);
        return out;
      }
    return out;
  }
  for (std::size_t radius = 1; radius <= 2 * p; ++radius) {
    auto c = detail::distance_greedy(g, radius);
    if (c.colors() > k_max) break;
    if (verify_low_td(g, c, p).ok) {
      out.coloring = std::move(c);
      return out;
    }
  }
  if (g.order() <= k_max) {
    std::vector<std::size_t> rainbow(g.order());
    for (Vertex v = 0; v < g.order(); ++v) rainbow[v] = v;
    out.coloring = Coloring(rainbow);
  }
  return out;
}

struct ProductColoring {
  Coloring coloring;
  std::size_t base_colors = 0;     // k: colours of the low-td colouring
  std::size_t parts = 0;           // number of p-subsets of classes used
  std::size_t max_part_colors = 0;  // t: most colours used by any level colouring of a part
};

// Product of a low tree-depth colouring with the forest-level colourings of the
// subgraphs induced by each p-subset of its classes. The result is p-centered.
inline ProductColoring product_centered(const Graph& g, const Coloring& cbar, std::size_t p) {
  if (p == 0) throw InvalidArgument("threshold must be positive");
  if (!verify_low_td(g, cbar, p).ok) throw InvalidArgument("base colouring is not a low tree-depth colouring");
  const std::size_t k = cbar.colors();
  const std::size_t width = std::min(p, k);
  std::vector<std::vector<long>> tuple(g.order());
  for (Vertex v = 0; v < g.order(); ++v) tuple[v].push_back(static_cast<long>(cbar[v]));

  ProductColoring out;
  out.base_colors = k;
  detail::for_each_subset_of_size(k, width, [&](const std::vector<std::size_t>& part) {
    VertexSet s(g.order());
    for (auto col : part) s |= cbar.class_of(col);
    const auto sub = induced_subgraph(g, s);
    const auto levels = centered_from_td(sub.graph, tree_depth(sub.graph));
    out.max_part_colors = std::max(out.max_part_colors, levels.colors());
    ++out.parts;
    std::vector<long> coord(g.order(), -1);
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i) coord[sub.to_parent[i]] = static_cast<long>(levels[i]);
    for (Vertex v = 0; v < g.order(); ++v) tuple[v].push_back(coord[v]);
  });

  std::map<std::vector<long>, std::size_t> ids;
  std::vector<std::size_t> raw(g.order());
  for (Vertex v = 0; v < g.order(); ++v) raw[v] = ids.emplace(tuple[v], ids.size()).first->second;
  out.coloring = Coloring(raw);
  return out;
}

}  // namespace sd
