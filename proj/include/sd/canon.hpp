#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sd/error.hpp"
#include "sd/graph.hpp"

namespace sd {

namespace detail {

// Colour refinement to a stable ordered partition. New colours are ranks of
// (old colour, sorted neighbour colours), so the result is labelling-invariant.
inline std::vector<std::size_t> refine(const Graph& g, std::vector<std::size_t> colour) {
  const std::size_t n = g.order();
  while (true) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      g.neighbors(v).for_each([&](Vertex w) { sig[v].second.push_back(colour[w]); });
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> next(n);
    for (Vertex v = 0; v < n; ++v)
      next[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    const std::size_t before = std::set<std::size_t>(colour.begin(), colour.end()).size();
    colour = std::move(next);
    if (sorted.size() == before) return colour;
  }
}

inline bool twins(const Graph& g, Vertex u, Vertex v) {
  VertexSet a = g.neighbors(u), b = g.neighbors(v);
  a.erase(v);
  b.erase(u);
  return a == b;
}

// Row-major upper triangle of g relabelled so that vertex v goes to position[v].
inline std::vector<bool> certificate(const Graph& g, const std::vector<std::size_t>& position) {
  const std::size_t n = g.order();
  std::vector<Vertex> at(n);
  for (Vertex v = 0; v < n; ++v) at[position[v]] = v;
  std::vector<bool> bits;
  bits.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) bits.push_back(g.adjacent(at[i], at[j]));
  return bits;
}

}  // namespace detail

inline constexpr std::size_t kCanonicalLimit = 12;

// Canonical relabelling by individualisation-refinement: the result is equal
// (==) for two inputs iff they are isomorphic. Twin vertices are individualised
// once per twin class.
inline Graph canonical_form(const Graph& g, std::size_t limit = kCanonicalLimit) {
  if (g.order() > limit) throw LimitExceeded("canonical labelling is capped at " + std::to_string(limit) + " vertices");
  const std::size_t n = g.order();
  std::optional<std::vector<bool>> best_cert;
  std::vector<std::size_t> best_pos;

  auto search = [&](auto&& self, std::vector<std::size_t> colour) -> void {
    colour = detail::refine(g, std::move(colour));
    // first non-singleton cell, by colour
    std::vector<std::size_t> count(n, 0);
    for (auto c : colour) ++count[c];
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c)
      if (count[c] > 1) {
        target = c;
        break;
      }
    if (target == n) {
      auto cert = detail::certificate(g, colour);
      if (!best_cert || cert > *best_cert) {
        best_cert = std::move(cert);
        best_pos = colour;
      }
      return;
    }
    std::vector<Vertex> tried;
    for (Vertex v = 0; v < n; ++v) {
      if (colour[v] != target) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](Vertex u) { return detail::twins(g, u, v); })) continue;
      tried.push_back(v);
      std::vector<std::size_t> split(n);
      for (Vertex u = 0; u < n; ++u) split[u] = 2 * colour[u] + ((colour[u] == target && u != v) ? 1 : 0);
      self(self, std::move(split));
    }
  };
  search(search, std::vector<std::size_t>(n, 0));

  Graph out(n);
  for (auto [u, v] : g.edges()) out.add_edge(best_pos[u], best_pos[v]);
  return out;
}

}  // namespace sd
