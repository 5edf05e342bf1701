#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sd/canon.hpp"
#include "sd/error.hpp"
#include "sd/graph.hpp"

namespace sd {

// graph6: size header N(n), then the upper triangle x(i,j), i < j, in column
// order (j = 1..n-1, i = 0..j-1), packed six bits per byte with offset 63.
inline std::string to_graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  unsigned acc = 0, filled = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

inline Graph parse_graph6(std::string_view line) {
  if (line.starts_with(">>graph6<<")) line.remove_prefix(10);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  auto value = [&](std::size_t i) -> unsigned {
    const auto c = static_cast<unsigned char>(line[i]);
    if (c < 63 || c > 126) throw ParseError("graph6 byte outside 63..126", i);
    return c - 63u;
  };
  if (line.empty()) throw ParseError("empty graph6 string", 0);
  std::size_t n = 0, pos = 0;
  if (line[0] != '~') {
    n = value(0);
    pos = 1;
  } else if (line.size() >= 2 && line[1] != '~') {
    if (line.size() < 4) throw ParseError("truncated graph6 size header", line.size());
    for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | value(i);
    pos = 4;
  } else {
    if (line.size() < 8) throw ParseError("truncated graph6 size header", line.size());
    for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | value(i);
    pos = 8;
  }
  const std::size_t bits = n * (n == 0 ? 0 : n - 1) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (line.size() - pos != bytes)
    throw ParseError("graph6 body has " + std::to_string(line.size() - pos) + " bytes, expected " +
                         std::to_string(bytes),
                     std::min(line.size(), pos + bytes));
  Graph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++k)
      if ((value(pos + k / 6) >> (5 - k % 6)) & 1u) g.add_edge(i, j);
  if (bits % 6 != 0) {
    const unsigned pad_mask = (1u << (6 - bits % 6)) - 1;
    if (value(line.size() - 1) & pad_mask) throw ParseError("nonzero graph6 padding bits", line.size() - 1);
  }
  return g;
}

// Lines "u v"; an optional first line "n <count>" fixes the order, otherwise it is
// one more than the largest index. Blank lines and '#' comments are skipped.
inline Graph parse_edge_list(std::string_view text) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t offset = 0;
  bool first_content = true;
  while (offset <= text.size()) {
    const std::size_t end = std::min(text.find('\n', offset), text.size());
    std::string line(text.substr(offset, end - offset));
    const std::size_t line_start = offset;
    offset = end + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream in(line);
    std::string a, b, extra;
    if (!(in >> a)) {
      if (end == text.size()) break;
      continue;
    }
    auto number = [&](const std::string& tok) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError("expected a nonnegative integer, got '" + tok + "'", line_start);
      return v;
    };
    if (!(in >> b) || (in >> extra)) throw ParseError("expected two fields per line", line_start);
    if (a == "n") {
      if (!first_content) throw ParseError("vertex-count header must be the first line", line_start);
      declared = number(b);
    } else {
      const std::size_t u = number(a), v = number(b);
      if (u == v) throw ParseError("loop edge " + a + " " + b, line_start);
      edges.emplace_back(u, v);
    }
    first_content = false;
    if (end == text.size()) break;
  }
  std::size_t n = declared.value_or(0);
  if (!declared)
    for (auto [u, v] : edges) n = std::max(n, std::max(u, v) + 1);
  for (auto [u, v] : edges)
    if (u >= n || v >= n) throw ParseError("edge endpoint beyond declared vertex count", 0);
  return build_graph(n, edges);
}

inline std::string to_edge_list(const Graph& g) {
  std::string out = "n " + std::to_string(g.order()) + "\n";
  for (auto [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

inline bool is_triangle_free(const Graph& g) {
  for (auto [u, v] : g.edges())
    if (g.neighbors(u).intersects(g.neighbors(v))) return false;
  return true;
}

struct GraphFilter {
  std::size_t min_order = 0;
  std::optional<std::size_t> max_degree;
  bool connected = false;
  bool triangle_free = false;

  bool accepts(const Graph& g) const {
    if (g.order() < min_order) return false;
    if (max_degree && g.max_degree() > *max_degree) return false;
    if (connected && connected_components(g).size() != 1) return false;
    if (triangle_free && !is_triangle_free(g)) return false;
    return true;
  }
};

inline constexpr std::size_t kGenerateLimit = 8;

// Every graph on 0..n_max vertices up to isomorphism, in canonical labelling,
// ordered by (order, size, graph6). Built by vertex augmentation with canonical
// deduplication; filters are applied afterwards.
inline std::vector<Graph> generate_all_graphs(std::size_t n_max, const GraphFilter& filter = {},
                                              std::size_t limit = kGenerateLimit) {
  if (n_max > limit) throw LimitExceeded("graph generation is capped at " + std::to_string(limit) + " vertices");
  std::vector<std::vector<Graph>> levels{{Graph(0)}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::set<std::pair<std::size_t, std::string>> keys;
    std::vector<Graph> next;
    for (const auto& base : levels.back()) {
      for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (n - 1)); ++nb) {
        Graph g(n);
        for (auto [u, v] : base.edges()) g.add_edge(u, v);
        for (Vertex u = 0; u + 1 < n; ++u)
          if ((nb >> u) & 1u) g.add_edge(u, n - 1);
        Graph c = canonical_form(g);
        if (keys.emplace(c.size(), to_graph6(c)).second) next.push_back(std::move(c));
      }
    }
    std::sort(next.begin(), next.end(), [](const Graph& a, const Graph& b) {
      return std::make_pair(a.size(), to_graph6(a)) < std::make_pair(b.size(), to_graph6(b));
    });
    levels.push_back(std::move(next));
  }
  std::vector<Graph> out;
  for (auto& level : levels)
    for (auto& g : level)
      if (filter.accepts(g)) out.push_back(std::move(g));
  return out;
}

}  // namespace sd
