#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sd/canon.hpp"
#include "sd/colorings.hpp"
#include "sd/error.hpp"
#include "sd/graph.hpp"
#include "sd/hom.hpp"
#include "sd/io.hpp"
#include "sd/treedepth.hpp"

namespace sd {

// ---------------------------------------------------------------------------
// Local homomorphisms
// ---------------------------------------------------------------------------

// Witness g_I : G[phi^-1(I)] -> U for one maximal colour set I. Entries of
// `map` outside the preimage hold kUnreachable.
struct LocalWitness {
  std::vector<Vertex> colors;
  VertexMap map;
};

struct LocalHomCheck {
  Verdict verdict = Verdict::yes;
  std::optional<std::vector<Vertex>> failing;  // colour set whose preimage does not map to U
  std::vector<LocalWitness> witnesses;

  bool ok() const noexcept { return verdict == Verdict::yes; }
};

// G is (phi, p)-locally homomorphic to U iff every vertex set A with |phi(A)| <= p
// induces a subgraph mapping to U. Such an A lies inside phi^-1(I) for a p-subset
// I of the range of phi (or the whole range, when it is smaller), so only those
// maximal preimages are searched.
inline LocalHomCheck local_hom_check(const Graph& g, const VertexMap& phi, std::size_t p, const Graph& u,
                                     const HomOptions& opt = {}) {
  if (phi.size() != g.order()) throw InvalidArgument("map is not total on the source graph");
  if (p == 0) throw InvalidArgument("threshold must be positive");
  std::vector<Vertex> range(phi.begin(), phi.end());
  std::sort(range.begin(), range.end());
  range.erase(std::unique(range.begin(), range.end()), range.end());

  LocalHomCheck out;
  const std::size_t width = std::min(p, range.size());
  bool unknown = false;
  detail::for_each_subset_of_size(range.size(), width, [&](const std::vector<std::size_t>& pick) {
    if (out.failing) return;
    std::vector<Vertex> colors;
    for (auto i : pick) colors.push_back(range[i]);
    VertexSet pre(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
      if (std::binary_search(colors.begin(), colors.end(), phi[v])) pre.insert(v);
    const auto sub = induced_subgraph(g, pre);
    const auto r = find_homomorphism(sub.graph, u, opt);
    if (r.status == HomStatus::none) {
      out.failing = colors;
      return;
    }
    if (r.status == HomStatus::budget) {
      unknown = true;
      return;
    }
    VertexMap full(g.order(), kUnreachable);
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i) full[sub.to_parent[i]] = r.map[i];
    out.witnesses.push_back({std::move(colors), std::move(full)});
  });
  if (out.failing)
    out.verdict = Verdict::no;
  else if (unknown)
    out.verdict = Verdict::unknown;
  return out;
}

// ---------------------------------------------------------------------------
// Truncated powers
// ---------------------------------------------------------------------------

inline constexpr std::size_t kPowerVertexCap = 100000;

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Exact |V(H)| * |V(U)|^C(|V(H)|-1, p-1), or nullopt when it exceeds `cap`.
inline std::optional<std::size_t> power_order(std::size_t base_order, std::size_t template_order, std::size_t p,
                                              std::size_t cap = kPowerVertexCap) {
  const std::size_t m = binomial(template_order - 1, p - 1);
  std::size_t per = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (base_order != 0 && per > cap / base_order) return std::nullopt;
    per *= base_order;
  }
  if (per != 0 && template_order > cap / per) return std::nullopt;
  const std::size_t total = per * template_order;
  if (total > cap) return std::nullopt;
  return total;
}

// The p-truncated H-power of U. A vertex of D is a pair (v, z) with v in V(H) and
// z an assignment of U-vertices to the p-subsets of V(H) that contain v. Two
// vertices (v, z), (v', z') are adjacent iff v ~ v' in H and, for every p-subset I
// containing both v and v', z(I) ~ z'(I) in U.
//
// Codec: subsets are listed in lexicographic order; slot j of v is the j-th subset
// containing v; index(v, z) = v * |U|^m + sum_j z_j * |U|^(m-1-j), m = C(|H|-1, p-1).
struct TruncatedPower {
  Graph base;       // U
  Graph pattern;    // H
  std::size_t p = 0;
  Graph power;      // D
  VertexMap alpha;  // colour projection D -> H
  std::vector<std::vector<Vertex>> subsets;        // p-subsets of V(H), lexicographic
  std::vector<std::vector<std::size_t>> slots;     // slots[v] = indices into subsets containing v
  std::size_t slots_per_vertex = 0;                // m
  std::size_t block = 0;                           // |U|^m

  std::size_t encode(Vertex v, std::span<const Vertex> assignment) const {
    std::size_t idx = 0;
    for (Vertex a : assignment) idx = idx * base.order() + a;
    return v * block + idx;
  }

  std::pair<Vertex, std::vector<Vertex>> decode(std::size_t index) const {
    std::vector<Vertex> z(slots_per_vertex);
    std::size_t rest = index % block;
    for (std::size_t j = slots_per_vertex; j-- > 0;) {
      z[j] = rest % base.order();
      rest /= base.order();
    }
    return {index / block, std::move(z)};
  }

  // Slot of subset `s` among the subsets containing v.
  std::size_t slot_of(Vertex v, std::size_t s) const {
    const auto& sv = slots[v];
    return static_cast<std::size_t>(std::lower_bound(sv.begin(), sv.end(), s) - sv.begin());
  }
};

inline TruncatedPower truncated_power(const Graph& u, const Graph& h, std::size_t p,
                                      std::size_t cap = kPowerVertexCap) {
  const std::size_t nh = h.order(), nu = u.order();
  // p = |V(H)| is admitted as well; D is then the categorical product H x U.
  if (p < 1 || p > nh) throw InvalidArgument("truncation must satisfy 1 <= p <= |V(H)|");
  const auto order = power_order(nu, nh, p, cap);
  if (!order) {
    const std::size_t m = binomial(nh - 1, p - 1);
    throw LimitExceeded("power would have " + std::to_string(nh) + " * " + std::to_string(nu) + "^" +
                        std::to_string(m) + " vertices, above the cap of " + std::to_string(cap));
  }

  TruncatedPower tp;
  tp.base = u;
  tp.pattern = h;
  tp.p = p;
  tp.slots_per_vertex = binomial(nh - 1, p - 1);
  tp.slots.assign(nh, {});
  detail::for_each_subset_of_size(nh, p, [&](const std::vector<std::size_t>& pick) {
    for (auto v : pick) tp.slots[v].push_back(tp.subsets.size());
    tp.subsets.emplace_back(pick.begin(), pick.end());
  });
  tp.block = nh == 0 ? 0 : *order / nh;
  tp.power = Graph(*order);
  tp.alpha.resize(*order);
  for (std::size_t z = 0; z < *order; ++z) tp.alpha[z] = z / tp.block;

  // Assignments of one block, decoded once.
  std::vector<std::vector<Vertex>> assignment(tp.block);
  for (std::size_t i = 0; i < tp.block; ++i) assignment[i] = tp.decode(i).second;

  // For a fixed left assignment the admissible right assignments form a product:
  // a shared slot ranges over the U-neighbours of the partner value, a free slot over V(U).
  std::vector<Vertex> all_of_u(nu);
  std::iota(all_of_u.begin(), all_of_u.end(), 0);
  std::vector<std::vector<Vertex>> nbrs(nu);
  for (Vertex x = 0; x < nu; ++x) nbrs[x] = u.neighbors(x).members();
  const std::size_t m = tp.slots_per_vertex;
  std::vector<std::size_t> weight(m, 1);
  for (std::size_t j = m; j-- > 1;) weight[j - 1] = weight[j] * nu;

  for (auto [v, w] : h.edges()) {
    std::vector<std::optional<std::size_t>> partner(m);  // slot of w -> slot of v on the same subset
    for (std::size_t s : tp.slots[v])
      if (std::binary_search(tp.slots[w].begin(), tp.slots[w].end(), s)) partner[tp.slot_of(w, s)] = tp.slot_of(v, s);
    std::vector<const std::vector<Vertex>*> choice(m);
    std::vector<std::size_t> pos(m);
    for (std::size_t a = 0; a < tp.block; ++a) {
      bool empty = false;
      for (std::size_t j = 0; j < m; ++j) {
        choice[j] = partner[j] ? &nbrs[assignment[a][*partner[j]]] : &all_of_u;
        empty = empty || choice[j]->empty();
      }
      if (empty) continue;
      std::fill(pos.begin(), pos.end(), 0);
      while (true) {
        std::size_t b = 0;
        for (std::size_t j = 0; j < m; ++j) b += (*choice[j])[pos[j]] * weight[j];
        tp.power.add_edge(v * tp.block + a, w * tp.block + b);
        std::size_t j = m;
        while (j > 0 && ++pos[j - 1] == choice[j - 1]->size()) pos[--j] = 0;
        if (j == 0) break;
      }
    }
  }

  if (tp.power.order() != *order) throw Error("power order differs from |V(H)| |V(U)|^m");
  if (!check_homomorphism(tp.power, h, tp.alpha)) throw Error("colour projection is not a homomorphism");
  return tp;
}

struct PowerLocalProperty {
  bool search_ok = false;        // local_hom_check(D, alpha, p, U)
  bool constructive_ok = false;  // z -> z(I) validated edge by edge
  bool ok() const noexcept { return search_ok && constructive_ok; }
};

// D is (alpha, p)-locally homomorphic to U, checked by search and by the explicit
// witness z -> z_(I, alpha(z)) for every p-subset I.
inline PowerLocalProperty power_local_property(const TruncatedPower& tp, const HomOptions& opt = {}) {
  PowerLocalProperty out;
  out.search_ok = local_hom_check(tp.power, tp.alpha, tp.p, tp.base, opt).ok();
  out.constructive_ok = true;
  std::vector<std::vector<Vertex>> z(tp.power.order());
  for (std::size_t x = 0; x < z.size(); ++x) z[x] = tp.decode(x).second;
  for (auto [x, y] : tp.power.edges()) {
    const Vertex vx = tp.alpha[x], vy = tp.alpha[y];
    for (std::size_t s : tp.slots[vx]) {
      if (!std::binary_search(tp.slots[vy].begin(), tp.slots[vy].end(), s)) continue;
      if (!tp.base.adjacent(z[x][tp.slot_of(vx, s)], z[y][tp.slot_of(vy, s)])) {
        out.constructive_ok = false;
        return out;
      }
    }
  }
  return out;
}

// Lifts gamma : G -> H to f : G -> D with alpha(f(x)) = gamma(x), taking the
// I-coordinate of f(x) from the local witness g_I. Witnesses for maximal colour
// sets are restricted to every p-subset of V(H) they contain.
inline VertexMap lift_homomorphism(const Graph& g, const VertexMap& gamma, const TruncatedPower& tp,
                                   const LocalHomCheck& local) {
  if (!check_homomorphism(g, tp.pattern, gamma)) throw InvalidArgument("gamma is not a homomorphism into H");
  if (!local.ok()) throw InvalidArgument("G is not (gamma, p)-locally homomorphic to U");
  VertexMap f(g.order());
  for (Vertex x = 0; x < g.order(); ++x) {
    const Vertex v = gamma[x];
    std::vector<Vertex> z(tp.slots_per_vertex);
    for (std::size_t j = 0; j < tp.slots_per_vertex; ++j) {
      const auto& subset = tp.subsets[tp.slots[v][j]];
      // colours of gamma inside this subset are covered by some maximal witness
      std::vector<Vertex> used;
      for (Vertex y = 0; y < g.order(); ++y)
        if (std::binary_search(subset.begin(), subset.end(), gamma[y])) used.push_back(gamma[y]);
      std::sort(used.begin(), used.end());
      used.erase(std::unique(used.begin(), used.end()), used.end());
      const LocalWitness* w = nullptr;
      for (const auto& cand : local.witnesses)
        if (std::includes(cand.colors.begin(), cand.colors.end(), used.begin(), used.end())) {
          w = &cand;
          break;
        }
      if (w == nullptr || w->map[x] == kUnreachable) throw InvalidArgument("missing local witness for a colour set");
      z[j] = w->map[x];
    }
    f[x] = tp.encode(v, z);
  }
  if (!check_homomorphism(g, tp.power, f)) throw Error("lifted map is not a homomorphism");
  for (Vertex x = 0; x < g.order(); ++x)
    if (tp.alpha[f[x]] != gamma[x]) throw Error("lifted map does not project back onto gamma");
  return f;
}

struct LocboundSides {
  bool lhs = false;  // G -> U^(p, H)
  bool rhs = false;  // some gamma : G -> H with (gamma, p)-local homomorphy to U
};

// Both sides of the characterisation of homomorphisms into the truncated power;
// the right side enumerates every map V(G) -> V(H).
inline LocboundSides locbound_equivalence(const Graph& g, const Graph& u, const Graph& h, std::size_t p,
                                          std::size_t cap = kPowerVertexCap) {
  LocboundSides out;
  const auto tp = truncated_power(u, h, p, cap);
  out.lhs = find_homomorphism(g, tp.power).found();
  const std::size_t n = g.order(), k = h.order();
  VertexMap gamma(n, 0);
  while (true) {
    if (check_homomorphism(g, h, gamma) && local_hom_check(g, gamma, p, u).ok()) {
      out.rhs = true;
      break;
    }
    std::size_t i = 0;
    while (i < n && ++gamma[i] == k) gamma[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restricted duality pipeline
// ---------------------------------------------------------------------------

inline constexpr std::size_t kRepresentativeOrder = 6;

// Cores of all graphs on 1..n_max vertices of tree-depth <= p, one per
// isomorphism class, ordered by (order, size, graph6).
inline std::vector<Graph> representatives(std::size_t p, std::size_t n_max = kRepresentativeOrder) {
  if (n_max > kCoreLimit) throw LimitExceeded("representatives are capped at " + std::to_string(kCoreLimit) + " vertices");
  std::map<std::tuple<std::size_t, std::size_t, std::string>, Graph> seen;
  for (const auto& g : generate_all_graphs(n_max, GraphFilter{1, std::nullopt, false, false})) {
    if (tree_depth(g).value > p) continue;
    Graph c = canonical_form(core(g).graph);
    seen.emplace(std::make_tuple(c.order(), c.size(), to_graph6(c)), std::move(c));
  }
  std::vector<Graph> out;
  for (auto& [key, g] : seen) out.push_back(std::move(g));
  return out;
}

struct DualOptions {
  std::optional<std::size_t> p_override;
  std::size_t representative_order = kRepresentativeOrder;
  std::size_t power_cap = kPowerVertexCap;
  bool reduce_base_to_core = false;  // replace U by its core (hom-equivalent, smaller D)
};

struct DualProvenance {
  std::size_t p = 0;
  std::size_t colors = 0;  // N
  std::vector<Graph> base_parts;
  std::size_t base_order = 0;   // |V(U)|
  std::size_t power_order = 0;  // |V(D)|
  std::vector<Coloring> colorings;  // per corpus graph
  std::vector<bool> exhaustive;     // whether each colouring search was exhaustive
};

struct DualBuild {
  TruncatedPower power;
  DualProvenance provenance;
  const Graph& dual() const noexcept { return power.power; }
};

inline void require_connected(std::span<const Graph> forbidden) {
  for (const auto& f : forbidden)
    if (f.order() == 0 || connected_components(f).size() != 1)
      throw InvalidArgument("forbidden graphs must be connected; restricted duality is not defined otherwise");
}

// U := union of the Forb(F) representatives of tree-depth <= p; N := the most
// colours any corpus graph needs in a low tree-depth colouring for p; D := the
// p-truncated K_N-power of U.
inline DualBuild build_dual(std::span<const Graph> corpus, std::span<const Graph> forbidden, const DualOptions& opt = {}) {
  if (forbidden.empty()) throw InvalidArgument("forbidden family is empty");
  require_connected(forbidden);
  DualProvenance prov;
  std::size_t p = 0;
  for (const auto& f : forbidden) p = std::max(p, f.order());
  prov.p = opt.p_override.value_or(p);
  if (prov.p == 0) throw InvalidArgument("truncation must be positive");

  for (const auto& g : corpus) {
    auto found = find_low_td_coloring(g, prov.p, std::max<std::size_t>(g.order(), 1));
    if (!found.coloring) throw Error("no low tree-depth colouring found for a corpus graph");
    prov.colors = std::max(prov.colors, found.coloring->colors());
    prov.colorings.push_back(std::move(*found.coloring));
    prov.exhaustive.push_back(found.exhaustive);
  }
  // p colours are always affordable, and the power needs p <= |V(K_N)|.
  prov.colors = std::max(prov.colors, prov.p);

  for (auto& rep : representatives(prov.p, opt.representative_order))
    if (forb_member(rep, forbidden) == Verdict::yes) prov.base_parts.push_back(std::move(rep));
  if (prov.base_parts.empty()) throw Error("no representative avoids the forbidden family");
  Graph base = disjoint_union(prov.base_parts).graph;
  if (opt.reduce_base_to_core && base.order() <= kCoreLimit) base = core(base).graph;

  DualBuild out{truncated_power(base, graphs::complete(prov.colors), prov.p, opt.power_cap), {}};
  prov.base_order = base.order();
  prov.power_order = out.power.power.order();
  out.provenance = std::move(prov);
  return out;
}

enum class Evidence { search, lifted, implied };

inline const char* to_string(Evidence e) {
  switch (e) {
    case Evidence::search: return "search";
    case Evidence::lifted: return "lifted";
    case Evidence::implied: return "implied";
  }
  return "?";
}

struct CorpusOutcome {
  Verdict in_forb = Verdict::unknown;
  HomStatus to_dual = HomStatus::none;
  Evidence evidence = Evidence::search;
  VertexMap witness;                 // G -> D when found
  std::optional<std::size_t> culprit;  // index of a forbidden graph mapping into G
  bool pass = false;
};

struct DualityReport {
  std::vector<HomStatus> forbidden_to_dual;  // must all be `none`
  std::vector<CorpusOutcome> outcomes;
  bool pass = false;
};

// Checks F -/-> D for each F, and Forb-membership <=> (G -> D) for every corpus graph.
inline DualityReport verify_duality(std::span<const Graph> corpus, std::span<const Graph> forbidden, const Graph& dual,
                                    const HomOptions& opt = {}) {
  DualityReport rep;
  rep.pass = true;
  for (const auto& f : forbidden) {
    const auto r = find_homomorphism(f, dual, opt);
    rep.forbidden_to_dual.push_back(r.status);
    if (r.status != HomStatus::none) rep.pass = false;
  }
  for (const auto& g : corpus) {
    CorpusOutcome o;
    o.in_forb = forb_member(g, forbidden, opt);
    if (o.in_forb == Verdict::no)
      for (std::size_t i = 0; i < forbidden.size(); ++i)
        if (find_homomorphism(forbidden[i], g, opt).found()) {
          o.culprit = i;
          break;
        }
    if (o.culprit && rep.forbidden_to_dual[*o.culprit] == HomStatus::none) {
      o.to_dual = HomStatus::none;
      o.evidence = Evidence::implied;
    } else {
      const auto r = find_homomorphism(g, dual, opt);
      o.to_dual = r.status;
      o.witness = r.map;
    }
    o.pass = (o.in_forb == Verdict::yes && o.to_dual == HomStatus::found) ||
             (o.in_forb == Verdict::no && o.to_dual == HomStatus::none);
    rep.pass = rep.pass && o.pass;
    rep.outcomes.push_back(std::move(o));
  }
  return rep;
}

// Same check against a built dual, with cheaper evidence where it is sound. For a
// member G the stored colouring gamma : G -> K_N is tried first and lifted through
// the local witnesses into D. For a non-member, some F -> G and F -/-> D already
// give G -/-> D. Anything else falls back to a direct search.
inline DualityReport verify_duality(std::span<const Graph> corpus, std::span<const Graph> forbidden,
                                    const DualBuild& build, const HomOptions& opt = {}) {
  const auto& tp = build.power;
  const auto& prov = build.provenance;
  if (prov.colorings.size() != corpus.size()) throw InvalidArgument("corpus differs from the one the dual was built for");
  DualityReport rep;
  rep.pass = true;
  for (const auto& f : forbidden) {
    const auto r = find_homomorphism(f, tp.power, opt);
    rep.forbidden_to_dual.push_back(r.status);
    if (r.status != HomStatus::none) rep.pass = false;
  }
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    const Graph& g = corpus[gi];
    CorpusOutcome o;
    o.in_forb = forb_member(g, forbidden, opt);
    if (o.in_forb == Verdict::no) {
      for (std::size_t i = 0; i < forbidden.size(); ++i)
        if (find_homomorphism(forbidden[i], g, opt).found()) {
          o.culprit = i;
          break;
        }
      if (o.culprit && rep.forbidden_to_dual[*o.culprit] == HomStatus::none) {
        o.to_dual = HomStatus::none;
        o.evidence = Evidence::implied;
      }
    } else if (o.in_forb == Verdict::yes) {
      const VertexMap gamma(prov.colorings[gi].values().begin(), prov.colorings[gi].values().end());
      if (check_homomorphism(g, tp.pattern, gamma)) {
        const auto local = local_hom_check(g, gamma, tp.p, tp.base, opt);
        if (local.ok()) {
          o.witness = lift_homomorphism(g, gamma, tp, local);
          o.to_dual = HomStatus::found;
          o.evidence = Evidence::lifted;
        }
      }
    }
    if (o.evidence == Evidence::search) {
      const auto r = find_homomorphism(g, tp.power, opt);
      o.to_dual = r.status;
      o.witness = r.map;
    }
    o.pass = (o.in_forb == Verdict::yes && o.to_dual == HomStatus::found) ||
             (o.in_forb == Verdict::no && o.to_dual == HomStatus::none);
    rep.pass = rep.pass && o.pass;
    rep.outcomes.push_back(std::move(o));
  }
  return rep;
}

struct PartitionEntry {
  std::vector<std::size_t> classes;
  VertexSet component;
  std::size_t representative = 0;  // index into reps
};

// For every set J of at most p colour classes and every component of G_J, the first
// representative hom-equivalent to it. Throws when a component matches none.
inline std::vector<PartitionEntry> regular_partition_report(const Graph& g, const Coloring& c, std::size_t p,
                                                            std::span<const Graph> reps) {
  if (!verify_low_td(g, c, p).ok) throw InvalidArgument("colouring is not a low tree-depth colouring");
  std::vector<PartitionEntry> out;
  for (std::size_t i = 1; i <= std::min(p, c.colors()); ++i)
    detail::for_each_subset_of_size(c.colors(), i, [&](const std::vector<std::size_t>& pick) {
      VertexSet s(g.order());
      for (auto col : pick) s |= c.class_of(col);
      for (auto& comp : components_within(g, s)) {
        const Graph h = induced(g, comp);
        std::optional<std::size_t> match;
        for (std::size_t r = 0; r < reps.size() && !match; ++r)
          if (hom_equivalent(h, reps[r]) == Verdict::yes) match = r;
        if (!match)
          throw Error("component " + to_graph6(h) + " matches no representative; enlarge the representative set");
        out.push_back({pick, comp, *match});
      }
    });
  return out;
}

}  // namespace sd
