#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sd/duality.hpp"
#include "sd/powers.hpp"

using namespace sd;

namespace {

VertexMap identity(std::size_t n) {
  VertexMap f(n);
  std::iota(f.begin(), f.end(), 0);
  return f;
}

const std::vector<Graph> kTriangle{graphs::complete(3)};

}  // namespace

TEST(LocalHomCheck, Examples) {
  const Graph c5 = graphs::cycle(5);
  EXPECT_TRUE(local_hom_check(c5, identity(5), 4, graphs::complete(2)).ok());
  const auto five = local_hom_check(c5, identity(5), 5, graphs::complete(2));
  EXPECT_EQ(five.verdict, Verdict::no);
  ASSERT_TRUE(five.failing);
  EXPECT_EQ(five.failing->size(), 5u);
  EXPECT_TRUE(local_hom_check(c5, {0, 1, 0, 1, 2}, 2, graphs::complete(2)).ok());
  const Graph pet = graphs::petersen();
  EXPECT_TRUE(local_hom_check(pet, identity(10), 12, pet).ok());
}

TEST(LocalHomCheck, WitnessesAreHomomorphismsOnPreimages) {
  const Graph c7 = graphs::cycle(7);
  const auto res = local_hom_check(c7, identity(7), 3, graphs::complete(2));
  ASSERT_TRUE(res.ok());
  EXPECT_EQ(res.witnesses.size(), 35u);
  for (const auto& w : res.witnesses)
    for (auto [u, v] : c7.edges())
      if (w.map[u] != kUnreachable && w.map[v] != kUnreachable) EXPECT_NE(w.map[u], w.map[v]);
}

TEST(TruncatedPower, Examples) {
  for (const Graph& h : {graphs::complete(3), graphs::cycle(5), graphs::petersen(), graphs::path(4)}) {
    const auto tp = truncated_power(graphs::complete(1), h, 1);
    EXPECT_EQ(tp.power, h);
  }
  const auto tp = truncated_power(graphs::complete(2), graphs::complete(3), 2);
  EXPECT_EQ(tp.power.order(), 12u);
  EXPECT_TRUE(check_homomorphism(tp.power, tp.pattern, tp.alpha));
  EXPECT_THROW(truncated_power(graphs::complete(2), graphs::complete(3), 0), InvalidArgument);
  EXPECT_THROW(truncated_power(graphs::complete(2), graphs::complete(3), 4), InvalidArgument);
  EXPECT_THROW(truncated_power(graphs::complete(4), graphs::complete(8), 2), LimitExceeded);
}

TEST(TruncatedPower, CodecRoundTrip) {
  const auto tp = truncated_power(graphs::complete(3), graphs::complete(4), 2);
  EXPECT_EQ(tp.slots_per_vertex, 3u);
  EXPECT_EQ(tp.block, 27u);
  for (std::size_t x = 0; x < tp.power.order(); ++x) {
    const auto [v, z] = tp.decode(x);
    EXPECT_EQ(tp.alpha[x], v);
    EXPECT_EQ(tp.encode(v, z), x);
  }
  // index(v, z) = v |U|^m + sum z_j |U|^(m-1-j)
  EXPECT_EQ(tp.encode(2, std::vector<Vertex>{1, 0, 2}), 2u * 27 + 1 * 9 + 0 * 3 + 2);
}

TEST(TruncatedPower, EdgeRuleAgainstPairwiseCheck) {
  // z ~ z' iff v ~ v' in H and every shared p-subset carries a U-edge.
  const Graph u = graphs::path(3), h = graphs::cycle(4);
  const std::size_t p = 2;
  const auto tp = truncated_power(u, h, p);
  for (std::size_t a = 0; a < tp.power.order(); ++a)
    for (std::size_t b = a + 1; b < tp.power.order(); ++b) {
      const auto [v, z] = tp.decode(a);
      const auto [w, y] = tp.decode(b);
      bool edge = h.adjacent(v, w);
      for (std::size_t s = 0; s < tp.subsets.size() && edge; ++s) {
        const auto& sub = tp.subsets[s];
        if (!std::count(sub.begin(), sub.end(), v) || !std::count(sub.begin(), sub.end(), w)) continue;
        edge = u.adjacent(z[tp.slot_of(v, s)], y[tp.slot_of(w, s)]);
      }
      EXPECT_EQ(tp.power.adjacent(a, b), edge);
    }
}

TEST(TruncatedPower, OrderFormula) {
  for (std::size_t nu = 1; nu <= 3; ++nu)
    for (std::size_t nh = 1; nh <= 5; ++nh)
      for (std::size_t p = 1; p <= nh; ++p) {
        const auto order = power_order(nu, nh, p);
        if (!order) continue;
        std::size_t expected = nh;
        for (std::size_t i = 0; i < binomial(nh - 1, p - 1); ++i) expected *= nu;
        EXPECT_EQ(*order, expected);
        EXPECT_EQ(truncated_power(graphs::complete(nu), graphs::complete(nh), p).power.order(), expected);
      }
  EXPECT_FALSE(power_order(10, 20, 10).has_value());
}

TEST(PowerLocalProperty, Examples) {
  EXPECT_TRUE(power_local_property(truncated_power(graphs::complete(2), graphs::complete(3), 2)).ok());
  EXPECT_TRUE(power_local_property(truncated_power(graphs::complete(1), graphs::petersen(), 1)).ok());
  const auto big = power_local_property(truncated_power(graphs::complete(3), graphs::complete(4), 2));
  EXPECT_TRUE(big.search_ok);
  EXPECT_TRUE(big.constructive_ok);
}

TEST(LiftHomomorphism, Examples) {
  const Graph c5 = graphs::cycle(5);
  const auto tp = truncated_power(graphs::complete(2), graphs::complete(3), 2);
  const VertexMap gamma{0, 1, 0, 1, 2};
  const auto local = local_hom_check(c5, gamma, 2, tp.base);
  const VertexMap f = lift_homomorphism(c5, gamma, tp, local);
  EXPECT_TRUE(check_homomorphism(c5, tp.power, f));
  for (Vertex x = 0; x < 5; ++x) EXPECT_EQ(tp.alpha[f[x]], gamma[x]);

  const Graph k1 = graphs::complete(1);
  EXPECT_NO_THROW(lift_homomorphism(k1, {2}, tp, local_hom_check(k1, {2}, 2, tp.base)));

  // G -> G^(p, H) whenever G -> H
  const Graph pet = graphs::petersen();
  const auto self = truncated_power(pet, graphs::complete(3), 1);
  const auto gamma3 = find_homomorphism(pet, graphs::complete(3));
  ASSERT_TRUE(gamma3.found());
  const auto lifted = lift_homomorphism(pet, gamma3.map, self, local_hom_check(pet, gamma3.map, 1, pet));
  EXPECT_TRUE(check_homomorphism(pet, self.power, lifted));

  EXPECT_THROW(lift_homomorphism(c5, {0, 0, 1, 2, 1}, tp, local), InvalidArgument);
  const auto bad = local_hom_check(graphs::complete(3), {0, 1, 2}, 2, graphs::complete(1));
  EXPECT_THROW(lift_homomorphism(graphs::complete(3), {0, 1, 2}, tp, bad), InvalidArgument);
}

TEST(LocboundEquivalence, Examples) {
  const Graph k2 = graphs::complete(2), k3 = graphs::complete(3);
  const auto c5 = locbound_equivalence(graphs::cycle(5), k2, k3, 2);
  EXPECT_TRUE(c5.lhs);
  EXPECT_TRUE(c5.rhs);
  const auto tri = locbound_equivalence(k3, k2, k3, 2);
  EXPECT_EQ(tri.lhs, tri.rhs);
  EXPECT_TRUE(tri.lhs);  // every pair of classes of the rainbow K_3 induces K_2
  const auto edgeless = locbound_equivalence(graphs::empty(3), graphs::complete(1), k2, 1);
  EXPECT_TRUE(edgeless.lhs);
  EXPECT_TRUE(edgeless.rhs);
  const auto k4 = locbound_equivalence(graphs::complete(4), k2, k3, 2);
  EXPECT_FALSE(k4.lhs);
  EXPECT_FALSE(k4.rhs);
}

TEST(LocboundEquivalence, AgreesWithBruteForceOverSmallCatalog) {
  const auto gs = generate_all_graphs(3, {.min_order = 1});
  for (const auto& g : gs)
    for (const auto& u : generate_all_graphs(2, {.min_order = 1}))
      for (std::size_t k = 2; k <= 3; ++k) {
        const auto sides = locbound_equivalence(g, u, graphs::complete(k), 2);
        EXPECT_EQ(sides.lhs, sides.rhs);
        EXPECT_EQ(sides.lhs, oracle::hom_exists(g, truncated_power(u, graphs::complete(k), 2).power));
      }
}

TEST(Representatives, Examples) {
  const auto r1 = representatives(1, 5);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0], graphs::complete(1));
  const auto r2 = representatives(2, 5);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_EQ(r2[1], graphs::complete(2));
  const auto r3 = representatives(3, 6);
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_EQ(r3[2], graphs::complete(3));
  const auto r4 = representatives(4, 6);
  EXPECT_EQ(r4.size(), 5u);  // K_1, K_2, K_3, C_5, K_4
}

TEST(Representatives, AgreeWithCoreOracle) {
  // a core has no hom into any of its vertex-deleted subgraphs
  std::vector<Graph> cores;
  for (const auto& g : generate_all_graphs(6, {.min_order = 1})) {
    if (oracle::tree_depth(g) > 4) continue;
    bool is_core = true;
    for (Vertex v = 0; v < g.order() && is_core; ++v) {
      VertexSet rest = VertexSet::full(g.order());
      rest.erase(v);
      is_core = !oracle::hom_exists(g, induced(g, rest));
    }
    if (is_core) cores.push_back(g);
  }
  const auto reps = representatives(4, 6);
  ASSERT_EQ(reps.size(), cores.size());
  for (const auto& c : cores)
    EXPECT_TRUE(std::any_of(reps.begin(), reps.end(), [&](const Graph& r) { return oracle::isomorphic(r, c); }));
}

TEST(BuildDual, TriangleFreeCorpus) {
  const auto corpus = generate_all_graphs(5, {.min_order = 1, .max_degree = 3, .connected = true});
  const auto built = build_dual(corpus, kTriangle);
  EXPECT_EQ(built.provenance.p, 3u);
  EXPECT_EQ(built.provenance.base_order, 3u);
  EXPECT_EQ(built.dual().order(),
            built.provenance.colors * static_cast<std::size_t>(std::pow(3, binomial(built.provenance.colors - 1, 2))));
  EXPECT_FALSE(find_homomorphism(graphs::complete(3), built.dual()).found());
  const auto rep = verify_duality(corpus, kTriangle, built);
  EXPECT_TRUE(rep.pass);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (rep.outcomes[i].in_forb == Verdict::yes) {
      EXPECT_TRUE(check_homomorphism(corpus[i], built.dual(), rep.outcomes[i].witness));
    }
  }
}

TEST(BuildDual, CoreBaseAgreesWithSearchVerification) {
  const auto corpus = generate_all_graphs(4, {.min_order = 1, .connected = true});
  DualOptions opt;
  opt.reduce_base_to_core = true;
  const auto built = build_dual(corpus, kTriangle, opt);
  EXPECT_EQ(built.provenance.base_order, 2u);
  EXPECT_TRUE(verify_duality(corpus, kTriangle, built.dual()).pass);
  EXPECT_TRUE(verify_duality(corpus, kTriangle, built).pass);
}

TEST(BuildDual, DegenerateEdgeForbidden) {
  const std::vector<Graph> corpus{graphs::complete(1)};
  const std::vector<Graph> k2{graphs::complete(2)};
  const auto built = build_dual(corpus, k2);
  EXPECT_EQ(built.dual().size(), 0u);
  EXPECT_TRUE(verify_duality(corpus, k2, built).pass);
  EXPECT_TRUE(verify_duality(std::vector<Graph>{graphs::empty(4)}, k2, built.dual()).pass);
}

TEST(BuildDual, ForestsAgainstPentagon) {
  std::vector<Graph> forests;
  for (const auto& g : generate_all_graphs(6, {.min_order = 1}))
    if (g.size() + connected_components(g).size() == g.order()) forests.push_back(g);
  const std::vector<Graph> c5{graphs::cycle(5)};
  const auto built = build_dual(forests, c5);
  EXPECT_EQ(built.provenance.p, 5u);
  const auto rep = verify_duality(forests, c5, built);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.forbidden_to_dual[0], HomStatus::none);
  for (const auto& o : rep.outcomes) EXPECT_EQ(o.to_dual, HomStatus::found);
}

TEST(BuildDual, TruncationBelowForbiddenOrderCanFail) {
  // With p = 2 every pair of classes of a proper colouring of C_5 is bipartite,
  // so C_5 maps into the power and the duality breaks.
  const std::vector<Graph> corpus{graphs::cycle(5), graphs::path(3)};
  const std::vector<Graph> c5{graphs::cycle(5)};
  DualOptions opt;
  opt.p_override = 2;
  const auto built = build_dual(corpus, c5, opt);
  const auto rep = verify_duality(corpus, c5, built);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.forbidden_to_dual[0], HomStatus::found);
}

TEST(BuildDual, RejectsDisconnectedOrEmptyFamilies) {
  const std::vector<Graph> corpus{graphs::complete(1)};
  EXPECT_THROW(build_dual(corpus, std::vector<Graph>{graphs::empty(2)}), InvalidArgument);
  EXPECT_THROW(build_dual(corpus, std::vector<Graph>{}), InvalidArgument);
}

TEST(VerifyDuality, SelfBoundFixture) {
  const auto corpus = generate_all_graphs(4, {.min_order = 1, .connected = true});
  std::vector<Graph> members;
  for (const auto& g : corpus)
    if (forb_member(g, kTriangle) == Verdict::yes) members.push_back(g);
  const Graph d = disjoint_union(members).graph;
  EXPECT_TRUE(verify_duality(corpus, kTriangle, d).pass);
}

TEST(VerifyDuality, CliqueIsFlaggedAndRejected) {
  const std::vector<Graph> corpus{graphs::complete(4), graphs::cycle(5)};
  const auto rep = verify_duality(corpus, kTriangle, graphs::cycle(5));
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.outcomes[0].in_forb, Verdict::no);
  EXPECT_EQ(rep.outcomes[0].culprit, 0u);
  EXPECT_EQ(rep.outcomes[0].to_dual, HomStatus::none);
  // a bad candidate is caught: K_3 -> K_3
  EXPECT_FALSE(verify_duality(corpus, kTriangle, graphs::complete(3)).pass);
}

TEST(RegularPartition, Examples) {
  const std::vector<Graph> reps{graphs::complete(1), graphs::complete(2)};
  const auto p4 = regular_partition_report(graphs::path(4), Coloring({1, 2, 3, 1}), 2, reps);
  EXPECT_FALSE(p4.empty());
  for (const auto& e : p4) EXPECT_LT(e.representative, 2u);
  for (const auto& e : regular_partition_report(graphs::empty(3), Coloring({0, 1, 1}), 2, reps))
    EXPECT_EQ(e.representative, 0u);
  const Graph c6 = graphs::cycle(6);
  const Coloring three({0, 1, 2, 0, 1, 2});
  ASSERT_TRUE(verify_low_td(c6, three, 2).ok);
  for (const auto& e : regular_partition_report(c6, three, 2, reps)) EXPECT_LE(e.component.size(), 2u);
  EXPECT_THROW(regular_partition_report(c6, three, 2, std::vector<Graph>{graphs::complete(1)}), Error);
}
