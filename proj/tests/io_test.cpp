#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sd/hom.hpp"
#include "sd/io.hpp"

using namespace sd;

TEST(Graph6, Examples) {
  EXPECT_EQ(parse_graph6("A_"), graphs::complete(2));
  EXPECT_EQ(parse_graph6("@").order(), 1u);
  EXPECT_EQ(parse_graph6("?").order(), 0u);
  EXPECT_EQ(parse_graph6("Bw"), graphs::complete(3));
  EXPECT_TRUE(is_isomorphic(parse_graph6("IheA@GUAo"), graphs::petersen()));
  EXPECT_EQ(parse_graph6(">>graph6<<A_\n"), graphs::complete(2));
}

TEST(Graph6, LongHeaders) {
  const Graph g = graphs::cycle(70);
  const std::string s = to_graph6(g);
  EXPECT_EQ(s[0], '~');
  EXPECT_EQ(parse_graph6(s), g);
}

TEST(Graph6, ErrorsCarryOffsets) {
  try {
    parse_graph6("A ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("Bww"), ParseError);  // body too long
  EXPECT_THROW(parse_graph6("B"), ParseError);    // body too short
  try {
    parse_graph6("A`");  // padding bit set
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 1u);
  }
  EXPECT_THROW(parse_graph6("~?"), ParseError);
}

TEST(Graph6, RoundTripOnAllSmallGraphs) {
  for (const auto& g : generate_all_graphs(7)) {
    const std::string s = to_graph6(g);
    EXPECT_EQ(parse_graph6(s), g);
    EXPECT_EQ(to_graph6(parse_graph6(s)), s);
  }
}

TEST(EdgeList, Examples) {
  EXPECT_EQ(parse_edge_list("0 1\n1 2"), graphs::path(3));
  const Graph four = parse_edge_list("n 4\n0 1\n");
  EXPECT_EQ(four.order(), 4u);
  EXPECT_EQ(four.size(), 1u);
  EXPECT_THROW(parse_edge_list("0 0"), ParseError);
  EXPECT_THROW(parse_edge_list("0 x"), ParseError);
  EXPECT_THROW(parse_edge_list("0 1 2"), ParseError);
  EXPECT_THROW(parse_edge_list("n 2\n0 5"), ParseError);
  EXPECT_THROW(parse_edge_list("0 1\nn 3"), ParseError);
  EXPECT_EQ(parse_edge_list("# comment\n\n0 1 # trailing\n").size(), 1u);
  EXPECT_EQ(parse_edge_list(to_edge_list(graphs::petersen())), graphs::petersen());
}

TEST(Generator, CountsMatchKnownSequence) {
  // unlabeled graphs on exactly n vertices: 1, 1, 2, 4, 11, 34, 156, 1044
  const std::vector<std::size_t> per_order{1, 1, 2, 4, 11, 34, 156, 1044};
  const auto all = generate_all_graphs(7);
  std::vector<std::size_t> counts(8, 0);
  for (const auto& g : all) ++counts[g.order()];
  EXPECT_EQ(counts, per_order);
  EXPECT_EQ(generate_all_graphs(3).size(), 8u);
  EXPECT_EQ(generate_all_graphs(0).size(), 1u);
  EXPECT_THROW(generate_all_graphs(9), LimitExceeded);
}

TEST(Generator, PairwiseNonIsomorphic) {
  const auto all = generate_all_graphs(5);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_FALSE(oracle::isomorphic(all[i], all[j]));
}

TEST(Generator, Filters) {
  const auto tf = generate_all_graphs(4, {.triangle_free = true});
  for (const auto& g : tf) EXPECT_TRUE(is_triangle_free(g));
  EXPECT_EQ(tf.size(), 1u + 1 + 2 + 3 + 7);  // K_3 and the four 4-vertex graphs containing a triangle drop out
  const auto conn = generate_all_graphs(5, {.min_order = 1, .max_degree = 2, .connected = true});
  EXPECT_EQ(conn.size(), 1u + 1 + 2 + 2 + 2);  // paths and cycles
}

TEST(CanonicalForm, EqualExactlyForIsomorphicGraphs) {
  std::mt19937_64 rng(19);
  const auto all = generate_all_graphs(6);
  for (const auto& g : all) {
    std::vector<Vertex> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h(g.order());
    for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
    EXPECT_EQ(canonical_form(h), canonical_form(g));
  }
  EXPECT_NE(canonical_form(graphs::cycle(6)), canonical_form(disjoint_union({graphs::complete(3), graphs::complete(3)}).graph));
}
