#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thw/rank.hpp"
#include "thw/search.hpp"

using namespace thw;

namespace {

// Rank over GF(2) via integer rows and XOR elimination.
std::size_t rank_u64(std::vector<std::uint64_t> rows) {
  std::size_t r = 0;
  for (int bit = 63; bit >= 0; --bit) {
    auto it = std::find_if(rows.begin() + static_cast<long>(r), rows.end(),
                           [&](std::uint64_t x) { return x >> bit & 1U; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] >> bit & 1U)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

// Balanced tree on 6 leaves: hub 6 joined to 7, 8, 9; each of those holds two
// leaves.
RankDecomposition balanced6() {
  std::vector<std::vector<std::size_t>> adj(10);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  link(6, 7);
  link(6, 8);
  link(6, 9);
  link(7, 0);
  link(7, 1);
  link(8, 2);
  link(8, 3);
  link(9, 4);
  link(9, 5);
  return RankDecomposition(adj, {0, 1, 2, 3, 4, 5});
}

}  // namespace

TEST(Gf2Rank, MatchesXorElimination) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + t % 9, cols = 1 + t % 13;
    std::vector<VertexSet> m;
    std::vector<std::uint64_t> ints;
    for (std::size_t i = 0; i < rows; ++i) {
      VertexSet s(cols);
      std::uint64_t x = 0;
      for (std::size_t j = 0; j < cols; ++j)
        if (rng() >> 63) {
          s.insert(j);
          x |= std::uint64_t{1} << j;
        }
      m.push_back(s);
      ints.push_back(x);
    }
    ASSERT_EQ(gf2_rank(m), rank_u64(ints));
  }
  EXPECT_EQ(gf2_rank({}), 0u);
}

TEST(DecompositionWidth, Examples) {
  Graph k2 = graphs::complete(2);
  EXPECT_EQ(decomposition_width(k2, RankDecomposition::caterpillar({0, 1})), 1u);
  EXPECT_EQ(decomposition_width(Graph(4), RankDecomposition::caterpillar({2, 0, 3, 1})), 0u);
  EXPECT_EQ(decomposition_width(graphs::two_k2(), RankDecomposition::caterpillar({0, 1, 2, 3})), 1u);
  EXPECT_EQ(decomposition_width(Graph(1), RankDecomposition::caterpillar({0})), 0u);
  EXPECT_EQ(decomposition_width(Graph(0), RankDecomposition::caterpillar({})), 0u);
  EXPECT_THROW(decomposition_width(k2, RankDecomposition::caterpillar({0, 1, 2})), std::invalid_argument);
}

TEST(ThresholdCaterpillar, Examples) {
  for (const Graph& g : {graphs::complete(4), graphs::star(3), graphs::complete(2)})
    EXPECT_EQ(decomposition_width(g, threshold_caterpillar(g)), 1u);
  EXPECT_THROW(threshold_caterpillar(graphs::path(4)), std::invalid_argument);
}

// The paw (triangle 0,1,2 with pendant 3 on 0) has width 1 along its
// construction order, but every chain order puts the pendant and one
// triangle vertex on the same side of a 2|2 cut whose matrix has rank 2.
TEST(ThresholdCaterpillar, ConstructionOrderNotChainOrder) {
  Graph paw = Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  EXPECT_EQ(decomposition_width(paw, threshold_caterpillar(paw)), 1u);
  std::vector<Vertex> p{0, 1, 2, 3};
  std::size_t chains = 0;
  do {
    if (!is_chain(paw, p)) continue;
    ++chains;
    EXPECT_EQ(decomposition_width(paw, RankDecomposition::caterpillar(p)), 2u);
  } while (std::next_permutation(p.begin(), p.end()));
  EXPECT_GT(chains, 0u);
}

TEST(ThresholdCaterpillar, RandomThresholdGraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = random_threshold(2 + seed % 49, seed);
    ASSERT_LE(decomposition_width(g, threshold_caterpillar(g)), 1u) << "seed " << seed;
  }
}

TEST(EmbeddingDecomposition, Examples) {
  Graph d = graphs::diamond();
  auto r0 = recognize_partitioned(d, validate_witness(d, {}));
  auto e0 = embedding_decomposition(*r0.embedding);
  EXPECT_LE(e0.width, 1u);
  EXPECT_EQ(e0.bound, 1u);

  Graph c4 = graphs::cycle(4);
  auto r1 = recognize_partitioned(c4, validate_witness(c4, {VertexSet(4, {0, 2})}));
  auto e1 = embedding_decomposition(*r1.embedding);
  EXPECT_LE(e1.width, 2u);
  EXPECT_EQ(e1.bound, 2u);

  auto inst = gen_kprobe(20, 2, 9);
  auto r2 = recognize_partitioned(inst.g, inst.witness);
  EXPECT_LE(embedding_decomposition(*r2.embedding).width, 4u);
}

TEST(EmbeddingDecomposition, RejectsInvalid) {
  Graph t = graphs::two_k2();
  Graph p4 = t;
  p4.add_edge(0, 2);
  Embedding bad{t, p4, {{0, 2}}, validate_witness(t, {VertexSet(4, {0, 2})})};
  EXPECT_THROW(embedding_decomposition(bad), std::invalid_argument);
}

TEST(EmbeddingDecomposition, GeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t k = seed % 4;
    auto inst = gen_kprobe(2 + seed % 39, k, seed);
    auto r = recognize_partitioned(inst.g, inst.witness);
    ASSERT_TRUE(r);
    auto e = embedding_decomposition(*r.embedding);
    ASSERT_LE(e.width, std::size_t{1} << k);
  }
}

TEST(DecompositionWidth, CutRankSymmetric) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    Graph g = oracle::random_graph(3 + t % 10, rng);
    VertexSet a(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
      if (rng() >> 63) a.insert(v);
    EXPECT_EQ(cut_rank(g, a, g.vertices() - a), cut_rank(g, g.vertices() - a, a));
  }
}

TEST(DecompositionWidth, InvariantUnderNodeRelabeling) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + t % 8;
    Graph g = oracle::random_graph(n, rng);
    auto d = RankDecomposition::caterpillar(oracle::random_permutation(n, rng));
    auto perm = oracle::random_permutation(d.node_count(), rng);
    std::vector<std::vector<std::size_t>> adj(d.node_count());
    for (std::size_t a = 0; a < d.node_count(); ++a)
      for (std::size_t b : d.adjacency()[a]) adj[perm[a]].push_back(perm[b]);
    std::vector<std::size_t> leaf(n);
    for (Vertex v = 0; v < n; ++v) leaf[v] = perm[d.leaf_of(v)];
    EXPECT_EQ(decomposition_width(g, RankDecomposition(adj, leaf)), decomposition_width(g, d));
  }
}

TEST(DecompositionWidth, ZeroIffEdgeless) {
  std::mt19937_64 rng(2);
  for (std::size_t n = 2; n <= 5; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      auto d = RankDecomposition::caterpillar(oracle::random_permutation(n, rng));
      EXPECT_EQ(decomposition_width(g, d) == 0, g.edge_count() == 0);
    }
  EXPECT_EQ(decomposition_width(Graph(6), balanced6()), 0u);
  EXPECT_EQ(decomposition_width(graphs::complete(6), balanced6()), 1u);
  EXPECT_EQ(decomposition_width(graphs::cycle(6), balanced6()), 2u);
}

TEST(RankDecomposition, TextAndValidation) {
  auto d = RankDecomposition::parse_caterpillar("(2 0 1 3)");
  EXPECT_EQ(d.to_string(), "(2 0 1 3)");
  EXPECT_EQ(d.node_count(), 6u);
  EXPECT_EQ(RankDecomposition::parse_caterpillar("()").order(), 0u);
  EXPECT_THROW(RankDecomposition::parse_caterpillar("(0 0 1)"), std::invalid_argument);
  EXPECT_THROW(RankDecomposition::parse_caterpillar("(0 2)"), std::invalid_argument);
  EXPECT_THROW(RankDecomposition::parse_caterpillar("0 1"), std::invalid_argument);
  EXPECT_THROW(RankDecomposition::parse_caterpillar("(0 a)"), std::invalid_argument);
  EXPECT_THROW(balanced6().to_string(), std::logic_error);
  // Internal node of degree 2.
  EXPECT_THROW(RankDecomposition({{2}, {2}, {0, 1}}, {0, 1}), std::invalid_argument);
  // Cycle instead of a tree.
  EXPECT_THROW(RankDecomposition({{1, 2}, {0, 2}, {0, 1}}, {0, 1, 2}), std::invalid_argument);
}
