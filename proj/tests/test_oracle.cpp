#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thw/oracle.hpp"

using namespace thw;

namespace {

// Smallest cover of the complement's edges by subsets of its cliques, tried
// by size over every clique (not only maximal ones).
std::size_t clique_cover_bruteforce(const Graph& g) {
  Graph comp = complement(g);
  const std::size_t n = comp.order();
  std::vector<std::uint64_t> cliques;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    if (std::popcount(s) < 2) continue;
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u)
      for (Vertex v = u + 1; v < n && ok; ++v)
        if ((s >> u & 1U) && (s >> v & 1U)) ok = comp.adjacent(u, v);
    if (ok) cliques.push_back(s);
  }
  auto edges = comp.edges();
  for (std::size_t size = 0;; ++size) {
    std::vector<std::size_t> idx(size, 0);
    auto covers = [&]() {
      for (auto [u, v] : edges) {
        bool hit = false;
        for (auto i : idx) hit = hit || ((cliques[i] >> u & 1U) && (cliques[i] >> v & 1U));
        if (!hit) return false;
      }
      return true;
    };
    // Multisets of clique indices of the given size.
    while (true) {
      if (covers()) return size;
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] + 1 == cliques.size()) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[pos - 1];
    }
  }
}

}  // namespace

TEST(PartitionedOracle, Examples) {
  Graph c4 = graphs::cycle(4);
  EXPECT_TRUE(partitioned_oracle(c4, validate_witness(c4, {VertexSet(4, {0, 2})})));
  Graph t = graphs::two_k2();
  EXPECT_FALSE(partitioned_oracle(t, validate_witness(t, {VertexSet(4, {0, 2})})));
  Graph d = graphs::diamond();
  EXPECT_TRUE(partitioned_oracle(d, validate_witness(d, {})));
}

TEST(PartitionedOracle, CandidateBound) {
  Graph e8(8);
  Witness w = validate_witness(e8, {VertexSet::full(8)});  // 28 candidate pairs
  EXPECT_THROW(partitioned_oracle(e8, w), std::length_error);
}

TEST(ThWidthExact, Examples) {
  auto p4 = th_width_exact(graphs::path(4), 3);
  ASSERT_EQ(p4.width, 1u);
  ASSERT_TRUE(p4.embedding);
  EXPECT_TRUE(verify_embedding(*p4.embedding));
  EXPECT_EQ(p4.witness->k(), 1u);

  EXPECT_EQ(th_width_exact(graphs::cycle(4), 3).width, 1u);

  auto t = th_width_exact(graphs::two_k2(), 3);
  ASSERT_EQ(t.width, 2u);
  EXPECT_TRUE(verify_embedding(*t.embedding));
  // The hand witness {0,2},{0,3} also certifies.
  Graph g = graphs::two_k2();
  EXPECT_TRUE(recognize_partitioned(g, validate_witness(g, {VertexSet(4, {0, 2}), VertexSet(4, {0, 3})})));

  EXPECT_EQ(th_width_exact(graphs::diamond(), 2).width, 0u);
  EXPECT_EQ(th_width_exact(Graph(0), 3).width, 0u);
}

TEST(ThWidthExact, AboveBoundAndLimits) {
  auto r = th_width_exact(graphs::two_k2(), 1);
  EXPECT_TRUE(r.above_bound());
  EXPECT_EQ(r.kmax, 1u);
  EXPECT_FALSE(r.witness);
  EXPECT_THROW(th_width_exact(Graph(9), 3), std::length_error);
}

TEST(ThWidthExact, ZeroIffThresholdUpTo6) {
  for (std::size_t n = 0; n <= 6; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      auto r = th_width_exact(g, 0);
      ASSERT_EQ(!r.above_bound(), is_threshold(g).accepted) << graph6::encode(g);
    }
}

TEST(ThWidthExact, CrossCheckedAgainstFillOracle) {
  WidthOptions opt;
  opt.cross_check = true;
  for (std::size_t n = 0; n <= 5; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) EXPECT_NO_THROW(th_width_exact(g, 2, opt)) << graph6::encode(g);
}

TEST(ThWidthExact, MatchesSetChoiceEnumeration) {
  for (std::size_t n = 0; n <= 5; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      auto r = th_width_exact(g, 2);
      ASSERT_EQ(r.width, oracle::width_by_set_choice(g, 2)) << graph6::encode(g);
      if (r.width) ASSERT_TRUE(verify_embedding(*r.embedding));
    }
}

TEST(ThWidthExact, Hereditary) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      const std::size_t w = *th_width_exact(g, 4).width;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < n; ++v)
          if (s >> v & 1U) keep.push_back(v);
        ASSERT_LE(*th_width_exact(induced_subgraph(g, keep).graph, 4).width, w) << graph6::encode(g);
      }
    }
}

TEST(ThWidthExact, IsolatedVertexRemovalIsSafe) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n))
      for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) == 0) {
          ASSERT_EQ(th_width_exact(g, 4).width, th_width_exact(delete_vertex(g, v).graph, 4).width)
              << graph6::encode(g);
          break;
        }
}

TEST(TWidthExact, Examples) {
  EXPECT_EQ(t_width_exact(graphs::complete(5)).width, 0u);
  EXPECT_EQ(t_width_exact(graphs::two_k2()).width, 4u);
  EXPECT_EQ(t_width_exact(graphs::cycle(4)).width, 2u);
  EXPECT_EQ(t_width_exact(Graph::from_edges(3, {{0, 1}})).width, 2u);
  EXPECT_EQ(t_width_exact(graphs::path(3)).width, 1u);
  EXPECT_EQ(t_width_exact(Graph(4)).width, 1u);
  EXPECT_THROW(t_width_exact(Graph(7)), std::length_error);
}

TEST(TWidthExact, CertificateAndMinimality) {
  for (std::size_t n = 0; n <= 5; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      auto r = t_width_exact(g);
      ASSERT_EQ(r.cover.size(), r.width);
      ASSERT_TRUE(is_clique_cover(complement(g), r.cover)) << graph6::encode(g);
      ASSERT_EQ(r.width, clique_cover_bruteforce(g)) << graph6::encode(g);
    }
}

TEST(IsCliqueCover, Rejects) {
  Graph c4 = graphs::cycle(4);
  EXPECT_FALSE(is_clique_cover(c4, {VertexSet(4, {0, 2})}));
  EXPECT_FALSE(is_clique_cover(c4, {VertexSet(4, {0, 1})}));
}

TEST(HardnessInstance, Examples) {
  auto k1 = hardness_instance(Graph(1), 1);
  EXPECT_TRUE(isomorphic(k1.graph, graphs::path(3)));
  EXPECT_EQ(k1.graph.degree(0), 2u);
  EXPECT_EQ(k1.clique, (std::vector<Vertex>{1}));
  EXPECT_EQ(k1.omega, 2u);

  auto p3 = hardness_instance(graphs::path(3), 4);
  EXPECT_EQ(p3.graph.order(), 8u);
  EXPECT_EQ(p3.graph.edge_count(), 23u);

  auto t = hardness_instance(graphs::two_k2(), 2);
  const Vertex c = t.clique.front();
  std::vector<Vertex> quad{0, t.omega, 2, c};
  auto q = induced_subgraph(t.graph, quad);
  EXPECT_TRUE(isomorphic(q.graph, graphs::cycle(4)));

  EXPECT_THROW(hardness_instance(Graph(2), 0), std::invalid_argument);
}

TEST(HardnessInstance, ReductionLaw) {
  EXPECT_EQ(th_width_exact(hardness_instance(graphs::complete(3), 4).graph, 3).width, 0u);
  EXPECT_EQ(th_width_exact(hardness_instance(graphs::path(3), 4).graph, 3).width, 1u);
  EXPECT_EQ(th_width_exact(hardness_instance(Graph::from_edges(3, {{0, 1}}), 4).graph, 3).width, 2u);
  for (std::size_t n = 0; n <= 3; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      const std::size_t tw = t_width_exact(g).width;
      if (tw >= 4) continue;
      EXPECT_EQ(th_width_exact(hardness_instance(g, 4).graph, 3).width, tw) << graph6::encode(g);
    }
}
