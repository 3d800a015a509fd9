#include <gtest/gtest.h>

#include "oracles.hpp"
#include "thw/search.hpp"

using namespace thw;

namespace {

bool width_above(const Graph& g, std::size_t k) { return th_width_exact(g, k).above_bound(); }

// Induced subgraph test by trying every vertex subset of the right size.
bool contains_induced(const Graph& big, const Graph& small) {
  const std::string code = canonical_code(small);
  const std::size_t n = big.order();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) != small.order()) continue;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < n; ++v)
      if (s >> v & 1U) keep.push_back(v);
    if (canonical_code(induced_subgraph(big, keep).graph) == code) return true;
  }
  return false;
}

void check_family(const ForbiddenFamily& fam) {
  std::set<std::string> unique(fam.members.begin(), fam.members.end());
  EXPECT_EQ(unique.size(), fam.members.size());
  EXPECT_TRUE(std::is_sorted(fam.members.begin(), fam.members.end()));
  for (const auto& code : fam.members) {
    Graph g = graph6::decode(code);
    EXPECT_EQ(canonical_code(g), code);
    EXPECT_TRUE(width_above(g, fam.k)) << code;
    for (Vertex x = 0; x < g.order(); ++x) EXPECT_FALSE(width_above(delete_vertex(g, x).graph, fam.k)) << code;
  }
  for (const auto& a : fam.members)
    for (const auto& b : fam.members)
      if (a != b) EXPECT_FALSE(contains_induced(graph6::decode(b), graph6::decode(a))) << a << " in " << b;
}

}  // namespace

TEST(MinimalForbidden, ThresholdFamily) {
  auto fam = minimal_forbidden(0, 5);
  const auto codes = oracle::forbidden_codes();
  std::vector<std::string> expected(codes.begin(), codes.end());
  EXPECT_EQ(fam.members, expected);
  check_family(fam);
}

TEST(MinimalForbidden, SmallCases) {
  EXPECT_TRUE(minimal_forbidden(0, 3).members.empty());
  auto k1 = minimal_forbidden(1, 4);
  ASSERT_EQ(k1.members.size(), 1u);
  EXPECT_EQ(k1.members.front(), canonical_code(graphs::two_k2()));
  EXPECT_EQ(k1.k, 1u);
  EXPECT_EQ(k1.nmax, 4u);
}

TEST(MinimalForbidden, K1UpTo6Invariants) {
  auto fam = minimal_forbidden(1, 6);
  EXPECT_FALSE(fam.members.empty());
  check_family(fam);
  // Every graph on <= 6 vertices of width > 1 contains a member.
  for (std::size_t n = 0; n <= 6; ++n)
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      if (!width_above(g, 1)) continue;
      bool hit = false;
      for (const auto& code : fam.members) hit = hit || contains_induced(g, graph6::decode(code));
      EXPECT_TRUE(hit) << graph6::encode(g);
    }
}

TEST(MinimalForbidden, Limits) {
  EXPECT_THROW(minimal_forbidden(0, 8), std::length_error);
  EXPECT_THROW(minimal_forbidden(4, 7), std::length_error);
}

TEST(GenKprobe, Examples) {
  auto z = gen_kprobe(9, 0, 5);
  EXPECT_EQ(z.g, z.h);
  EXPECT_EQ(z.witness.k(), 0u);
  EXPECT_TRUE(is_threshold(z.g));

  auto a = gen_kprobe(5, 1, 42);
  EXPECT_TRUE(recognize_partitioned(a.g, a.witness));

  auto b = gen_kprobe(8, 2, 7);
  auto w = th_width_exact(b.g, 2);
  ASSERT_TRUE(w.width);
  EXPECT_LE(*w.width, 2u);

  EXPECT_THROW(gen_kprobe(0, 1, 1), std::invalid_argument);
}

TEST(GenKprobe, Deterministic) {
  auto a = gen_kprobe(30, 3, 123), b = gen_kprobe(30, 3, 123);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.h, b.h);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.witness.set(i), b.witness.set(i));
  EXPECT_EQ(a.h, random_threshold(30, 123));
}

// Fixture pinned to std::mt19937_64's specified output sequence.
TEST(GenKprobe, PortableStream) {
  std::mt19937_64 rng(42);
  std::vector<bool> bits;
  for (int i = 0; i < 4 + 5; ++i) bits.push_back(rng() >> 63);
  auto inst = gen_kprobe(5, 1, 42);
  std::vector<Tag> tags;
  for (int i = 0; i < 4; ++i) tags.push_back(bits[i] ? Tag::Join : Tag::Union);
  EXPECT_EQ(inst.h, threshold_from_sequence(tags));
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(inst.witness.set(0).contains(v), bits[4 + v]);
  std::mt19937_64 check(5489u);
  for (int i = 1; i < 10000; ++i) check();
  EXPECT_EQ(check(), 9981545732273789042ULL);
}

TEST(GenKprobe, AcceptedByBothPartitionedProcedures) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 9;
    auto inst = gen_kprobe(n, seed % 3, seed);
    auto r = recognize_partitioned(inst.g, inst.witness);
    ASSERT_TRUE(r);
    EXPECT_TRUE(verify_embedding(*r.embedding));
    if (detail::fill_candidates(inst.g, inst.witness).size() <= kMaxFillCandidates)
      EXPECT_TRUE(partitioned_oracle(inst.g, inst.witness));
    // H itself is an embedding.
    std::vector<Edge> fill;
    for (auto e : inst.h.edges())
      if (!inst.g.adjacent(e.first, e.second)) fill.push_back(e);
    EXPECT_TRUE(verify_embedding({inst.g, inst.h, fill, inst.witness}));
  }
}
