#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thw/graph.hpp"
#include "thw/graph_io.hpp"
#include "thw/partitioned.hpp"
#include "thw/threshold.hpp"
#include "thw/witness.hpp"

namespace thw {

inline constexpr std::size_t kMaxFillCandidates = 25;
inline constexpr std::size_t kMaxLabelBits = 24;
inline constexpr std::size_t kMaxComplementEdges = 20;

namespace detail {

/// Isolated/universal peeling on word-sized adjacency rows.
inline bool threshold_masks(std::span<const std::uint64_t> adj) {
  std::uint64_t alive = low_mask(adj.size());
  while (alive) {
    const int remaining = std::popcount(alive);
    bool progressed = false;
    for (std::uint64_t a = alive; a; a &= a - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(a));
      const int d = std::popcount(adj[v] & alive);
      if (d == 0 || d == remaining - 1) {
        alive &= ~(std::uint64_t{1} << v);
        progressed = true;
        break;
      }
    }
    if (!progressed) return false;
  }
  return true;
}

inline std::vector<Edge> fill_candidates(const Graph& g, const Witness& w) {
  std::vector<Edge> c;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (!g.adjacent(u, v) && w.covers(u, v)) c.emplace_back(u, v);
  return c;
}

}  // namespace detail

/// Decides the partitioned instance by trying every subset of witness-covered
/// non-edges as fill.
inline bool partitioned_oracle(const Graph& g, const Witness& w) {
  if (g.order() > 64) throw std::length_error("partitioned_oracle supports at most 64 vertices");
  const auto cand = detail::fill_candidates(g, w);
  if (cand.size() > kMaxFillCandidates)
    throw std::length_error("partitioned_oracle: " + std::to_string(cand.size()) + " fill candidates exceed " +
                            std::to_string(kMaxFillCandidates));
  const auto base = detail::adjacency_masks(g);
  std::vector<std::uint64_t> adj(base);
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << cand.size()); ++f) {
    adj = base;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (f >> i & 1U) {
        adj[cand[i].first] |= std::uint64_t{1} << cand[i].second;
        adj[cand[i].second] |= std::uint64_t{1} << cand[i].first;
      }
    if (detail::threshold_masks(adj)) return true;
  }
  return false;
}

struct WidthResult {
  std::optional<std::size_t> width;  // empty: above kmax
  std::size_t kmax = 0;
  std::optional<Witness> witness;
  std::optional<Embedding> embedding;

  bool above_bound() const { return !width.has_value(); }
};

struct WidthOptions {
  /// Also run partitioned_oracle on every enumerated witness (when within its
  /// candidate bound) and throw on disagreement.
  bool cross_check = false;
};

class OracleDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Smallest k <= kmax admitting a witness, by enumerating every assignment of
/// k-bit labels that keeps each set independent, in ascending k.
inline WidthResult th_width_exact(const Graph& g, std::size_t kmax, WidthOptions opt = {}) {
  const std::size_t n = g.order();
  if (n * kmax > kMaxLabelBits)
    throw std::length_error("th_width_exact: n*kmax = " + std::to_string(n * kmax) + " exceeds " +
                            std::to_string(kMaxLabelBits));
  const auto adj = detail::adjacency_masks(g);
  WidthResult res;
  res.kmax = kmax;

  for (std::size_t k = 0; k <= kmax; ++k) {
    const std::uint32_t labels_per_vertex = std::uint32_t{1} << k;
    std::vector<std::uint32_t> lab(n, 0);
    bool found = false;

    auto leaf = [&]() {
      const bool fast = detail::partitioned_accepts(adj, lab);
      if (opt.cross_check) {
        Witness w = witness_from_labels(g, k, lab);
        if (detail::fill_candidates(g, w).size() <= kMaxFillCandidates && partitioned_oracle(g, w) != fast)
          throw OracleDisagreement("recognizer and fill-subset oracle disagree on " + graph6::encode(g));
      }
      return fast;
    };
    // Depth-first over vertices; adjacent vertices must get disjoint labels.
    auto dfs = [&](auto&& self, std::size_t v) -> bool {
      if (v == n) return leaf();
      for (std::uint32_t l = 0; l < labels_per_vertex; ++l) {
        bool ok = true;
        for (std::uint64_t a = adj[v] & detail::low_mask(v); a; a &= a - 1)
          if (lab[static_cast<std::size_t>(std::countr_zero(a))] & l) {
            ok = false;
            break;
          }
        if (!ok) continue;
        lab[v] = l;
        if (self(self, v + 1)) return true;
      }
      lab[v] = 0;
      return false;
    };
    found = dfs(dfs, 0);
    if (found) {
      Witness w = witness_from_labels(g, k, lab);
      auto r = recognize_partitioned(g, w);
      if (!r) throw std::logic_error("mask recognizer accepted a witness the full recognizer rejects");
      res.width = k;
      res.witness = w;
      res.embedding = std::move(r.embedding);
      return res;
    }
  }
  return res;
}

/// Edge sets covered by cliques of a host graph.
using CliqueCover = std::vector<VertexSet>;

inline bool is_clique_cover(const Graph& host, const CliqueCover& cover) {
  for (const auto& c : cover) {
    auto vs = c.members();
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (!host.adjacent(vs[i], vs[j])) return false;
  }
  for (auto [u, v] : host.edges()) {
    bool hit = std::any_of(cover.begin(), cover.end(), [&](const VertexSet& c) { return c.contains(u) && c.contains(v); });
    if (!hit) return false;
  }
  return true;
}

struct TWidthResult {
  std::size_t width = 0;
  CliqueCover cover;  // cliques of complement(g)
};

/// Minimum number of cliques covering the edges of complement(g).
inline TWidthResult t_width_exact(const Graph& g) {
  const Graph comp = complement(g);
  const auto edges = comp.edges();
  if (edges.size() > kMaxComplementEdges)
    throw std::length_error("t_width_exact: complement has " + std::to_string(edges.size()) + " edges, limit " +
                            std::to_string(kMaxComplementEdges));
  const std::size_t m = edges.size();
  if (m == 0) return {};

  struct Clique {
    VertexSet vertices;
    std::uint32_t edge_mask;
  };
  auto mask_of = [&](const VertexSet& c) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (c.contains(edges[i].first) && c.contains(edges[i].second)) mask |= std::uint32_t{1} << i;
    return mask;
  };

  // Maximal cliques of comp containing each edge (Bron–Kerbosch inside the
  // common neighborhood).
  std::vector<std::vector<Clique>> through(m);
  std::size_t max_clique_edges = 1;
  for (std::size_t i = 0; i < m; ++i) {
    auto [u, v] = edges[i];
    VertexSet r(comp.order(), {u, v});
    auto bk = [&](auto&& self, VertexSet cur, VertexSet p, VertexSet x) -> void {
      if (p.empty() && x.empty()) {
        std::uint32_t mask = mask_of(cur);
        through[i].push_back({cur, mask});
        max_clique_edges = std::max<std::size_t>(max_clique_edges, std::popcount(mask));
        return;
      }
      for (Vertex w = p.first(); w != VertexSet::npos; w = p.next(w + 1)) {
        VertexSet next = cur;
        next.insert(w);
        self(self, next, p & comp.neighbors(w), x & comp.neighbors(w));
        p.erase(w);
        x.insert(w);
      }
    };
    bk(bk, r, comp.neighbors(u) & comp.neighbors(v), VertexSet(comp.order()));
  }

  const std::uint32_t all = m == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1;
  TWidthResult best;
  best.width = m;
  for (auto [u, v] : edges) best.cover.push_back(VertexSet(comp.order(), {u, v}));

  std::vector<VertexSet> chosen;
  auto dfs = [&](auto&& self, std::uint32_t covered) -> void {
    if (covered == all) {
      if (chosen.size() < best.width) {
        best.width = chosen.size();
        best.cover = chosen;
      }
      return;
    }
    const std::size_t uncovered = static_cast<std::size_t>(std::popcount(all & ~covered));
    const std::size_t lower = (uncovered + max_clique_edges - 1) / max_clique_edges;
    if (chosen.size() + lower >= best.width) return;
    const auto e = static_cast<std::size_t>(std::countr_zero(all & ~covered));
    for (const Clique& c : through[e]) {
      chosen.push_back(c.vertices);
      self(self, covered | c.edge_mask);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  return best;
}

/// g plus a clique C of c vertices joined to all of V(g), plus ω joined to
/// exactly V(g). Original vertices keep their ids.
struct HardnessInstance {
  Graph graph;
  std::vector<Vertex> clique;
  Vertex omega = 0;
};

inline HardnessInstance hardness_instance(const Graph& g, std::size_t c) {
  if (c == 0) throw std::invalid_argument("hardness_instance requires clique size >= 1");
  const std::size_t n = g.order();
  HardnessInstance hi{Graph(n + c + 1), {}, n + c};
  for (auto [u, v] : g.edges()) hi.graph.add_edge(u, v);
  for (std::size_t i = 0; i < c; ++i) {
    const Vertex ci = n + i;
    hi.clique.push_back(ci);
    for (std::size_t j = 0; j < i; ++j) hi.graph.add_edge(n + j, ci);
    for (Vertex v = 0; v < n; ++v) hi.graph.add_edge(v, ci);
  }
  for (Vertex v = 0; v < n; ++v) hi.graph.add_edge(v, hi.omega);
  return hi;
}

}  // namespace thw
