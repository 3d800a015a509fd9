#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thw/graph.hpp"
#include "thw/partitioned.hpp"
#include "thw/threshold.hpp"

namespace thw {

/// Rank of a 0/1 matrix over GF(2); rows are bit-packed.
inline std::size_t gf2_rank(std::vector<VertexSet> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vertex pivot = rows[i].first();
    if (pivot == VertexSet::npos) continue;
    ++rank;
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j].contains(pivot)) {
        // symmetric difference
        VertexSet both = rows[j] & rows[i];
        rows[j] |= rows[i];
        rows[j] -= both;
      }
  }
  return rank;
}

/// Unrooted tree with internal nodes of degree 3 and a leaf for every vertex.
/// Orders 0..2 use the degenerate trees: empty, one node, one edge.
class RankDecomposition {
 public:
  RankDecomposition() = default;
  RankDecomposition(std::vector<std::vector<std::size_t>> adjacency, std::vector<std::size_t> leaf_of)
      : adj_(std::move(adjacency)), leaf_of_(std::move(leaf_of)) {
    validate();
  }

  /// Caterpillar whose leaves, read along the spine, follow `order`.
  static RankDecomposition caterpillar(const std::vector<Vertex>& order) {
    const std::size_t n = order.size();
    std::vector<std::size_t> leaf_of(n);
    std::vector<std::vector<std::size_t>> adj;
    auto add_node = [&]() {
      adj.emplace_back();
      return adj.size() - 1;
    };
    auto link = [&](std::size_t a, std::size_t b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    };
    for (std::size_t i = 0; i < n; ++i) leaf_of[order[i]] = add_node();
    if (n == 2) link(leaf_of[order[0]], leaf_of[order[1]]);
    if (n >= 3) {
      std::vector<std::size_t> spine;
      for (std::size_t i = 0; i + 2 < n; ++i) spine.push_back(add_node());
      for (std::size_t i = 0; i + 1 < spine.size(); ++i) link(spine[i], spine[i + 1]);
      link(spine.front(), leaf_of[order[0]]);
      for (std::size_t i = 1; i + 1 < n; ++i) link(spine[i - 1], leaf_of[order[i]]);
      link(spine.back(), leaf_of[order[n - 1]]);
    }
    RankDecomposition d(std::move(adj), std::move(leaf_of));
    d.caterpillar_order_ = order;
    return d;
  }

  /// "(v1 v2 ... vn)" leaf order of a caterpillar.
  static RankDecomposition parse_caterpillar(std::string_view text) {
    std::string s(text);
    auto open = s.find('('), close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw std::invalid_argument("caterpillar text must be a parenthesized leaf list");
    std::istringstream in(s.substr(open + 1, close - open - 1));
    std::vector<Vertex> order;
    long long v = 0;
    while (in >> v) {
      if (v < 0) throw std::invalid_argument("negative vertex id in caterpillar");
      order.push_back(static_cast<Vertex>(v));
    }
    if (!in.eof()) throw std::invalid_argument("non-numeric token in caterpillar");
    std::vector<bool> seen(order.size(), false);
    for (Vertex x : order) {
      if (x >= order.size() || seen[x]) throw std::invalid_argument("caterpillar leaves must permute 0..n-1");
      seen[x] = true;
    }
    return caterpillar(order);
  }

  std::size_t order() const { return leaf_of_.size(); }
  std::size_t node_count() const { return adj_.size(); }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adj_; }
  std::size_t leaf_of(Vertex v) const { return leaf_of_.at(v); }
  const std::optional<std::vector<Vertex>>& caterpillar_order() const { return caterpillar_order_; }

  std::string to_string() const {
    if (!caterpillar_order_) throw std::logic_error("only caterpillar decompositions are serialized");
    std::string s = "(";
    for (std::size_t i = 0; i < caterpillar_order_->size(); ++i) {
      if (i) s += ' ';
      s += std::to_string((*caterpillar_order_)[i]);
    }
    return s + ")";
  }

  /// Leaves (as vertices) on the `from` side of tree edge {from, to}.
  VertexSet side(std::size_t from, std::size_t to) const {
    std::vector<std::optional<Vertex>> vertex_at(adj_.size());
    for (Vertex v = 0; v < leaf_of_.size(); ++v) vertex_at[leaf_of_[v]] = v;
    VertexSet out(order());
    std::vector<std::size_t> stack{from};
    std::vector<bool> seen(adj_.size(), false);
    seen[from] = seen[to] = true;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      if (vertex_at[a]) out.insert(*vertex_at[a]);
      for (std::size_t b : adj_[a])
        if (!seen[b]) {
          seen[b] = true;
          stack.push_back(b);
        }
    }
    return out;
  }

 private:
  void validate() const {
    const std::size_t n = leaf_of_.size();
    const std::size_t t = adj_.size();
    std::size_t degree_sum = 0;
    for (const auto& nb : adj_) degree_sum += nb.size();
    if (n == 0 ? t != 0 : degree_sum != 2 * (t - 1))
      throw std::invalid_argument("decomposition is not a tree");
    std::vector<bool> is_leaf(t, false);
    for (std::size_t node : leaf_of_) {
      if (node >= t || is_leaf[node]) throw std::invalid_argument("leaf map is not injective");
      is_leaf[node] = true;
    }
    for (std::size_t a = 0; a < t; ++a) {
      const std::size_t d = adj_[a].size();
      if (n >= 2 && is_leaf[a] && d != 1) throw std::invalid_argument("leaf node with degree != 1");
      if (!is_leaf[a] && d != 3) throw std::invalid_argument("internal node with degree != 3");
      for (std::size_t b : adj_[a])
        if (b >= t || b == a) throw std::invalid_argument("bad tree edge");
    }
    if (t > 0) {
      std::vector<bool> seen(t, false);
      std::vector<std::size_t> stack{0};
      seen[0] = true;
      std::size_t reached = 1;
      while (!stack.empty()) {
        std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t b : adj_[a])
          if (!seen[b]) {
            seen[b] = true;
            ++reached;
            stack.push_back(b);
          }
      }
      if (reached != t) throw std::invalid_argument("decomposition tree is disconnected");
    }
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> leaf_of_;
  std::optional<std::vector<Vertex>> caterpillar_order_;
};

/// GF(2) rank of the adjacency submatrix between `rows` and `cols`.
inline std::size_t cut_rank(const Graph& g, const VertexSet& rows, const VertexSet& cols) {
  std::vector<VertexSet> m;
  rows.for_each([&](Vertex a) { m.push_back(g.neighbors(a) & cols); });
  return gf2_rank(std::move(m));
}

/// Maximum cut rank over the edges of d.
inline std::size_t decomposition_width(const Graph& g, const RankDecomposition& d) {
  if (d.order() != g.order()) throw std::invalid_argument("decomposition does not match the graph");
  std::size_t width = 0;
  const auto& adj = d.adjacency();
  for (std::size_t a = 0; a < adj.size(); ++a)
    for (std::size_t b : adj[a])
      if (a < b) {
        VertexSet side_a = d.side(a, b);
        width = std::max(width, cut_rank(g, side_a, g.vertices() - side_a));
      }
  return width;
}

namespace detail {

/// Vertices in the order a threshold graph is built (reverse elimination):
/// every later vertex is joined to all or none of the earlier ones, so each
/// prefix cut has rank at most one.
inline std::vector<Vertex> construction_order(const Graph& g) {
  auto r = is_threshold(g);
  if (!r) throw std::invalid_argument("graph is not threshold");
  std::vector<Vertex> order;
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) order.push_back(it->vertex);
  return order;
}

}  // namespace detail

/// Caterpillar along the construction order of a threshold graph; width <= 1.
inline RankDecomposition threshold_caterpillar(const Graph& g) {
  return RankDecomposition::caterpillar(detail::construction_order(g));
}

struct EmbeddingDecomposition {
  RankDecomposition decomposition;
  std::size_t width = 0;  // evaluated on G
  std::size_t bound = 1;  // 2^k
};

/// Width-1 caterpillar of H, evaluated against G. Each cut of G then has at
/// most 2^k distinct nonzero columns, one per (join side, label) pair.
inline EmbeddingDecomposition embedding_decomposition(const Embedding& e) {
  if (auto c = verify_embedding(e); !c) throw std::invalid_argument("invalid embedding: " + c.violation);
  EmbeddingDecomposition out{threshold_caterpillar(e.h), 0, std::size_t{1} << e.witness.k()};
  out.width = decomposition_width(e.host, out.decomposition);
  if (out.width > out.bound)
    throw std::logic_error("cut rank " + std::to_string(out.width) + " exceeds 2^k = " + std::to_string(out.bound));
  return out;
}

}  // namespace thw
