#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thw {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Subset of {0..universe-1}, bit-packed.
class VertexSet {
 public:
  static constexpr Vertex npos = static_cast<Vertex>(-1);

  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }
  VertexSet(std::size_t universe, std::span<const Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return universe_; }

  bool contains(Vertex v) const { return v < universe_ && ((words_[v / 64] >> (v % 64)) & 1U); }
  void insert(Vertex v) {
    check(v);
    words_[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  void erase(Vertex v) {
    check(v);
    words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
  }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool is_subset_of(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const VertexSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  /// Smallest member >= from, or npos.
  Vertex next(Vertex from) const {
    if (from >= universe_) return npos;
    std::size_t wi = from / 64;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from % 64));
    while (true) {
      if (w) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return npos;
      w = words_[wi];
    }
  }
  Vertex first() const { return next(0); }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for (Vertex v = first(); v != npos; v = next(v + 1)) out.push_back(v);
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      for (std::uint64_t w = words_[wi]; w; w &= w - 1)
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    }
  }

  VertexSet& operator|=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    return a.members() < b.members();
  }

  std::span<const std::uint64_t> words() const { return words_; }

  std::string to_string() const {
    std::string s = "{";
    bool firstm = true;
    for_each([&](Vertex v) {
      if (!firstm) s += ',';
      s += std::to_string(v);
      firstm = false;
    });
    return s + "}";
  }

 private:
  void check(Vertex v) const {
    if (v >= universe_)
      throw std::out_of_range("vertex " + std::to_string(v) + " outside universe of size " +
                              std::to_string(universe_));
  }
  void same_universe(const VertexSet& o) const {
    if (o.universe_ != universe_) throw std::invalid_argument("vertex sets over different universes");
  }
  void trim() {
    if (universe_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n, VertexSet(n)) {}

  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }
  static Graph from_edges(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::size_t order() const { return adj_.size(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& row : adj_) twice += row.size();
    return twice / 2;
  }

  bool adjacent(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return adj_[u].contains(v);
  }

  void add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    adj_[u].insert(v);
    adj_[v].insert(u);
  }
  void remove_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    adj_[u].erase(v);
    adj_[v].erase(u);
  }

  const VertexSet& neighbors(Vertex v) const {
    check(v);
    return adj_[v];
  }
  VertexSet closed_neighbors(Vertex v) const {
    VertexSet s = neighbors(v);
    s.insert(v);
    return s;
  }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  VertexSet vertices() const { return VertexSet::full(order()); }
  VertexSet empty_set() const { return VertexSet(order()); }

  /// Edges as (u,v) with u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < order(); ++u)
      adj_[u].for_each([&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check(Vertex v) const {
    if (v >= adj_.size())
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range for graph of order " +
                              std::to_string(adj_.size()));
  }

  std::vector<VertexSet> adj_;
};

inline Graph complement(const Graph& g) {
  const std::size_t n = g.order();
  Graph h(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) h.add_edge(u, v);
  return h;
}

/// G[s] relabeled to 0..|s|-1; `original[i]` is the id in g of new vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> keep = s.members();
  for (Vertex v : keep)
    if (v >= g.order()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  InducedSubgraph r{Graph(keep.size()), keep};
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (g.adjacent(keep[i], keep[j])) r.graph.add_edge(i, j);
  return r;
}

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
  for (Vertex v : s)
    if (v >= g.order()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  return induced_subgraph(g, VertexSet(g.order(), s));
}

/// G minus a single vertex, relabeled.
inline InducedSubgraph delete_vertex(const Graph& g, Vertex x) {
  VertexSet keep = g.vertices();
  keep.erase(x);
  return induced_subgraph(g, keep);
}

/// Open-twin (equal N(x)) and closed-twin (equal N[x]) classes with their inclusion orders.
/// Classes are listed by smallest member; order pairs (a, b) mean class a precedes class b
/// (N(a) ⊆ N(b), resp. N[a] ⊆ N[b]) and are reported for a != b only.
struct TwinPartition {
  std::vector<std::vector<Vertex>> open_classes;
  std::vector<std::size_t> open_class_of;
  std::vector<std::pair<std::size_t, std::size_t>> open_order;

  std::vector<std::vector<Vertex>> closed_classes;
  std::vector<std::size_t> closed_class_of;
  std::vector<std::pair<std::size_t, std::size_t>> closed_order;
};

namespace detail {

inline void group_by(const std::vector<VertexSet>& keys, std::vector<std::vector<Vertex>>& classes,
                     std::vector<std::size_t>& class_of) {
  std::map<std::vector<Vertex>, std::size_t> index;
  class_of.assign(keys.size(), 0);
  classes.clear();
  for (Vertex v = 0; v < keys.size(); ++v) {
    auto [it, inserted] = index.try_emplace(keys[v].members(), classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(v);
    class_of[v] = it->second;
  }
}

inline std::vector<std::pair<std::size_t, std::size_t>> inclusion_order(
    const std::vector<VertexSet>& keys, const std::vector<std::vector<Vertex>>& classes) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (std::size_t b = 0; b < classes.size(); ++b)
      if (a != b && keys[classes[a][0]].is_subset_of(keys[classes[b][0]])) out.emplace_back(a, b);
  return out;
}

}  // namespace detail

inline TwinPartition twin_partition(const Graph& g) {
  std::vector<VertexSet> open, closed;
  for (Vertex v = 0; v < g.order(); ++v) {
    open.push_back(g.neighbors(v));
    closed.push_back(g.closed_neighbors(v));
  }
  TwinPartition tp;
  detail::group_by(open, tp.open_classes, tp.open_class_of);
  detail::group_by(closed, tp.closed_classes, tp.closed_class_of);
  tp.open_order = detail::inclusion_order(open, tp.open_classes);
  tp.closed_order = detail::inclusion_order(closed, tp.closed_classes);
  return tp;
}

// Named small graphs used throughout tests and examples.
namespace graphs {

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}
inline Graph edgeless(std::size_t n) { return Graph(n); }
inline Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}
inline Graph cycle(std::size_t n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}
inline Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}
inline Graph two_k2() { return Graph::from_edges(4, {{0, 1}, {2, 3}}); }
inline Graph diamond() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

/// Disjoint union; vertices of b are shifted by a.order().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.order() + b.order());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  for (auto [u, v] : b.edges()) g.add_edge(u + a.order(), v + a.order());
  return g;
}

}  // namespace graphs

namespace detail {

/// Adjacency rows as single machine words; only valid for n <= 64.
inline std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  if (g.order() > 64) throw std::length_error("adjacency_masks requires at most 64 vertices");
  std::vector<std::uint64_t> rows(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    auto w = g.neighbors(v).words();
    rows[v] = w.empty() ? 0 : w[0];
  }
  return rows;
}

inline std::uint64_t low_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace detail

}  // namespace thw
