#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thw/graph.hpp"
#include "thw/graph_io.hpp"

namespace thw {

inline constexpr std::size_t kMaxCanonicalOrder = 10;
inline constexpr std::size_t kMaxEnumerationOrder = 7;

namespace detail {

// Builds the vertex permutation position by position. Column j of the
// relabeled upper triangle depends only on perm[0..j], so any prefix whose
// columns already exceed the best found so far is cut.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g)
      : n_(g.order()), rows_(adjacency_masks(g)), perm_(n_), col_(n_, 0), best_col_(n_, 0), best_perm_(n_) {}

  std::vector<Vertex> run() {
    if (n_ == 0) return {};
    used_ = 0;
    dfs(0);
    return best_perm_;
  }

 private:
  void dfs(std::size_t depth) {
    if (depth == n_) {
      if (!have_best_ || less_than_best(n_)) {
        have_best_ = true;
        best_col_ = col_;
        best_perm_ = perm_;
      }
      return;
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (used_ >> v & 1U) continue;
      perm_[depth] = v;
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < depth; ++i) c = (c << 1) | (rows_[perm_[i]] >> v & 1U);
      col_[depth] = c;
      if (have_best_ && greater_than_best(depth + 1)) continue;
      used_ |= std::uint64_t{1} << v;
      dfs(depth + 1);
      used_ &= ~(std::uint64_t{1} << v);
    }
  }
  bool greater_than_best(std::size_t len) const {
    for (std::size_t j = 0; j < len; ++j)
      if (col_[j] != best_col_[j]) return col_[j] > best_col_[j];
    return false;
  }
  bool less_than_best(std::size_t len) const {
    for (std::size_t j = 0; j < len; ++j)
      if (col_[j] != best_col_[j]) return col_[j] < best_col_[j];
    return false;
  }

  std::size_t n_;
  std::vector<std::uint64_t> rows_;
  std::vector<Vertex> perm_;
  std::vector<std::uint64_t> col_, best_col_;
  std::vector<Vertex> best_perm_;
  std::uint64_t used_ = 0;
  bool have_best_ = false;
};

}  // namespace detail

/// Relabels g by `perm`: new vertex i is old vertex perm[i].
inline Graph permute(const Graph& g, const std::vector<Vertex>& perm) {
  Graph h(g.order());
  for (Vertex i = 0; i < perm.size(); ++i)
    for (Vertex j = i + 1; j < perm.size(); ++j)
      if (g.adjacent(perm[i], perm[j])) h.add_edge(i, j);
  return h;
}

/// Lexicographically smallest graph6 string over all relabelings.
inline std::string canonical_code(const Graph& g) {
  if (g.order() > kMaxCanonicalOrder)
    throw std::length_error("canonical_code supports at most " + std::to_string(kMaxCanonicalOrder) +
                            " vertices");
  return graph6::encode(permute(g, detail::CanonicalSearch(g).run()));
}

inline Graph canonical_form(const Graph& g) { return graph6::decode(canonical_code(g)); }

inline bool isomorphic(const Graph& a, const Graph& b) {
  return a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_code(a) == canonical_code(b);
}

inline std::size_t labeled_graph_count_log2(std::size_t n) { return n * (n - (n > 0)) / 2; }

/// The labeled graph whose edge set is given by the bits of `index` in graph6
/// bit order (bit 0 = x(0,1), bit 1 = x(0,2), bit 2 = x(1,2), ...).
inline Graph labeled_graph(std::size_t n, std::uint64_t index) {
  Graph g(n);
  std::size_t b = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++b)
      if (index >> b & 1U) g.add_edge(i, j);
  return g;
}

/// Canonical codes of all labeled graphs with index in [begin, end).
/// Callers may shard the full range 0 .. 2^(n(n-1)/2).
inline std::vector<std::string> canonical_codes_in_range(std::size_t n, std::uint64_t begin, std::uint64_t end) {
  std::vector<std::string> codes;
  for (std::uint64_t i = begin; i < end; ++i) codes.push_back(canonical_code(labeled_graph(n, i)));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

/// One canonical representative per isomorphism class on n vertices, ordered
/// by edge count and then by canonical code.
inline std::vector<Graph> enumerate_nonisomorphic(std::size_t n) {
  if (n > kMaxEnumerationOrder)
    throw std::length_error("enumeration supports at most " + std::to_string(kMaxEnumerationOrder) +
                            " vertices");
  // Every graph on n vertices is a class representative on n-1 vertices plus
  // one vertex with some neighborhood; dedupe those extensions by code.
  std::vector<Graph> level{Graph(0)};
  for (std::size_t order = 1; order <= n; ++order) {
    std::map<std::pair<std::size_t, std::string>, Graph> next;
    for (const Graph& base : level) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << base.order()); ++mask) {
        Graph g(order);
        for (auto [u, v] : base.edges()) g.add_edge(u, v);
        for (Vertex u = 0; u < base.order(); ++u)
          if (mask >> u & 1U) g.add_edge(u, order - 1);
        std::string code = canonical_code(g);
        next.try_emplace({g.edge_count(), code}, graph6::decode(code));
      }
    }
    level.clear();
    for (auto& [key, g] : next) level.push_back(std::move(g));
  }
  return level;
}

/// Representatives for every order 0..nmax, concatenated.
inline std::vector<Graph> enumerate_up_to(std::size_t nmax) {
  std::vector<Graph> all;
  for (std::size_t n = 0; n <= nmax; ++n) {
    auto level = enumerate_nonisomorphic(n);
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

}  // namespace thw
