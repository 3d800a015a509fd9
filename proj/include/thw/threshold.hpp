#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thw/graph.hpp"

namespace thw {

enum class StepKind { Isolated, Universal };

struct EliminationStep {
  Vertex vertex;
  StepKind kind;
  friend bool operator==(const EliminationStep&, const EliminationStep&) = default;
};

/// Removal sequence: each vertex is isolated (or universal) among the
/// vertices not yet removed when its step is replayed.
using EliminationOrder = std::vector<EliminationStep>;

enum class Pattern { P4, C4, TwoK2 };

inline std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::P4: return "P4";
    case Pattern::C4: return "C4";
    case Pattern::TwoK2: return "2K2";
  }
  return "?";
}

/// Four vertices inducing P4, C4 or 2K2.
struct ForbiddenWitness {
  std::array<Vertex, 4> vertices;
  Pattern pattern;
};

/// The forbidden pattern induced by four distinct vertices, if any.
inline std::optional<Pattern> classify_quad(const Graph& g, const std::array<Vertex, 4>& q) {
  int edges = 0;
  std::array<int, 4> deg{};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (g.adjacent(q[i], q[j])) {
        ++edges;
        ++deg[i];
        ++deg[j];
      }
  std::sort(deg.begin(), deg.end());
  if (edges == 2 && deg == std::array<int, 4>{1, 1, 1, 1}) return Pattern::TwoK2;
  if (edges == 3 && deg == std::array<int, 4>{1, 1, 2, 2}) return Pattern::P4;
  if (edges == 4 && deg == std::array<int, 4>{2, 2, 2, 2}) return Pattern::C4;
  return std::nullopt;
}

struct ThresholdResult {
  bool accepted = false;
  EliminationOrder order;                  // complete when accepted
  std::optional<ForbiddenWitness> witness;  // set when rejected

  explicit operator bool() const { return accepted; }
};

namespace detail {

inline std::optional<ForbiddenWitness> find_forbidden(const Graph& g, const VertexSet& among) {
  auto vs = among.members();
  const std::size_t m = vs.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c)
        for (std::size_t d = c + 1; d < m; ++d) {
          std::array<Vertex, 4> q{vs[a], vs[b], vs[c], vs[d]};
          if (auto p = classify_quad(g, q)) return ForbiddenWitness{q, *p};
        }
  return std::nullopt;
}

}  // namespace detail

/// Peels isolated vertices (lowest id first) and, when none exist, universal
/// vertices. A stuck residual contains an induced P4, C4 or 2K2.
inline ThresholdResult is_threshold(const Graph& g) {
  ThresholdResult r;
  VertexSet alive = g.vertices();
  std::size_t remaining = g.order();
  while (remaining > 0) {
    Vertex pick = VertexSet::npos;
    StepKind kind = StepKind::Isolated;
    for (Vertex v = alive.first(); v != VertexSet::npos; v = alive.next(v + 1))
      if (!g.neighbors(v).intersects(alive)) {
        pick = v;
        break;
      }
    if (pick == VertexSet::npos) {
      kind = StepKind::Universal;
      for (Vertex v = alive.first(); v != VertexSet::npos; v = alive.next(v + 1))
        if ((g.neighbors(v) & alive).size() + 1 == remaining) {
          pick = v;
          break;
        }
    }
    if (pick == VertexSet::npos) {
      r.witness = detail::find_forbidden(g, alive);
      if (!r.witness) throw std::logic_error("stuck residual without a forbidden quadruple");
      r.order.clear();
      return r;
    }
    r.order.push_back({pick, kind});
    alive.erase(pick);
    --remaining;
  }
  r.accepted = true;
  return r;
}

/// Checks that `order` covers every vertex once and replays correctly.
inline bool replays(const Graph& g, const EliminationOrder& order) {
  if (order.size() != g.order()) return false;
  VertexSet alive = g.vertices();
  for (auto [v, kind] : order) {
    if (v >= g.order() || !alive.contains(v)) return false;
    VertexSet others = alive;
    others.erase(v);
    const VertexSet nb = g.neighbors(v) & others;
    if (kind == StepKind::Isolated ? !nb.empty() : nb != others) return false;
    alive.erase(v);
  }
  return true;
}

struct ChainResult {
  std::optional<std::vector<Vertex>> order;
  std::optional<Edge> violation;  // incomparable pair when no chain exists

  explicit operator bool() const { return order.has_value(); }
};

/// Total order with N(x_i) ⊆ N[x_j] for i < j, by sorting on (degree, id).
inline ChainResult chain_order(const Graph& g) {
  std::vector<Vertex> order(g.order());
  for (Vertex v = 0; v < g.order(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (!g.neighbors(order[i]).is_subset_of(g.closed_neighbors(order[j])))
        return {std::nullopt, Edge{order[i], order[j]}};
  return {std::move(order), std::nullopt};
}

inline bool is_chain(const Graph& g, const std::vector<Vertex>& order) {
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (!g.neighbors(order[i]).is_subset_of(g.closed_neighbors(order[j]))) return false;
  return true;
}

enum class Tag { Union, Join };

/// Vertex 0, then vertex i+1 joined to all (Join) or none (Union) of 0..i.
inline Graph threshold_from_sequence(const std::vector<Tag>& tags) {
  Graph g(tags.size() + 1);
  for (std::size_t i = 0; i < tags.size(); ++i)
    if (tags[i] == Tag::Join)
      for (Vertex u = 0; u <= i; ++u) g.add_edge(u, i + 1);
  return g;
}

/// Tag i is Join iff the top bit of the i-th std::mt19937_64 output is set.
inline std::vector<Tag> random_tags(std::size_t count, std::mt19937_64& rng) {
  std::vector<Tag> tags(count);
  for (auto& t : tags) t = (rng() >> 63) ? Tag::Join : Tag::Union;
  return tags;
}

inline Graph random_threshold(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_threshold requires n >= 1");
  std::mt19937_64 rng(seed);
  return threshold_from_sequence(random_tags(n - 1, rng));
}

/// Binary tree whose internal nodes are Join/Union and whose right children
/// are leaves. Two vertices are adjacent iff their lowest common ancestor is a
/// Join node.
class ThresholdTree {
 public:
  enum class Kind { Leaf, Join, Union };
  struct Node {
    Kind kind;
    Vertex vertex = 0;  // leaves only
    std::size_t left = 0, right = 0;
  };

  ThresholdTree() = default;

  static ThresholdTree from_elimination(const EliminationOrder& order) {
    ThresholdTree t;
    if (order.empty()) return t;
    t.root_ = t.leaf(order.back().vertex);
    for (std::size_t s = order.size() - 1; s-- > 0;) {
      std::size_t right = t.leaf(order[s].vertex);
      t.nodes_.push_back(
          {order[s].kind == StepKind::Universal ? Kind::Join : Kind::Union, 0, *t.root_, right});
      t.root_ = t.nodes_.size() - 1;
    }
    return t;
  }

  /// Parses "(J left right)" / "(U left right)" with integer leaves.
  static ThresholdTree parse(std::string_view text) {
    ThresholdTree t;
    std::size_t pos = 0;
    skip_ws(text, pos);
    if (pos == text.size()) return t;
    t.root_ = t.parse_node(text, pos);
    skip_ws(text, pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters in tree text");
    t.validate();
    return t;
  }

  std::optional<std::size_t> root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.kind == Kind::Leaf; }));
  }

  std::string to_string() const { return root_ ? to_string(*root_) : std::string(); }

  /// Vertices in insertion order with the tag each was added with; the first
  /// vertex has no tag.
  std::pair<std::vector<Vertex>, std::vector<Tag>> sequence() const {
    std::vector<Vertex> order;
    std::vector<Tag> tags;
    if (!root_) return {order, tags};
    std::size_t cur = *root_;
    while (nodes_[cur].kind != Kind::Leaf) {
      order.push_back(nodes_[nodes_[cur].right].vertex);
      tags.push_back(nodes_[cur].kind == Kind::Join ? Tag::Join : Tag::Union);
      cur = nodes_[cur].left;
    }
    order.push_back(nodes_[cur].vertex);
    std::reverse(order.begin(), order.end());
    std::reverse(tags.begin(), tags.end());
    return {order, tags};
  }

  /// Applies the lowest-common-ancestor law to every pair of leaves.
  Graph reconstruct() const {
    const std::size_t n = leaf_count();
    Graph g(n);
    if (!root_) return g;
    std::vector<std::vector<Vertex>> below(nodes_.size());
    collect(*root_, below);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& nd = nodes_[i];
      if (nd.kind != Kind::Join) continue;
      for (Vertex a : below[nd.left])
        for (Vertex b : below[nd.right]) g.add_edge(a, b);
    }
    return g;
  }

 private:
  std::size_t leaf(Vertex v) {
    nodes_.push_back({Kind::Leaf, v, 0, 0});
    return nodes_.size() - 1;
  }

  void collect(std::size_t i, std::vector<std::vector<Vertex>>& below) const {
    const Node& nd = nodes_[i];
    if (nd.kind == Kind::Leaf) {
      below[i] = {nd.vertex};
      return;
    }
    collect(nd.left, below);
    collect(nd.right, below);
    below[i] = below[nd.left];
    below[i].insert(below[i].end(), below[nd.right].begin(), below[nd.right].end());
  }

  std::string to_string(std::size_t i) const {
    const Node& nd = nodes_[i];
    if (nd.kind == Kind::Leaf) return std::to_string(nd.vertex);
    return std::string("(") + (nd.kind == Kind::Join ? "J " : "U ") + to_string(nd.left) + " " +
           to_string(nd.right) + ")";
  }

  static void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  std::size_t parse_node(std::string_view s, std::size_t& pos) {
    skip_ws(s, pos);
    if (pos == s.size()) throw std::invalid_argument("unexpected end of tree text");
    if (s[pos] == '(') {
      ++pos;
      skip_ws(s, pos);
      if (pos == s.size() || (s[pos] != 'J' && s[pos] != 'U'))
        throw std::invalid_argument("expected J or U at offset " + std::to_string(pos));
      Kind kind = s[pos] == 'J' ? Kind::Join : Kind::Union;
      ++pos;
      std::size_t l = parse_node(s, pos);
      std::size_t r = parse_node(s, pos);
      skip_ws(s, pos);
      if (pos == s.size() || s[pos] != ')')
        throw std::invalid_argument("expected ')' at offset " + std::to_string(pos));
      ++pos;
      nodes_.push_back({kind, 0, l, r});
      return nodes_.size() - 1;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected vertex id at offset " + std::to_string(start));
    return leaf(std::stoul(std::string(s.substr(start, pos - start))));
  }

  void validate() const {
    std::vector<bool> seen(leaf_count(), false);
    for (const Node& nd : nodes_) {
      if (nd.kind == Kind::Leaf) {
        if (nd.vertex >= seen.size() || seen[nd.vertex])
          throw std::invalid_argument("tree leaves must be a permutation of 0..n-1");
        seen[nd.vertex] = true;
      } else if (nodes_[nd.right].kind != Kind::Leaf) {
        throw std::invalid_argument("right child of an internal node must be a leaf");
      }
    }
  }

  std::vector<Node> nodes_;
  std::optional<std::size_t> root_;
};

inline ThresholdTree threshold_tree(const Graph& g) {
  auto r = is_threshold(g);
  if (!r) throw std::invalid_argument("threshold_tree requires a threshold graph");
  return ThresholdTree::from_elimination(r.order);
}

}  // namespace thw
