#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "thw/graph.hpp"
#include "thw/partitioned.hpp"
#include "thw/witness.hpp"

namespace thw {

inline constexpr std::size_t kMaxFptK = 4;

enum class ModuleKind { FalseModule, TrueModule };

struct ModuleRemoval {
  Vertex vertex;          // original id
  ModuleKind kind;
  Vertex representative;  // surviving twin, original id
};

using ModuleReductionLog = std::vector<ModuleRemoval>;

struct ModuleReduction {
  Graph graph;                  // reduced, relabeled 0..n'-1
  std::vector<Vertex> original;  // original id of each reduced vertex
  ModuleReductionLog log;
};

namespace detail {

inline std::vector<std::vector<Vertex>> twin_classes_within(const Graph& g, const VertexSet& alive, bool closed) {
  std::map<std::vector<Vertex>, std::vector<Vertex>> groups;
  alive.for_each([&](Vertex v) {
    VertexSet key = g.neighbors(v) & alive;
    if (closed) key.insert(v);
    groups[key.members()].push_back(v);
  });
  std::vector<std::vector<Vertex>> out;
  for (auto& [key, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Shrinks false modules (open-twin classes) to 2 vertices and true modules
/// (closed-twin classes) to k+2 vertices, deleting the highest id each time.
inline ModuleReduction reduce_kprobe_modules(const Graph& g, std::size_t k) {
  VertexSet alive = g.vertices();
  ModuleReductionLog log;
  while (true) {
    bool removed = false;
    for (auto& cls : detail::twin_classes_within(g, alive, false))
      if (cls.size() >= 3) {
        log.push_back({cls.back(), ModuleKind::FalseModule, cls.front()});
        alive.erase(cls.back());
        removed = true;
        break;
      }
    if (removed) continue;
    for (auto& cls : detail::twin_classes_within(g, alive, true))
      if (cls.size() >= k + 3) {
        log.push_back({cls.back(), ModuleKind::TrueModule, cls.front()});
        alive.erase(cls.back());
        removed = true;
        break;
      }
    if (!removed) break;
  }
  auto sub = induced_subgraph(g, alive);
  return {std::move(sub.graph), std::move(sub.original), std::move(log)};
}

/// Vertices of G[alive] with no strict dominator in either twin order.
inline VertexSet maximal_vertices(const Graph& g, const VertexSet& alive) {
  VertexSet out(g.order());
  std::vector<Vertex> vs = alive.members();
  std::vector<VertexSet> open(g.order()), closed(g.order());
  for (Vertex v : vs) {
    open[v] = g.neighbors(v) & alive;
    closed[v] = open[v];
    closed[v].insert(v);
  }
  for (Vertex x : vs) {
    bool dominated = false;
    for (Vertex y : vs) {
      if ((open[y] != open[x] && open[x].is_subset_of(open[y])) ||
          (closed[y] != closed[x] && closed[x].is_subset_of(closed[y]))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.insert(x);
  }
  return out;
}

inline VertexSet maximal_vertices(const Graph& g) { return maximal_vertices(g, g.vertices()); }

/// Union of 2^k rounds of "take the maximal vertices, then delete them".
inline VertexSet upsilon(const Graph& g, std::size_t k, const VertexSet& alive) {
  VertexSet rest = alive;
  VertexSet out(g.order());
  for (std::size_t round = 0; round < (std::size_t{1} << k) && !rest.empty(); ++round) {
    VertexSet m = maximal_vertices(g, rest);
    out |= m;
    rest -= m;
  }
  return out;
}

inline VertexSet upsilon(const Graph& g, std::size_t k) { return upsilon(g, k, g.vertices()); }

/// Every non-adjacent pair shares a label bit and every adjacent pair has
/// disjoint labels.
inline bool is_partitioned_probe_clique(const Graph& g, const std::vector<Vertex>& members,
                                        const std::vector<std::uint32_t>& labels) {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const bool share = (labels[i] & labels[j]) != 0;
      if (g.adjacent(members[i], members[j]) == share) return false;
    }
  return true;
}

/// Labeled vertex set U such that every x outside U has some label making
/// U + x a partitioned probe clique.
struct ProbeUniversalSet {
  std::size_t k = 0;
  std::vector<Vertex> members;
  std::vector<std::uint32_t> labels;  // parallel to members
};

inline bool is_probe_universal_set(const Graph& g, const ProbeUniversalSet& u) {
  if (!is_partitioned_probe_clique(g, u.members, u.labels)) return false;
  VertexSet in(g.order(), u.members);
  for (Vertex x = 0; x < g.order(); ++x) {
    if (in.contains(x)) continue;
    bool some = false;
    for (std::uint32_t l = 0; l < (std::uint32_t{1} << u.k) && !some; ++l) {
      some = true;
      for (std::size_t i = 0; i < u.members.size() && some; ++i)
        some = g.adjacent(x, u.members[i]) != ((l & u.labels[i]) != 0);
    }
    if (!some) return false;
  }
  return true;
}

/// Levels of an embedding: classes of equal open or closed neighborhood in H,
/// from the universal level M_0 downward, each split into label-sets.
struct LevelStructure {
  struct Level {
    std::vector<Vertex> vertices;
    std::vector<std::vector<Vertex>> label_sets;
  };
  std::vector<Level> levels;
};

inline LevelStructure level_structure(const Embedding& e) {
  const Graph& h = e.h;
  const std::size_t n = h.order();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      if (h.neighbors(x) == h.neighbors(y) || h.closed_neighbors(x) == h.closed_neighbors(y))
        parent[find(x)] = find(y);

  std::map<std::size_t, std::vector<Vertex>> groups;
  for (Vertex v = 0; v < n; ++v) groups[find(v)].push_back(v);
  LevelStructure ls;
  for (auto& [root, vs] : groups) {
    LevelStructure::Level lvl;
    lvl.vertices = vs;
    std::map<std::uint32_t, std::vector<Vertex>> by_label;
    for (Vertex v : vs) by_label[e.witness.label(v).bits].push_back(v);
    for (auto& [bits, members] : by_label) lvl.label_sets.push_back(members);
    ls.levels.push_back(std::move(lvl));
  }
  std::stable_sort(ls.levels.begin(), ls.levels.end(), [&](const auto& a, const auto& b) {
    return h.degree(a.vertices.front()) > h.degree(b.vertices.front());
  });
  return ls;
}

struct FptOptions {
  bool use_greedy = true;
  bool use_upsilon_priority = true;
  std::size_t memo_limit = std::size_t{1} << 22;
};

struct FptStats {
  std::size_t nodes = 0;
  std::size_t greedy_extensions = 0;
  std::size_t memo_hits = 0;
  std::size_t reduced_order = 0;
};

struct FptResult {
  bool accepted = false;
  std::optional<Witness> witness;
  FptStats stats;

  explicit operator bool() const { return accepted; }
};

namespace detail {

// Elimination search without a given witness. A state is the set of
// undeleted vertices together with, for each of them, the mask of k-bit
// labels still consistent with the deleted vertices: a deleted universal
// vertex ω with label l forces every remaining neighbor to a label disjoint
// from l and every remaining non-neighbor to a label meeting l. Isolated
// vertices are deleted eagerly. Universal deletions branch over (vertex,
// label); the greedy extension and Υ only order that branching, so the
// search stays complete.
class FptSearch {
 public:
  FptSearch(const Graph& g, std::size_t k, const FptOptions& opt)
      : g_(g), k_(k), nl_(std::uint32_t{1} << k), opt_(opt), labels_(g.order(), 0) {
    for (std::uint32_t l = 0; l < nl_; ++l) {
      meet_[l] = disjoint_[l] = 0;
      for (std::uint32_t m = 0; m < nl_; ++m) {
        if (l & m)
          meet_[l] |= std::uint32_t{1} << m;
        else
          disjoint_[l] |= std::uint32_t{1} << m;
      }
    }
  }

  bool run() {
    std::vector<std::uint32_t> allowed(g_.order(), all_labels());
    return solve(g_.vertices(), std::move(allowed), 0);
  }

  const std::vector<std::uint32_t>& labels() const { return labels_; }
  const FptStats& stats() const { return stats_; }

 private:
  std::uint32_t all_labels() const { return nl_ == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << nl_) - 1; }

  static std::uint32_t lowest_label(std::uint32_t mask) { return static_cast<std::uint32_t>(std::countr_zero(mask)); }

  // Deletes x as a universal vertex labeled l; false if some remaining vertex
  // is left without a consistent label.
  bool apply_universal(Vertex x, std::uint32_t l, const VertexSet& alive, std::vector<std::uint32_t>& allowed) const {
    bool ok = true;
    alive.for_each([&](Vertex z) {
      if (z == x || !ok) return;
      allowed[z] &= g_.adjacent(x, z) ? disjoint_[l] : meet_[l];
      if (!allowed[z]) ok = false;
    });
    return ok;
  }

  std::string key(const VertexSet& alive, const std::vector<std::uint32_t>& allowed) const {
    std::string s;
    for (auto w : alive.words()) s.append(reinterpret_cast<const char*>(&w), sizeof w);
    alive.for_each([&](Vertex v) {
      auto a = static_cast<std::uint16_t>(allowed[v]);
      s.append(reinterpret_cast<const char*>(&a), sizeof a);
    });
    return s;
  }

  struct Extension {
    Vertex x;
    std::vector<std::pair<Vertex, std::uint32_t>> assigned;
    std::vector<std::uint32_t> allowed;
  };

  // A vertex x with inclusion-minimal remaining neighborhood whose neighbors
  // can all be deleted as universal using only labels already in use.
  std::optional<Extension> greedy_extension(const VertexSet& alive, const std::vector<std::uint32_t>& allowed,
                                            std::uint32_t used) const {
    if (!used) return std::nullopt;
    std::vector<std::pair<std::size_t, Vertex>> cand;
    alive.for_each([&](Vertex x) { cand.emplace_back((g_.neighbors(x) & alive).size(), x); });
    std::sort(cand.begin(), cand.end());
    for (auto [deg, x] : cand) {
      std::vector<Vertex> nb = (g_.neighbors(x) & alive).members();
      Extension ext{x, {}, allowed};
      std::size_t budget = 4096;
      VertexSet rest = alive;
      auto assign = [&](auto&& self, std::size_t i) -> bool {
        if (i == nb.size()) return true;
        if (budget-- == 0) return false;
        const Vertex s = nb[i];
        for (std::uint32_t opts = ext.allowed[s] & used; opts; opts &= opts - 1) {
          const std::uint32_t l = lowest_label(opts);
          auto saved = ext.allowed;
          if (apply_universal(s, l, rest, ext.allowed)) {
            rest.erase(s);
            ext.assigned.emplace_back(s, l);
            if (self(self, i + 1)) return true;
            ext.assigned.pop_back();
            rest.insert(s);
          }
          ext.allowed = std::move(saved);
        }
        return false;
      };
      if (assign(assign, 0)) return ext;
    }
    return std::nullopt;
  }

  bool solve(VertexSet alive, std::vector<std::uint32_t> allowed, std::uint32_t used) {
    for (bool again = true; again;) {
      again = false;
      for (Vertex v = alive.first(); v != VertexSet::npos; v = alive.next(v + 1))
        if (!g_.neighbors(v).intersects(alive)) {
          if (!allowed[v]) return false;
          labels_[v] = lowest_label(allowed[v]);
          alive.erase(v);
          again = true;
        }
    }
    if (alive.empty()) return true;

    std::string k = key(alive, allowed);
    if (failed_.count(k)) {
      ++stats_.memo_hits;
      return false;
    }
    ++stats_.nodes;

    if (opt_.use_greedy) {
      if (auto ext = greedy_extension(alive, allowed, used)) {
        VertexSet rest = alive;
        for (auto [s, l] : ext->assigned) {
          labels_[s] = l;
          rest.erase(s);
        }
        ++stats_.greedy_extensions;
        if (solve(rest, ext->allowed, used)) return true;
      }
    }

    std::vector<Vertex> order;
    if (opt_.use_upsilon_priority) {
      VertexSet ups = upsilon(g_, k_, alive);
      order = ups.members();
      for (Vertex v : (alive - ups).members()) order.push_back(v);
    } else {
      order = alive.members();
    }
    for (Vertex x : order) {
      // Labels already in use first, then the rest in ascending order.
      std::vector<std::uint32_t> choices;
      for (std::uint32_t m = allowed[x] & used; m; m &= m - 1) choices.push_back(lowest_label(m));
      for (std::uint32_t m = allowed[x] & ~used; m; m &= m - 1) choices.push_back(lowest_label(m));
      for (std::uint32_t l : choices) {
        std::vector<std::uint32_t> next = allowed;
        if (!apply_universal(x, l, alive, next)) continue;
        VertexSet rest = alive;
        rest.erase(x);
        labels_[x] = l;
        if (solve(std::move(rest), std::move(next), used | (std::uint32_t{1} << l))) return true;
      }
    }
    if (failed_.size() < opt_.memo_limit) failed_.insert(std::move(k));
    return false;
  }

  const Graph& g_;
  std::size_t k_;
  std::uint32_t nl_;
  FptOptions opt_;
  std::uint32_t meet_[16]{}, disjoint_[16]{};
  std::vector<std::uint32_t> labels_;
  std::unordered_set<std::string> failed_;
  FptStats stats_;
};

inline bool accepts_labels(const Graph& g, const std::vector<std::uint32_t>& labels, std::size_t k) {
  if (g.order() <= 64) return partitioned_accepts(adjacency_masks(g), labels);
  return static_cast<bool>(recognize_partitioned(g, witness_from_labels(g, k, labels)));
}

}  // namespace detail

/// Decides TH-width <= k. On acceptance the returned witness is checked by the
/// partitioned recognizer before returning.
inline FptResult recognize_fpt(const Graph& g, std::size_t k, FptOptions opt = {}) {
  if (k > kMaxFptK) throw std::invalid_argument("recognize_fpt supports k <= " + std::to_string(kMaxFptK));
  FptResult res;

  // Isolated vertices are set aside and come back as probes.
  VertexSet core = g.vertices();
  std::vector<Vertex> isolated;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0) {
      isolated.push_back(v);
      core.erase(v);
    }
  auto stripped = induced_subgraph(g, core);
  ModuleReduction red = reduce_kprobe_modules(stripped.graph, k);
  res.stats.reduced_order = red.graph.order();

  detail::FptSearch search(red.graph, k, opt);
  const bool ok = search.run();
  {
    const auto& s = search.stats();
    res.stats.nodes = s.nodes;
    res.stats.greedy_extensions = s.greedy_extensions;
    res.stats.memo_hits = s.memo_hits;
  }
  if (!ok) return res;

  // Labels by original id; module vertices are re-inserted in reverse
  // removal order with the first label that keeps the instance accepted.
  const std::uint32_t nl = std::uint32_t{1} << k;
  std::vector<std::uint32_t> label(g.order(), 0);
  VertexSet present(g.order());
  for (Vertex i = 0; i < red.graph.order(); ++i) {
    const Vertex orig = stripped.original[red.original[i]];
    label[orig] = search.labels()[i];
    present.insert(orig);
  }
  for (auto it = red.log.rbegin(); it != red.log.rend(); ++it) {
    const Vertex x = stripped.original[it->vertex];
    const Vertex rep = stripped.original[it->representative];
    present.insert(x);
    auto sub = induced_subgraph(g, present);
    std::vector<std::uint32_t> choices{label[rep], 0};
    for (std::uint32_t l = 1; l < nl; ++l) choices.push_back(l);
    bool placed = false;
    for (std::uint32_t l : choices) {
      label[x] = l;
      bool independent = true;
      (g.neighbors(x) & present).for_each([&](Vertex y) { independent = independent && !(label[y] & l); });
      if (!independent) continue;
      std::vector<std::uint32_t> sub_labels;
      for (Vertex v : sub.original) sub_labels.push_back(label[v]);
      if (detail::accepts_labels(sub.graph, sub_labels, k)) {
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("module vertex " + std::to_string(x) + " could not be re-inserted");
  }
  for (Vertex v : isolated) label[v] = 0;

  Witness w = witness_from_labels(g, k, label);
  if (!recognize_partitioned(g, w)) throw std::logic_error("recognize_fpt produced a witness that does not certify");
  res.accepted = true;
  res.witness = std::move(w);
  return res;
}

}  // namespace thw
