#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "thw/graph.hpp"
#include "thw/threshold.hpp"
#include "thw/witness.hpp"

namespace thw {

/// Threshold supergraph H of G on the same vertices whose fill edges are all
/// covered by a witness set.
struct Embedding {
  Graph host;
  Graph h;
  std::vector<Edge> fill;  // E(H) - E(G), u < v
  Witness witness;
};

enum class PartitionedStepKind { Isolated, ProbeUniversal };

struct PartitionedStep {
  Vertex vertex;
  PartitionedStepKind kind;
  friend bool operator==(const PartitionedStep&, const PartitionedStep&) = default;
};

struct RecognitionResult {
  bool accepted = false;
  std::optional<Embedding> embedding;
  std::vector<PartitionedStep> order;
  VertexSet stuck;  // residual on rejection

  explicit operator bool() const { return accepted; }
};

/// Lowest-id ω in `alive` such that every alive non-neighbor shares a witness
/// set with ω.
inline std::optional<Vertex> find_probe_universal(const Graph& g, const Witness& w, const VertexSet& alive) {
  for (Vertex v = alive.first(); v != VertexSet::npos; v = alive.next(v + 1)) {
    VertexSet uncovered = alive - g.closed_neighbors(v);
    if (uncovered.is_subset_of(w.covered_by(v))) return v;
  }
  return std::nullopt;
}

/// Deletes isolated vertices first, otherwise the lowest-id probe universal
/// vertex ω, filling ω to every alive non-neighbor before removing it.
inline RecognitionResult recognize_partitioned(const Graph& g, const Witness& w) {
  if (w.order() != g.order()) throw std::invalid_argument("witness and graph differ in vertex count");
  RecognitionResult r;
  Graph h = g;
  std::vector<Edge> fill;
  VertexSet alive = g.vertices();
  std::vector<VertexSet> cover(g.order());
  for (Vertex v = 0; v < g.order(); ++v) cover[v] = w.covered_by(v);

  while (!alive.empty()) {
    std::optional<Vertex> iso;
    for (Vertex v = alive.first(); v != VertexSet::npos; v = alive.next(v + 1))
      if (!g.neighbors(v).intersects(alive)) {
        iso = v;
        break;
      }
    if (iso) {
      r.order.push_back({*iso, PartitionedStepKind::Isolated});
      alive.erase(*iso);
      continue;
    }
    std::optional<Vertex> omega;
    for (Vertex v = alive.first(); v != VertexSet::npos; v = alive.next(v + 1))
      if ((alive - g.closed_neighbors(v)).is_subset_of(cover[v])) {
        omega = v;
        break;
      }
    if (!omega) {
      r.stuck = alive;
      r.order.clear();
      return r;
    }
    (alive - g.closed_neighbors(*omega)).for_each([&](Vertex z) {
      h.add_edge(*omega, z);
      fill.push_back(*omega < z ? Edge{*omega, z} : Edge{z, *omega});
    });
    r.order.push_back({*omega, PartitionedStepKind::ProbeUniversal});
    alive.erase(*omega);
  }
  std::sort(fill.begin(), fill.end());
  r.accepted = true;
  r.stuck = g.empty_set();
  r.embedding = Embedding{g, std::move(h), std::move(fill), w};
  return r;
}

struct EmbeddingCheck {
  bool ok = true;
  std::string violation;  // empty when ok
  std::optional<Edge> edge;
  std::optional<ForbiddenWitness> pattern;

  explicit operator bool() const { return ok; }
};

/// Checks E(G) ⊆ E(H), H threshold, and every fill edge witness-covered, in
/// that order; reports the first failure.
inline EmbeddingCheck verify_embedding(const Embedding& e) {
  if (e.host.order() != e.h.order() || e.witness.order() != e.host.order())
    throw std::invalid_argument("embedding vertex sets do not match");
  EmbeddingCheck c;
  for (auto edge : e.host.edges())
    if (!e.h.adjacent(edge.first, edge.second)) {
      c.ok = false;
      c.violation = "G edge missing from H";
      c.edge = edge;
      return c;
    }
  if (auto t = is_threshold(e.h); !t) {
    c.ok = false;
    c.violation = "H not threshold";
    c.pattern = t.witness;
    return c;
  }
  for (auto edge : e.h.edges())
    if (!e.host.adjacent(edge.first, edge.second) && !e.witness.covers(edge.first, edge.second)) {
      c.ok = false;
      c.violation = "fill edge not covered by a witness set";
      c.edge = edge;
      return c;
    }
  return c;
}

namespace detail {

/// Allocation-free acceptance test for n <= 64 with labels as bit masks.
inline bool partitioned_accepts(std::span<const std::uint64_t> adj, std::span<const std::uint32_t> labels) {
  const std::size_t n = adj.size();
  std::uint64_t alive = low_mask(n);
  std::uint64_t cover[64];
  for (std::size_t v = 0; v < n; ++v) {
    cover[v] = 0;
    if (labels[v])
      for (std::size_t u = 0; u < n; ++u)
        if (u != v && (labels[u] & labels[v])) cover[v] |= std::uint64_t{1} << u;
  }
  while (alive) {
    bool progressed = false;
    for (std::uint64_t a = alive; a; a &= a - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(a));
      if (!(adj[v] & alive)) {
        alive &= ~(std::uint64_t{1} << v);
        progressed = true;
        break;
      }
    }
    if (progressed) continue;
    for (std::uint64_t a = alive; a; a &= a - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(a));
      std::uint64_t non = alive & ~adj[v] & ~(std::uint64_t{1} << v);
      if ((non & ~cover[v]) == 0) {
        alive &= ~(std::uint64_t{1} << v);
        progressed = true;
        break;
      }
    }
    if (!progressed) return false;
  }
  return true;
}

inline std::vector<std::uint32_t> label_bits(const Witness& w) {
  std::vector<std::uint32_t> out;
  for (const auto& l : w.labels()) out.push_back(l.bits);
  return out;
}

}  // namespace detail

}  // namespace thw
