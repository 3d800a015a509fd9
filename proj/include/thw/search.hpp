#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "thw/canonical.hpp"
#include "thw/graph.hpp"
#include "thw/oracle.hpp"
#include "thw/threshold.hpp"
#include "thw/witness.hpp"

namespace thw {

/// Minimal graphs of TH-width > k on at most nmax vertices, as canonical
/// graph6 codes. Complete up to nmax only.
struct ForbiddenFamily {
  std::size_t k = 0;
  std::size_t nmax = 0;
  std::vector<std::string> members;  // sorted
};

inline ForbiddenFamily minimal_forbidden(std::size_t k, std::size_t nmax) {
  if (nmax > kMaxEnumerationOrder)
    throw std::length_error("minimal_forbidden supports nmax <= " + std::to_string(kMaxEnumerationOrder));
  if (k * nmax > kMaxLabelBits) throw std::length_error("minimal_forbidden: k*nmax exceeds the oracle bound");
  ForbiddenFamily fam{k, nmax, {}};
  std::set<std::string> bad_prev;  // canonical codes of width > k one level down
  for (std::size_t n = 0; n <= nmax; ++n) {
    std::set<std::string> bad;
    for (const Graph& g : enumerate_nonisomorphic(n)) {
      bool has_bad_child = false;
      for (Vertex x = 0; x < n && !has_bad_child; ++x)
        has_bad_child = bad_prev.count(canonical_code(delete_vertex(g, x).graph)) > 0;
      const std::string code = canonical_code(g);
      if (has_bad_child) {
        bad.insert(code);
        continue;
      }
      if (th_width_exact(g, k).above_bound()) {
        bad.insert(code);
        fam.members.push_back(code);
      }
    }
    bad_prev = std::move(bad);
  }
  std::sort(fam.members.begin(), fam.members.end());
  return fam;
}

/// Random graph of TH-width <= k with its certifying witness.
struct KProbeInstance {
  Graph g;
  Witness witness;
  Graph h;  // threshold graph the instance was cut from
};

/// H = random_threshold(n, seed); then k subsets, vertex v joining subset i
/// iff the top bit of the next std::mt19937_64 output (same stream, after the
/// n-1 tag draws) is set; finally every H-edge inside a subset is deleted.
inline KProbeInstance gen_kprobe(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gen_kprobe requires n >= 1");
  if (k > kMaxWitnessSets) throw std::invalid_argument("gen_kprobe: too many witness sets");
  std::mt19937_64 rng(seed);
  Graph h = threshold_from_sequence(random_tags(n - 1, rng));
  std::vector<VertexSet> sets(k, VertexSet(n));
  for (auto& s : sets)
    for (Vertex v = 0; v < n; ++v)
      if (rng() >> 63) s.insert(v);
  Graph g = h;
  for (auto [u, v] : h.edges())
    for (const auto& s : sets)
      if (s.contains(u) && s.contains(v)) {
        g.remove_edge(u, v);
        break;
      }
  Witness w = validate_witness(g, std::move(sets));
  return {std::move(g), std::move(w), std::move(h)};
}

}  // namespace thw
