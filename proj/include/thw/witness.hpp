#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thw/graph.hpp"
#include "thw/graph_io.hpp"

namespace thw {

inline constexpr std::size_t kMaxWitnessSets = 16;

/// Membership vector of one vertex over the witness sets; bit i is set iff
/// the vertex lies in set i.
struct Label {
  std::uint32_t bits = 0;
  std::size_t k = 0;

  bool is_probe() const { return bits == 0; }
  bool has(std::size_t i) const { return bits >> i & 1U; }
  std::size_t popcount() const { return static_cast<std::size_t>(std::popcount(bits)); }
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < k; ++i) s += has(i) ? '1' : '0';
    return s;
  }
  friend bool operator==(const Label&, const Label&) = default;
};

enum class LabelOrder { Leq, Geq, Equal, Incomparable };

struct LabelComparison {
  LabelOrder order;
  bool perp;  // no shared 1-bit
};

inline LabelComparison label_compare(const Label& a, const Label& b) {
  if (a.k != b.k) throw std::invalid_argument("label length mismatch");
  const bool le = (a.bits & ~b.bits) == 0;
  const bool ge = (b.bits & ~a.bits) == 0;
  LabelOrder o = le && ge ? LabelOrder::Equal : le ? LabelOrder::Leq : ge ? LabelOrder::Geq : LabelOrder::Incomparable;
  return {o, (a.bits & b.bits) == 0};
}

/// Set `set_index` (0-based) contains the edge (x, y).
class IndependenceError : public std::invalid_argument {
 public:
  IndependenceError(std::size_t set_index, Vertex x, Vertex y)
      : std::invalid_argument("witness set " + std::to_string(set_index) + " contains edge (" +
                              std::to_string(x) + "," + std::to_string(y) + ")"),
        set_index(set_index),
        x(x),
        y(y) {}
  std::size_t set_index;
  Vertex x, y;
};

/// Ordered collection of independent sets over a host graph. Sets may
/// overlap or repeat; k counts them as given.
class Witness {
 public:
  Witness() = default;

  std::size_t k() const { return sets_.size(); }
  std::size_t order() const { return labels_.size(); }
  const std::vector<VertexSet>& sets() const { return sets_; }
  const VertexSet& set(std::size_t i) const { return sets_.at(i); }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(Vertex v) const { return labels_.at(v); }
  const VertexSet& probes() const { return probes_; }

  /// Vertices sharing at least one set with v, excluding v.
  VertexSet covered_by(Vertex v) const {
    VertexSet s(order());
    for (std::size_t i = 0; i < sets_.size(); ++i)
      if (sets_[i].contains(v)) s |= sets_[i];
    s.erase(v);
    return s;
  }
  bool covers(Vertex x, Vertex y) const { return (labels_.at(x).bits & labels_.at(y).bits) != 0; }

  friend Witness validate_witness(const Graph& g, std::vector<VertexSet> sets);

 private:
  std::vector<VertexSet> sets_;
  std::vector<Label> labels_;
  VertexSet probes_;
};

inline Witness validate_witness(const Graph& g, std::vector<VertexSet> sets) {
  if (sets.size() > kMaxWitnessSets)
    throw std::invalid_argument("at most " + std::to_string(kMaxWitnessSets) + " witness sets supported");
  const std::size_t n = g.order();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].universe() != n) {
      VertexSet resized(n);
      sets[i].for_each([&](Vertex v) { resized.insert(v); });
      sets[i] = std::move(resized);
    }
    for (Vertex x = sets[i].first(); x != VertexSet::npos; x = sets[i].next(x + 1)) {
      VertexSet bad = g.neighbors(x) & sets[i];
      Vertex y = bad.next(x + 1);
      if (y != VertexSet::npos) throw IndependenceError(i, x, y);
    }
  }
  Witness w;
  w.sets_ = std::move(sets);
  w.labels_.assign(n, Label{0, w.sets_.size()});
  for (std::size_t i = 0; i < w.sets_.size(); ++i)
    w.sets_[i].for_each([&](Vertex v) { w.labels_[v].bits |= std::uint32_t{1} << i; });
  w.probes_ = VertexSet(n);
  for (Vertex v = 0; v < n; ++v)
    if (w.labels_[v].is_probe()) w.probes_.insert(v);
  return w;
}

/// Builds the witness whose set i is {v : bit i of labels[v]}.
inline Witness witness_from_labels(const Graph& g, std::size_t k, const std::vector<std::uint32_t>& labels) {
  std::vector<VertexSet> sets(k, VertexSet(g.order()));
  for (Vertex v = 0; v < labels.size(); ++v)
    for (std::size_t i = 0; i < k; ++i)
      if (labels[v] >> i & 1U) sets[i].insert(v);
  return validate_witness(g, std::move(sets));
}

/// Adds x to set i whenever x has no neighbor in set i, scanning vertices in
/// ascending id and sets in ascending index, until nothing changes.
inline Witness well_link(const Graph& g, const Witness& w) {
  std::vector<VertexSet> sets = w.sets();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex x = 0; x < g.order(); ++x)
      for (auto& s : sets)
        if (!s.contains(x) && !g.neighbors(x).intersects(s)) {
          s.insert(x);
          changed = true;
        }
  }
  return validate_witness(g, std::move(sets));
}

inline bool is_well_linked(const Graph& g, const Witness& w) {
  for (const auto& s : w.sets())
    for (Vertex x = 0; x < g.order(); ++x)
      if (!s.contains(x) && !g.neighbors(x).intersects(s)) return false;
  return true;
}

namespace witness_text {

/// Line 1 "k n"; then k lines of space-separated ids (blank line = empty set).
inline std::string write(const Witness& w) {
  std::ostringstream os;
  os << w.k() << ' ' << w.order() << '\n';
  for (const auto& s : w.sets()) {
    bool first = true;
    s.for_each([&](Vertex v) {
      os << (first ? "" : " ") << v;
      first = false;
    });
    os << '\n';
  }
  return os.str();
}

/// Parses the set lists; independence is checked by validate_witness.
inline std::vector<VertexSet> read(std::string_view text, std::size_t expected_order) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw FormatError("missing witness header \"k n\"", 1);
  ++lineno;
  std::istringstream hs(line);
  long long k = 0, n = 0;
  std::string extra;
  if (!(hs >> k >> n) || (hs >> extra) || k < 0 || n < 0) throw FormatError("bad witness header", lineno);
  if (static_cast<std::size_t>(n) != expected_order)
    throw FormatError("witness is for " + std::to_string(n) + " vertices, graph has " +
                          std::to_string(expected_order),
                      lineno);
  std::vector<VertexSet> sets;
  for (long long i = 0; i < k; ++i) {
    if (!std::getline(in, line)) {
      // A missing final line after a trailing newline is an empty set.
      if (i == k - 1 && !text.empty() && text.back() == '\n') {
        sets.emplace_back(static_cast<std::size_t>(n));
        break;
      }
      throw FormatError("expected " + std::to_string(k) + " set lines", lineno + 1);
    }
    ++lineno;
    VertexSet s(static_cast<std::size_t>(n));
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v < 0 || v >= n) throw FormatError("bad vertex id '" + tok + "'", lineno);
      s.insert(static_cast<Vertex>(v));
    }
    sets.push_back(std::move(s));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw FormatError("unexpected content after witness sets", lineno);
  }
  return sets;
}

}  // namespace witness_text

}  // namespace thw
