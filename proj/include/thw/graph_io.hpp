#pragma once

#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thw/graph.hpp"

namespace thw {

/// Malformed graph or witness text. `position` is a byte offset for graph6
/// input and a 1-based line number for the line-oriented formats.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace graph6 {

inline constexpr std::size_t kMaxOrder = 62;

inline std::size_t payload_bytes(std::size_t n) { return (n * (n - (n > 0)) / 2 + 5) / 6; }

/// Upper-triangle bits in column order x(0,1), x(0,2), x(1,2), x(0,3), ...
inline std::string encode(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kMaxOrder) throw std::length_error("graph6 encoding supports at most 62 vertices");
  std::string out(1, static_cast<char>(n + 63));
  int filled = 0;
  unsigned acc = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  if (filled) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

inline Graph decode(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  std::size_t base = 0;
  if (text.starts_with(header)) {
    text.remove_prefix(header.size());
    base = header.size();
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  if (text.empty()) throw FormatError("empty graph6 string", base);

  for (std::size_t i = 0; i < text.size(); ++i) {
    auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126)
      throw FormatError("graph6 byte " + std::to_string(c) + " outside [63,126]", base + i);
  }
  const auto first = static_cast<unsigned char>(text[0]);
  if (first == 126) throw FormatError("graph6 orders above 62 are not supported", base);
  const std::size_t n = first - 63u;
  const std::size_t need = payload_bytes(n);
  if (text.size() - 1 < need)
    throw FormatError("truncated graph6 payload: expected " + std::to_string(need) + " bytes",
                      base + text.size());
  if (text.size() - 1 > need) throw FormatError("trailing bytes after graph6 payload", base + 1 + need);

  Graph g(n);
  std::size_t bit = 0;
  auto bit_at = [&](std::size_t b) {
    auto byte = static_cast<unsigned>(static_cast<unsigned char>(text[1 + b / 6]) - 63u);
    return (byte >> (5 - b % 6)) & 1U;
  };
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++bit)
      if (bit_at(bit)) g.add_edge(i, j);
  for (; bit < need * 6; ++bit)
    if (bit_at(bit)) throw FormatError("nonzero graph6 padding bits", base + 1 + bit / 6);
  return g;
}

}  // namespace graph6

namespace edge_list {

/// First line "n m", then m lines "u v" with 0 <= u < v < n.
inline std::string write(const Graph& g) {
  std::ostringstream os;
  auto es = g.edges();
  os << g.order() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph read(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto parse_pair = [&](long long& a, long long& b) {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra)) throw FormatError("expected two integers", lineno);
  };

  if (!next_line()) throw FormatError("missing header line \"n m\"", lineno + 1);
  long long n = 0, m = 0;
  parse_pair(n, m);
  if (n < 0 || m < 0) throw FormatError("negative vertex or edge count", lineno);
  Graph g(static_cast<std::size_t>(n));
  for (long long e = 0; e < m; ++e) {
    if (!next_line()) throw FormatError("expected " + std::to_string(m) + " edge lines", lineno + 1);
    long long u = 0, v = 0;
    parse_pair(u, v);
    if (u < 0 || v >= n || u >= v) throw FormatError("edge must satisfy 0 <= u < v < n", lineno);
    if (g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      throw FormatError("duplicate edge", lineno);
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_line()) throw FormatError("unexpected content after edge list", lineno);
  return g;
}

}  // namespace edge_list

namespace dot {

/// Undirected DOT; edges listed in `dashed` are drawn with style=dashed.
inline std::string write(const Graph& g, const std::vector<Edge>& dashed = {}) {
  std::set<Edge> fill;
  for (auto [u, v] : dashed) fill.insert(u < v ? Edge{u, v} : Edge{v, u});
  std::ostringstream os;
  os << "graph G {\n";
  for (Vertex v = 0; v < g.order(); ++v) os << "  " << v << ";\n";
  for (auto e : g.edges()) {
    os << "  " << e.first << " -- " << e.second;
    if (fill.count(e)) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dot

}  // namespace thw
