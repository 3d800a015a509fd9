#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "thw/thw.hpp"

namespace thw::cli {

enum class Format { Graph6, Edges, Dot };

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Format parse_format(const std::string& s) {
  if (s == "g6" || s == "graph6") return Format::Graph6;
  if (s == "edges" || s == "edgelist") return Format::Edges;
  if (s == "dot") return Format::Dot;
  throw UsageError("unknown format '" + s + "' (expected g6, edges or dot)");
}

inline std::optional<Format> format_from_extension(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == "g6" || ext == "graph6") return Format::Graph6;
  if (ext == "edges" || ext == "el" || ext == "txt") return Format::Edges;
  if (ext == "dot" || ext == "gv") return Format::Dot;
  return std::nullopt;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

/// Reads a graph; the format comes from `override`, else the extension, else
/// a sniff (a first line with two numbers is an edge list).
inline Graph load_graph(const std::string& path, const std::string& override_format) {
  const std::string text = read_file(path);
  std::optional<Format> f;
  if (!override_format.empty())
    f = parse_format(override_format);
  else
    f = format_from_extension(path);
  if (!f) {
    std::istringstream in(text);
    std::string first;
    std::getline(in, first);
    f = first.find_first_of(" \t") != std::string::npos ? Format::Edges : Format::Graph6;
  }
  try {
    switch (*f) {
      case Format::Graph6: return graph6::decode(text);
      case Format::Edges: return edge_list::read(text);
      case Format::Dot: throw UsageError("DOT is an output-only format");
    }
  } catch (const FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
  return Graph();
}

inline std::string render(const Graph& g, Format f, const std::vector<Edge>& dashed = {}) {
  switch (f) {
    case Format::Graph6: return graph6::encode(g) + "\n";
    case Format::Edges: return edge_list::write(g);
    case Format::Dot: return dot::write(g, dashed);
  }
  return {};
}

inline std::string join_ids(const VertexSet& s) {
  std::string out;
  s.for_each([&](Vertex v) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  });
  return out;
}

struct Options {
  std::string graph, witness, format, out_format = "g6", out, witness_out, h_out, dot_out;
  std::optional<std::size_t> k;
  std::size_t max_k = 3, max_n = 5, clique_size = 0, n = 0;
  std::uint64_t seed = 0;
  bool verbose = false;
};

inline void emit_embedding(const Options& o, const Embedding& e, std::ostream& out) {
  out << "ACCEPT k=" << e.witness.k() << " fill=" << e.fill.size() << "\n";
  if (!o.witness_out.empty()) write_file(o.witness_out, witness_text::write(e.witness));
  if (!o.h_out.empty()) write_file(o.h_out, graph6::encode(e.h) + "\n");
  if (!o.dot_out.empty()) write_file(o.dot_out, dot::write(e.h, e.fill));
}

inline int do_recognize(const Options& o, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o.graph, o.format);
  if (!o.witness.empty()) {
    Witness w = validate_witness(g, witness_text::read(read_file(o.witness), g.order()));
    if (o.k && *o.k != w.k())
      throw UsageError("--k " + std::to_string(*o.k) + " does not match the witness (" + std::to_string(w.k()) + " sets)");
    auto r = recognize_partitioned(g, w);
    if (!r) {
      out << "REJECT stuck=" << join_ids(r.stuck) << "\n";
      return kNegative;
    }
    if (o.verbose) err << "elimination steps: " << r.order.size() << "\n";
    emit_embedding(o, *r.embedding, out);
    return kOk;
  }
  if (!o.k) throw UsageError("recognize needs --witness or --k");
  auto r = recognize_fpt(g, *o.k);
  if (o.verbose)
    err << "search nodes " << r.stats.nodes << ", greedy " << r.stats.greedy_extensions << ", memo hits "
        << r.stats.memo_hits << ", reduced order " << r.stats.reduced_order << "\n";
  if (!r) {
    out << "REJECT\n";
    return kNegative;
  }
  emit_embedding(o, *recognize_partitioned(g, *r.witness).embedding, out);
  return kOk;
}

inline int do_width(const Options& o, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o.graph, o.format);
  auto r = th_width_exact(g, o.max_k);
  if (r.above_bound()) {
    out << "WIDTH >" << o.max_k << "\n";
    return kNegative;
  }
  out << "WIDTH " << *r.width << "\n";
  if (o.verbose) err << "fill edges: " << r.embedding->fill.size() << "\n";
  if (!o.witness_out.empty()) write_file(o.witness_out, witness_text::write(*r.witness));
  if (!o.h_out.empty()) write_file(o.h_out, graph6::encode(r.embedding->h) + "\n");
  if (!o.dot_out.empty()) write_file(o.dot_out, dot::write(r.embedding->h, r.embedding->fill));
  return kOk;
}

inline int do_twidth(const Options& o, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o.graph, o.format);
  auto r = t_width_exact(g);
  out << "TWIDTH " << r.width << "\n";
  if (o.verbose)
    for (const auto& c : r.cover) err << "clique " << join_ids(c) << "\n";
  return kOk;
}

inline int do_gadget(const Options& o, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o.graph, o.format);
  auto hi = hardness_instance(g, o.clique_size);
  out << render(hi.graph, o.out_format.empty() ? Format::Graph6 : parse_format(o.out_format));
  if (o.verbose) {
    err << "clique";
    for (Vertex c : hi.clique) err << ' ' << c;
    err << "\nomega " << hi.omega << "\n";
  }
  return kOk;
}

inline int do_forbidden(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.k) throw UsageError("forbidden needs --k");
  auto fam = minimal_forbidden(*o.k, o.max_n);
  for (const auto& code : fam.members) out << code << "\n";
  err << "# " << fam.members.size() << " minimal graphs of width > " << fam.k << ", complete up to n=" << fam.nmax
      << "\n";
  return kOk;
}

inline int do_gen(const Options& o, std::ostream& out, std::ostream&) {
  auto inst = gen_kprobe(o.n, o.k.value_or(1), o.seed);
  out << graph6::encode(inst.g) << "\n";
  if (!o.witness_out.empty())
    write_file(o.witness_out, witness_text::write(inst.witness));
  else
    out << witness_text::write(inst.witness);
  if (!o.h_out.empty()) write_file(o.h_out, graph6::encode(inst.h) + "\n");
  return kOk;
}

inline int do_rank(const Options& o, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(o.graph, o.format);
  std::optional<Embedding> e;
  if (!o.witness.empty()) {
    Witness w = validate_witness(g, witness_text::read(read_file(o.witness), g.order()));
    auto r = recognize_partitioned(g, w);
    if (r) e = std::move(r.embedding);
  } else {
    // Smallest k the search accepts, up to --k (default: the search limit).
    const std::size_t kmax = std::min(o.k.value_or(kMaxFptK), kMaxFptK);
    for (std::size_t k = 0; k <= kmax && !e; ++k)
      if (auto f = recognize_fpt(g, k)) e = recognize_partitioned(g, *f.witness).embedding;
  }
  if (!e) {
    out << "REJECT\n";
    return kNegative;
  }
  auto d = embedding_decomposition(*e);
  out << "RANKBOUND " << d.width << "\n";
  if (o.verbose) err << "k=" << e->witness.k() << " bound=" << d.bound << " tree=" << d.decomposition.to_string() << "\n";
  return kOk;
}

inline int do_convert(const Options& o, std::ostream& out, std::ostream&) {
  Graph g = load_graph(o.graph, o.format);
  const std::string text = render(g, parse_format(o.out_format));
  if (!o.out.empty())
    write_file(o.out, text);
  else
    out << text;
  return kOk;
}

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"threshold-width tools", "thw"};
  app.require_subcommand(1);
  Options o;

  auto graph_opt = [&](CLI::App* s, bool required = true) {
    auto* opt = s->add_option("--graph,--in", o.graph, "input graph file");
    if (required) opt->required();
    s->add_option("--format", o.format, "input format override: g6, edges");
    s->add_flag("--verbose,-v", o.verbose, "details on stderr");
  };

  auto* recognize = app.add_subcommand("recognize", "partitioned recognition (--witness) or search (--k)");
  graph_opt(recognize);
  recognize->add_option("--witness", o.witness, "witness file");
  recognize->add_option("--k", o.k, "width bound for the search");
  recognize->add_option("--witness-out", o.witness_out, "write the certifying witness");
  recognize->add_option("--h-out", o.h_out, "write the threshold supergraph as graph6");
  recognize->add_option("--dot", o.dot_out, "write the supergraph as DOT, fill edges dashed");

  auto* width = app.add_subcommand("width", "exact TH-width");
  graph_opt(width);
  width->add_option("--max-k", o.max_k, "largest width tried")->capture_default_str();
  width->add_option("--witness-out", o.witness_out, "write the witness");
  width->add_option("--h-out", o.h_out, "write the threshold supergraph as graph6");
  width->add_option("--dot", o.dot_out, "write the supergraph as DOT, fill edges dashed");

  auto* twidth = app.add_subcommand("twidth", "exact T-width (clique edge cover of the complement)");
  graph_opt(twidth);

  auto* gadget = app.add_subcommand("gadget", "hardness instance: clique joined to G plus ω");
  graph_opt(gadget);
  gadget->add_option("--clique-size", o.clique_size, "clique size")->required()->check(CLI::PositiveNumber);
  gadget->add_option("--out-format", o.out_format, "g6, edges or dot");

  auto* forbidden = app.add_subcommand("forbidden", "minimal graphs of TH-width > k");
  forbidden->add_option("--k", o.k, "width bound")->required();
  forbidden->add_option("--max-n", o.max_n, "largest order scanned")->capture_default_str();
  forbidden->add_flag("--verbose,-v", o.verbose);

  auto* gen = app.add_subcommand("gen", "random k-probe threshold instance");
  gen->add_option("--n", o.n, "vertex count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", o.k, "number of witness sets");
  gen->add_option("--seed", o.seed, "mt19937_64 seed");
  gen->add_option("--witness-out", o.witness_out, "write the witness here instead of stdout");
  gen->add_option("--h-out", o.h_out, "write H as graph6");
  gen->add_flag("--verbose,-v", o.verbose);

  auto* rank = app.add_subcommand("rank", "rank-decomposition width of the embedding caterpillar");
  graph_opt(rank);
  rank->add_option("--witness", o.witness, "witness file");
  rank->add_option("--k", o.k, "largest k searched when no witness is given");

  auto* convert = app.add_subcommand("convert", "format translation");
  graph_opt(convert);
  convert->add_option("--out-format", o.out_format, "g6, edges or dot")->required();
  convert->add_option("--out", o.out, "output file (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    msg.erase(std::remove(msg.begin(), msg.end(), '\n'), msg.end());
    err << "error: " << msg << "\n";
    return kUsage;
  }

  try {
    if (recognize->parsed()) return do_recognize(o, out, err);
    if (width->parsed()) return do_width(o, out, err);
    if (twidth->parsed()) return do_twidth(o, out, err);
    if (gadget->parsed()) return do_gadget(o, out, err);
    if (forbidden->parsed()) return do_forbidden(o, out, err);
    if (gen->parsed()) return do_gen(o, out, err);
    if (rank->parsed()) return do_rank(o, out, err);
    if (convert->parsed()) return do_convert(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace thw::cli
