#ifndef CFL_GRAPH_IO_HPP
#define CFL_GRAPH_IO_HPP

// Plain-text graph files:
//
//   n m
//   u v        (m lines, 0 <= u < v < n)
//
// The weighted variant adds a third column "u v w" with w in [0,1].
// Writers emit edges in canonical order and weights in shortest
// round-trip decimal form, so parse -> write reproduces a written file
// byte for byte.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cfl/error.hpp"
#include "cfl/graph.hpp"

namespace cfl {

namespace io_detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw InputError("line " + std::to_string(line_no) + ": malformed " + what + " '" +
                     std::string(field) + "'");
  return value;
}

inline std::string format_weight(double w) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, ptr);
}

struct ParsedFile {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;
  bool weighted = false;
};

inline ParsedFile parse(std::istream& in, bool expect_weights) {
  ParsedFile out;
  out.weighted = expect_weights;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError("line 1: missing header 'n m'");
  ++line_no;
  auto header = split_fields(line);
  if (header.size() != 2) throw InputError("line 1: header must be 'n m'");
  out.n = parse_field<int>(header[0], line_no, "vertex count");
  const long m = parse_field<long>(header[1], line_no, "edge count");
  if (out.n < 0 || m < 0) throw InputError("line 1: counts must be non-negative");
  const std::size_t fields = expect_weights ? 3 : 2;
  struct Row {
    Edge e;
    double w;
    std::size_t line;
  };
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(m));
  while (std::getline(in, line)) {
    ++line_no;
    auto f = split_fields(line);
    if (f.empty()) continue;
    if (f.size() != fields)
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(fields) + " fields, got " + std::to_string(f.size()));
    const int u = parse_field<int>(f[0], line_no, "vertex");
    const int v = parse_field<int>(f[1], line_no, "vertex");
    if (!(0 <= u && u < v && v < out.n))
      throw InputError("line " + std::to_string(line_no) + ": need 0 <= u < v < n");
    double w = 1.0;
    if (expect_weights) {
      w = parse_field<double>(f[2], line_no, "weight");
      if (!(w >= 0.0 && w <= 1.0))
        throw InputError("line " + std::to_string(line_no) + ": weight outside [0,1]");
    }
    rows.push_back({{u, v}, w, line_no});
  }
  if (static_cast<long>(rows.size()) != m)
    throw InputError("line " + std::to_string(line_no) + ": header declares " + std::to_string(m) +
                     " edges, file has " + std::to_string(rows.size()));
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.e < b.e || (a.e == b.e && a.line < b.line); });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].e == rows[i - 1].e)
      throw InputError("line " + std::to_string(rows[i].line) + ": duplicate edge " +
                       std::to_string(rows[i].e.u) + " " + std::to_string(rows[i].e.v));
  for (const auto& row : rows) {
    out.edges.push_back(row.e);
    out.weights.push_back(row.w);
  }
  return out;
}

}  // namespace io_detail

inline Graph read_graph(std::istream& in) {
  auto parsed = io_detail::parse(in, false);
  return Graph(parsed.n, std::move(parsed.edges));
}

inline WeightedGraph read_weighted_graph(std::istream& in) {
  auto parsed = io_detail::parse(in, true);
  return WeightedGraph(Graph(parsed.n, std::move(parsed.edges)), std::move(parsed.weights));
}

/// Reads either variant, deciding by the column count of the first edge
/// line. Unweighted files get w = 1.
inline WeightedGraph read_any_graph(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  bool weighted = false;
  std::istringstream probe(text);
  std::string line;
  std::getline(probe, line);
  while (std::getline(probe, line)) {
    const auto f = io_detail::split_fields(line);
    if (f.empty()) continue;
    weighted = f.size() == 3;
    break;
  }
  std::istringstream again(text);
  if (weighted) return read_weighted_graph(again);
  return WeightedGraph::uniform(read_graph(again), 1.0);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void write_weighted_graph(std::ostream& out, const WeightedGraph& wg) {
  const Graph& g = wg.graph();
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const auto& e = g.edge(id);
    out << e.u << ' ' << e.v << ' ' << io_detail::format_weight(wg.weight(id)) << '\n';
  }
}

inline std::string graph_to_string(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

inline Graph graph_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_graph(is);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Writes through a sibling temporary file and a rename, so readers never
/// see a partial file.
inline void write_text_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out << bytes;
    if (!out.flush()) throw InputError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

inline Graph read_graph_file(const std::string& path) { return graph_from_string(read_text_file(path)); }

inline WeightedGraph read_any_graph_file(const std::string& path) {
  std::istringstream is(read_text_file(path));
  return read_any_graph(is);
}

inline void write_graph_file(const std::string& path, const Graph& g) {
  write_text_file_atomic(path, graph_to_string(g));
}

}  // namespace cfl

#endif  // CFL_GRAPH_IO_HPP
