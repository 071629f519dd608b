#include "mkstar/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace mkstar {

namespace {

Error parse_error(ErrorKind kind, std::size_t line, const std::string& reason) {
  Error err(kind, "line " + std::to_string(line) + ": " + reason);
  err.line = line;
  return err;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    f(++number, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw parse_error(ErrorKind::ParseError, line, "expected a vertex index, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_real(std::string_view tok, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    throw parse_error(ErrorKind::ParseError, line, "expected a real number, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Graph parse_graph_file(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, double>> masses;
  std::set<std::pair<Vertex, Vertex>> seen;

  for_each_line(text, [&](std::size_t line, std::string_view raw) {
    const auto tok = tokens(raw);
    if (tok.empty()) return;
    if (!n) {
      if (tok.size() != 2 || tok[0] != "n") {
        throw parse_error(ErrorKind::ParseError, line, "expected header 'n <count>'");
      }
      n = parse_index(tok[1], line);
      return;
    }
    if (tok[0] == "n") throw parse_error(ErrorKind::ParseError, line, "duplicate header");
    if (tok[0] == "m") {
      if (tok.size() != 3) throw parse_error(ErrorKind::ParseError, line, "expected 'm <v> <value>'");
      const auto v = parse_index(tok[1], line);
      const double value = parse_real(tok[2], line);
      if (v >= *n) throw parse_error(ErrorKind::IndexOutOfRange, line, "mass vertex out of range");
      if (!(value > 0.0)) throw parse_error(ErrorKind::InvalidMass, line, "mass must be positive");
      masses.emplace_back(v, value);
      return;
    }
    if (tok.size() != 3) throw parse_error(ErrorKind::ParseError, line, "expected '<u> <v> <w>'");
    Edge e{parse_index(tok[0], line), parse_index(tok[1], line), parse_real(tok[2], line)};
    if (e.u >= *n || e.v >= *n) throw parse_error(ErrorKind::IndexOutOfRange, line, "vertex index out of range");
    if (e.u == e.v) throw parse_error(ErrorKind::SelfLoop, line, "self-loop");
    if (!(e.w > 0.0)) throw parse_error(ErrorKind::NonPositiveWeight, line, "weight must be positive");
    if (!seen.insert(std::minmax(e.u, e.v)).second) {
      throw parse_error(ErrorKind::DuplicateEdge, line, "duplicate edge");
    }
    edges.push_back(e);
  });
  if (!n) throw parse_error(ErrorKind::ParseError, 1, "missing header 'n <count>'");

  Graph g = Graph::build(*n, std::move(edges));
  if (masses.empty()) return g;
  std::vector<double> mass(*n, 1.0);
  for (const auto& [v, value] : masses) mass[v] = value;
  return g.with_mass(std::move(mass));
}

std::string write_graph_file(const Graph& g) {
  std::ostringstream os;
  os << "n " << g.order() << "\n";
  for (const auto& e : g.edges()) os << e.u << " " << e.v << " " << format_number(e.w) << "\n";
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.mass()[v] != 1.0) os << "m " << v << " " << format_number(g.mass()[v]) << "\n";
  }
  return os.str();
}

LDependentCandidate parse_partition_file(std::string_view text) {
  LDependentCandidate c;
  for_each_line(text, [&](std::size_t line, std::string_view raw) {
    const auto tok = tokens(raw);
    if (tok.empty()) return;
    std::vector<Vertex>* target = nullptr;
    if (tok[0] == "v1") target = &c.v1;
    if (tok[0] == "v2") target = &c.v2;
    if (tok[0] == "v3") target = &c.v3;
    if (target == nullptr) {
      throw parse_error(ErrorKind::ParseError, line, "expected 'v1', 'v2' or 'v3'");
    }
    for (std::size_t i = 1; i < tok.size(); ++i) target->push_back(parse_index(tok[i], line));
  });
  return c;
}

std::string emit_dot(const Graph& g, const std::optional<Partition>& p) {
  std::ostringstream os;
  os << "graph G {\n";
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<std::string> attrs;
    if (g.mass()[v] != 1.0) {
      attrs.push_back("label=\"" + std::to_string(v) + " (m=" + format_number(g.mass()[v]) + ")\"");
    }
    if (p) {
      attrs.push_back("style=filled");
      attrs.push_back("colorscheme=set312");
      attrs.push_back("fillcolor=" + std::to_string(p->labels.at(v) % 12 + 1));
    }
    os << "  " << v;
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
      os << "]";
    }
    os << ";\n";
  }
  for (const auto& e : g.edges()) {
    os << "  " << e.u << " -- " << e.v << " [label=\"" << format_number(e.w) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace mkstar
