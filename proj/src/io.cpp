#include "hypcoh/io.hpp"

#include <fstream>
#include <sstream>

#include "hypcoh/error.hpp"

namespace hypcoh {

namespace {

// Non-empty lines with comments stripped, split into words.
struct Lines {
  std::istringstream in;
  std::size_t lineno = 0;
  std::string kind;

  Lines(const std::string& text, std::string k) : in(text), kind(std::move(k)) {}

  bool next(std::vector<std::string>& tok) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tok.clear();
      for (std::string w; ls >> w;) tok.push_back(w);
      if (!tok.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, kind + " line " + std::to_string(lineno) + ": " + why);
  }

  unsigned long number(const std::string& s) const {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(s, &used);
      if (used == s.size() && s[0] != '-') return v;
    } catch (const std::logic_error&) {
    }
    fail("bad number '" + s + "'");
  }

  Vertex vertex(const std::string& s, std::size_t n) const {
    unsigned long v = number(s);
    if (v >= n) fail("vertex " + s + " out of range");
    return Vertex(v);
  }
};

}  // namespace

Graph parse_graph(const std::string& text) {
  Lines in(text, "graph");
  std::vector<std::string> tok;
  if (!in.next(tok)) throw Error(Errc::ParseError, "graph: empty file");
  if (tok.size() != 2 || tok[0] != "graph") in.fail("expected 'graph <n>'");
  std::size_t n = in.number(tok[1]);
  std::vector<Edge> edges;
  while (in.next(tok)) {
    if (tok.size() != 2) in.fail("expected 'u v'");
    Vertex u = in.vertex(tok[0], n), v = in.vertex(tok[1], n);
    if (u == v) in.fail("self-loop at " + tok[0]);
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.size() << "\n";
  for (const Edge& e : g.edges()) out << e.first << " " << e.second << "\n";
  return out.str();
}

SubgraphFamily parse_family(const std::string& text, std::size_t vertices) {
  Lines in(text, "family");
  std::vector<std::string> tok;
  std::vector<std::vector<Vertex>> members;
  while (in.next(tok)) {
    std::vector<Vertex> m;
    for (const auto& s : tok) m.push_back(in.vertex(s, vertices));
    members.push_back(std::move(m));
  }
  bool disjoint = pairwise_disjoint(members);
  return make_family(vertices, std::move(members), disjoint);
}

std::string format_family(const SubgraphFamily& family) {
  std::ostringstream out;
  for (const auto& m : family.members) {
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m[i];
    out << "\n";
  }
  return out.str();
}

Chain parse_chain(const std::string& text, std::size_t vertices) {
  Lines in(text, "chain");
  std::vector<std::string> tok;
  if (!in.next(tok)) throw Error(Errc::ParseError, "chain: empty file");
  if (tok.size() != 2 || tok[0] != "chain") in.fail("expected 'chain <degree>'");
  unsigned long degree = in.number(tok[1]);
  if (degree > 2) in.fail("degree must be 0, 1 or 2");
  Chain c{int(degree)};
  const std::size_t k = degree + 1;
  while (in.next(tok)) {
    if (tok.size() != k + 1) in.fail("expected a coefficient and " + std::to_string(k) + " vertices");
    Rational q;
    try {
      q = parse_rational(tok[0]);
    } catch (const Error&) {
      in.fail("bad coefficient '" + tok[0] + "'");
    }
    Vertex vs[3];
    for (std::size_t i = 0; i < k; ++i) vs[i] = in.vertex(tok[i + 1], vertices);
    c.add(Tuple::from(vs, k), q);
  }
  return c;
}

std::string format_chain(const Chain& c) {
  std::ostringstream out;
  out << "chain " << c.degree() << "\n";
  for (const auto& [t, q] : c.terms()) {
    out << to_string(q);
    for (Vertex v : t) out << " " << v;
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace hypcoh
