#include "hypcoh/decomposition.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "hypcoh/error.hpp"

namespace hypcoh {

Chain PathDecomposition::recombine() const {
  Chain c(1);
  for (const auto& [a, p] : open_paths) c.add(path_chain(p), a);
  for (const auto& [a, p] : closed_paths) c.add(path_chain(p), a);
  for (const auto& [a, x] : diagonal_terms) c.add(Tuple{x, x}, a);
  for (const auto& [a, e] : reversal_pairs) {
    c.add(Tuple{e.first, e.second}, a);
    c.add(Tuple{e.second, e.first}, a);
  }
  return c;
}

Rational PathDecomposition::path_mass() const {
  Rational s = 0;
  for (const auto& [a, p] : open_paths) s += abs(a) * long(p.size() - 1);
  for (const auto& [a, p] : closed_paths) s += abs(a) * long(p.size() - 1);
  for (const auto& [a, x] : diagonal_terms) s += abs(a);
  return s;
}

Rational PathDecomposition::reversal_mass() const {
  Rational s = 0;
  for (const auto& [a, e] : reversal_pairs) s += abs(a);
  return s;
}

bool PathDecomposition::all_integer() const {
  auto integral = [](const Rational& q) { return q.get_den() == 1; };
  for (const auto& [a, p] : open_paths)
    if (!integral(a)) return false;
  for (const auto& [a, p] : closed_paths)
    if (!integral(a)) return false;
  for (const auto& [a, x] : diagonal_terms)
    if (!integral(a)) return false;
  for (const auto& [a, e] : reversal_pairs)
    if (!integral(a)) return false;
  return true;
}

namespace {

// Nonnegative arc weights with per-vertex excess out - in.
struct Flow {
  std::map<Vertex, std::map<Vertex, Rational>> out;
  std::map<Vertex, Rational> excess;

  void add(Vertex u, Vertex v, const Rational& w) {
    out[u][v] += w;
    excess[u] += w;
    excess[v] -= w;
  }

  void remove(Vertex u, Vertex v, const Rational& w) {
    auto& row = out[u];
    row[v] -= w;
    if (sgn(row[v]) == 0) row.erase(v);
    if (row.empty()) out.erase(u);
    excess[u] -= w;
    excess[v] += w;
  }

  std::optional<Vertex> first_arc(Vertex u) const {
    auto it = out.find(u);
    if (it == out.end() || it->second.empty()) return std::nullopt;
    return it->second.begin()->first;
  }

  Rational weight(Vertex u, Vertex v) const { return out.at(u).at(v); }

  Rational excess_of(Vertex v) const {
    auto it = excess.find(v);
    return it == excess.end() ? Rational(0) : it->second;
  }
};

// Walks arcs from `start` until a vertex with negative excess is reached
// (open path) or a vertex repeats (cycle). Returns the walk.
std::vector<Vertex> walk(const Flow& f, Vertex start, bool stop_at_sink) {
  std::vector<Vertex> path{start};
  std::map<Vertex, std::size_t> pos{{start, 0}};
  for (;;) {
    Vertex u = path.back();
    if (stop_at_sink && path.size() > 1 && sgn(f.excess_of(u)) < 0) return path;
    std::optional<Vertex> v = f.first_arc(u);
    if (!v) throw Error(Errc::Internal, "flow walk got stuck");
    auto it = pos.find(*v);
    if (it != pos.end()) {
      std::vector<Vertex> cyc(path.begin() + long(it->second), path.end());
      cyc.push_back(*v);
      return cyc;
    }
    pos.emplace(*v, path.size());
    path.push_back(*v);
  }
}

Rational bottleneck(const Flow& f, const std::vector<Vertex>& p) {
  Rational m = f.weight(p[0], p[1]);
  for (std::size_t i = 2; i < p.size(); ++i) m = std::min(m, f.weight(p[i - 1], p[i]));
  return m;
}

}  // namespace

PathDecomposition decompose(const Chain& c, const std::vector<Vertex>& T, const GeodesicTable* t) {
  if (c.degree() != 1) throw Error(Errc::InvalidArgument, "decompose expects a 1-chain");
  std::set<Vertex> tset(T.begin(), T.end());
  Chain bd = boundary(c);
  for (const auto& [v, a] : bd.terms())
    if (!tset.count(v[0])) throw Error(Errc::BoundaryOffT, "boundary has vertex " + std::to_string(v[0]) + " outside T");

  PathDecomposition d;
  Flow f;
  for (const auto& [tp, a] : c.terms()) {
    Vertex x = tp[0], y = tp[1];
    if (t && (x >= t->size() || y >= t->size() || t->dist(x, y) > 1))
      throw Error(Errc::NotC11, "pair " + to_string(tp) + " is not an edge or a diagonal");
    if (x == y) {
      d.diagonal_terms.emplace_back(a, x);
    } else if (sgn(a) > 0) {
      f.add(x, y, a);
    } else {
      // a (x,y) = |a| (y,x) + a [(x,y) + (y,x)]
      f.add(y, x, Rational(-a));
      d.reversal_pairs.emplace_back(a, Edge{x, y});
    }
  }

  // Open paths from positive-excess vertices to negative-excess vertices.
  for (;;) {
    std::optional<Vertex> source;
    for (const auto& [v, e] : f.excess)
      if (sgn(e) > 0) {
        source = v;
        break;
      }
    if (!source) break;
    std::vector<Vertex> p = walk(f, *source, true);
    Rational w = bottleneck(f, p);
    if (p.front() != p.back()) {
      w = std::min({w, f.excess_of(p.front()), Rational(-f.excess_of(p.back()))});
      d.open_paths.emplace_back(w, p);
    } else {
      d.closed_paths.emplace_back(w, p);
    }
    for (std::size_t i = 1; i < p.size(); ++i) f.remove(p[i - 1], p[i], w);
  }
  // What is left is a circulation.
  while (!f.out.empty()) {
    Vertex start = f.out.begin()->first;
    std::vector<Vertex> p = walk(f, start, false);
    Rational w = bottleneck(f, p);
    d.closed_paths.emplace_back(w, p);
    for (std::size_t i = 1; i < p.size(); ++i) f.remove(p[i - 1], p[i], w);
  }
  return d;
}

C11Reduction reduce_to_C11(const Graph& g, const GeodesicTable& t, const Chain& c, unsigned R) {
  if (c.degree() != 1) throw Error(Errc::InvalidArgument, "reduce_to_C11 expects a 1-chain");
  if (t.size() != g.size()) throw Error(Errc::InvalidArgument, "geodesic table does not match graph");
  C11Reduction out;
  for (const auto& [tp, a] : c.terms()) {
    Vertex x = tp[0], y = tp[1];
    if (x >= g.size() || y >= g.size()) throw Error(Errc::VertexOutOfRange, "chain vertex out of range");
    Distance d = t.dist(x, y);
    if (d == kInfinity) throw Error(Errc::Disconnected, "pair " + to_string(tp) + " spans two components");
    if (d > R) throw Error(Errc::InvalidArgument, "pair " + to_string(tp) + " has diameter above R");
    if (d <= 1) {
      out.c_prime.add(tp, a);
      continue;
    }
    std::vector<Vertex> p = t.geodesic(x, y);
    out.c_prime.add(path_chain(p), a);
    out.b.add(tp, a);
    out.b.add(path_chain(p), Rational(-a));
    Vertex p0 = p[0];
    out.witness.add(Tuple{p0, p0, p0}, a);
    for (std::size_t j = 1; j < p.size(); ++j) out.witness.add(Tuple{p0, p[j - 1], p[j]}, Rational(-a));
  }
  return out;
}

}  // namespace hypcoh
