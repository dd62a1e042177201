#include "hypcoh/cusped.hpp"

#include <string>

#include "hypcoh/error.hpp"

namespace hypcoh {

Distance level_threshold(unsigned level) { return level >= 31 ? kInfinity - 1 : Distance(1) << level; }

unsigned default_depth(Distance diameter) {
  unsigned k = 0;
  while ((Distance(1) << k) < std::max<Distance>(diameter, 1)) ++k;
  return k + 2;
}

namespace {

Horoball build_horoball(const Graph& y, unsigned depth, std::vector<Vertex> labels) {
  if (y.size() == 0) throw Error(Errc::InvalidArgument, "empty horoball base");
  GeodesicTable t(y);
  if (!t.connected()) throw Error(Errc::DisconnectedBase, "horoball base is not connected");
  Horoball h;
  const std::size_t w = y.size();
  if (labels.empty()) {
    labels.resize(w);
    for (std::size_t i = 0; i < w; ++i) labels[i] = Vertex(i);
  }
  if (labels.size() != w) throw Error(Errc::InvalidArgument, "horoball label count differs from base size");
  h.base = std::move(labels);
  h.depth = depth;
  h.base_metric.resize(w * w);
  for (Vertex i = 0; i < w; ++i)
    for (Vertex j = 0; j < w; ++j) h.base_metric[std::size_t(i) * w + j] = t.dist(i, j);
  std::vector<Edge> edges;
  for (unsigned n = 0; n <= depth; ++n) {
    Distance cap = level_threshold(n);
    for (std::size_t i = 0; i < w; ++i) {
      if (n < depth) edges.emplace_back(h.vertex(i, n), h.vertex(i, n + 1));
      for (std::size_t j = i + 1; j < w; ++j)
        if (h.base_distance(i, j) <= cap) edges.emplace_back(h.vertex(i, n), h.vertex(j, n));
    }
  }
  h.graph = Graph::from_edges(w * (depth + 1), edges);
  return h;
}

InducedSubgraph connected_member(const Graph& g, const SubgraphFamily& family, std::size_t k) {
  InducedSubgraph sub = induced_subgraph(g, family.members[k]);
  if (!GeodesicTable(sub.graph).connected()) {
    std::string msg = "member " + std::to_string(k) + " is not connected";
    if (k < family.truncated.size() && family.truncated[k])
      msg += "; required_radius=" + std::to_string(family.required_radius[k]);
    throw Error(Errc::DisconnectedMember, msg);
  }
  return sub;
}

}  // namespace

Horoball horoball(const Graph& y, unsigned depth, std::vector<Vertex> labels) {
  if (depth == 0) throw Error(Errc::InvalidArgument, "horoball depth must be >= 1");
  return build_horoball(y, depth, std::move(labels));
}

Vertex CuspedSpace::vertex(std::size_t member, std::size_t local, unsigned level) const {
  std::size_t width = horoballs.members[member].size() / (depths[member] + 1);
  return offsets[member] + Vertex(level * width + local);
}

CuspedSpace cusp(const Graph& g, const SubgraphFamily& family, std::optional<unsigned> depth) {
  if (depth && *depth == 0) throw Error(Errc::InvalidArgument, "cusp depth must be >= 1");
  CuspedSpace c;
  c.base_size = g.size();
  std::vector<Edge> edges = g.edges();
  c.origin.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) c.origin[v] = {-1, v, 0};
  std::vector<std::vector<Vertex>> sets;
  Vertex next = Vertex(g.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    InducedSubgraph sub = connected_member(g, family, k);
    unsigned d = depth ? *depth : default_depth(GeodesicTable(sub.graph).diameter());
    Horoball h = build_horoball(sub.graph, d, sub.global);
    c.offsets.push_back(next);
    c.depths.push_back(d);
    for (const auto& [u, v] : h.graph.edges()) edges.emplace_back(next + u, next + v);
    std::vector<Vertex> set;
    for (Vertex v = 0; v < h.graph.size(); ++v) {
      set.push_back(next + v);
      c.origin.push_back({int(k), h.base[h.local(v)], h.level(v)});
    }
    for (std::size_t i = 0; i < h.width(); ++i) edges.emplace_back(h.base[i], next + h.vertex(i, 0));
    sets.push_back(std::move(set));
    next += Vertex(h.graph.size());
  }
  c.graph = Graph::from_edges(next, edges);
  c.horoballs = make_family(next, std::move(sets), true);
  return c;
}

TruncatedPair truncated_pair(const Graph& g, const SubgraphFamily& family) {
  TruncatedPair p;
  std::vector<Edge> edges = g.edges();
  p.origin.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) p.origin[v] = {-1, v, 0};
  std::vector<std::vector<Vertex>> sets;
  Vertex next = Vertex(g.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    InducedSubgraph sub = connected_member(g, family, k);
    for (const auto& [u, v] : sub.graph.edges()) edges.emplace_back(next + u, next + v);
    std::vector<Vertex> set;
    for (Vertex i = 0; i < sub.global.size(); ++i) {
      edges.emplace_back(sub.global[i], next + i);
      set.push_back(next + i);
      p.origin.push_back({int(k), sub.global[i], 0});
    }
    sets.push_back(std::move(set));
    next += Vertex(sub.global.size());
  }
  p.graph = Graph::from_edges(next, edges);
  p.family = make_family(next, std::move(sets), true);
  return p;
}

}  // namespace hypcoh
