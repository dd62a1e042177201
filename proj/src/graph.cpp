#include "hypcoh/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

#include "hypcoh/error.hpp"

namespace hypcoh {

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw Error(Errc::VertexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with n=" + std::to_string(n));
    if (u == v) throw Error(Errc::SelfLoop, "edge (" + std::to_string(u) + "," + std::to_string(u) + ")");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& a : g.adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

std::size_t Graph::edge_count() const {
  std::size_t s = 0;
  for (const auto& a : adj_) s += a.size();
  return s / 2;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= adj_.size()) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

GeodesicTable::GeodesicTable(const Graph& g)
    : n_(g.size()), dist_(n_ * n_, kInfinity), pred_(n_ * n_, 0), comp_(n_, -1) {
  std::vector<Vertex> queue(n_);
  for (Vertex s = 0; s < n_; ++s) {
    Distance* d = &dist_[std::size_t(s) * n_];
    Vertex* p = &pred_[std::size_t(s) * n_];
    std::size_t head = 0, tail = 0;
    d[s] = 0;
    p[s] = s;
    queue[tail++] = s;
    while (head < tail) {
      Vertex u = queue[head++];
      for (Vertex w : g.neighbors(u)) {
        if (d[w] == kInfinity) {
          d[w] = d[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    for (Vertex v = 0; v < n_; ++v) {
      if (v == s || d[v] == kInfinity) continue;
      for (Vertex w : g.neighbors(v)) {
        if (d[w] + 1 == d[v]) {
          p[v] = w;
          break;
        }
      }
    }
    if (comp_[s] < 0) {
      for (Vertex v = 0; v < n_; ++v)
        if (d[v] != kInfinity) comp_[v] = ncomp_;
      ++ncomp_;
    }
  }
}

std::vector<Vertex> GeodesicTable::geodesic(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) throw Error(Errc::VertexOutOfRange, "geodesic endpoint out of range");
  if (dist(u, v) == kInfinity)
    throw Error(Errc::Disconnected, "no path " + std::to_string(u) + " -> " + std::to_string(v));
  std::vector<Vertex> path{v};
  Vertex x = v;
  while (x != u) {
    x = pred(u, x);
    path.push_back(x);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Distance GeodesicTable::diameter() const {
  Distance best = 0;
  for (Distance d : dist_)
    if (d != kInfinity && d > best) best = d;
  return best;
}

Distance GeodesicTable::set_diameter(const std::vector<Vertex>& vs) const {
  Distance best = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) best = std::max(best, dist(vs[i], vs[j]));
  return best;
}

GeodesicTable metric(const Graph& g) { return GeodesicTable(g); }

std::vector<Vertex> geodesic(const GeodesicTable& t, Vertex u, Vertex v) { return t.geodesic(u, v); }

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
  InducedSubgraph out;
  out.global = vertices;
  std::sort(out.global.begin(), out.global.end());
  out.global.erase(std::unique(out.global.begin(), out.global.end()), out.global.end());
  std::unordered_map<Vertex, Vertex> local;
  for (Vertex i = 0; i < out.global.size(); ++i) {
    if (out.global[i] >= g.size()) throw Error(Errc::VertexOutOfRange, "subgraph vertex out of range");
    local[out.global[i]] = i;
  }
  std::vector<Edge> edges;
  for (Vertex i = 0; i < out.global.size(); ++i)
    for (Vertex w : g.neighbors(out.global[i])) {
      auto it = local.find(w);
      if (it != local.end() && i < it->second) edges.emplace_back(i, it->second);
    }
  out.graph = Graph::from_edges(out.global.size(), edges);
  return out;
}

bool pairwise_disjoint(const std::vector<std::vector<Vertex>>& members) {
  std::unordered_map<Vertex, std::size_t> owner;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Vertex v : members[i])
      if (!owner.emplace(v, i).second && owner[v] != i) return false;
  return true;
}

SubgraphFamily make_family(std::size_t n, std::vector<std::vector<Vertex>> members, bool disjoint) {
  SubgraphFamily fam;
  for (auto& m : members) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.empty()) throw Error(Errc::InvalidArgument, "empty family member");
    if (m.back() >= n) throw Error(Errc::VertexOutOfRange, "family vertex " + std::to_string(m.back()));
  }
  if (disjoint && !pairwise_disjoint(members))
    throw Error(Errc::FamilyNotDisjoint, "members flagged disjoint overlap");
  fam.members = std::move(members);
  fam.disjoint = disjoint;
  fam.truncated.assign(fam.members.size(), false);
  fam.required_radius.assign(fam.members.size(), 0);
  return fam;
}

// ---------------------------------------------------------------------------
// Groups

std::size_t GroupOracle::generator_index(const std::string& name) const {
  auto it = std::find(generators.begin(), generators.end(), name);
  if (it == generators.end()) throw Error(Errc::InvalidArgument, "unknown generator '" + name + "'");
  return std::size_t(it - generators.begin());
}

namespace {

void letter_generators(GroupOracle& g, unsigned rank) {
  for (unsigned i = 0; i < rank; ++i) {
    char c = char('a' + i);
    g.generators.push_back(std::string(1, c));
    g.generators.push_back(std::string(1, char(c - 'a' + 'A')));
    g.inverse.push_back(2 * i + 1);
    g.inverse.push_back(2 * i);
  }
}

}  // namespace

GroupOracle GroupOracle::free_abelian(unsigned rank) {
  if (rank == 0 || rank > 26) throw Error(Errc::InvalidArgument, "rank must be in 1..26");
  GroupOracle g;
  g.identity.assign(rank, 0);
  letter_generators(g, rank);
  g.multiply = [](const Element& e, std::size_t s) -> std::optional<Element> {
    Element r = e;
    r[s / 2] += (s % 2 == 0) ? 1 : -1;
    return r;
  };
  return g;
}

GroupOracle GroupOracle::free_group(unsigned rank) {
  if (rank == 0 || rank > 26) throw Error(Errc::InvalidArgument, "rank must be in 1..26");
  GroupOracle g;
  letter_generators(g, rank);
  // Reduced words; letter k>0 is generator k-1, -k its inverse.
  g.multiply = [](const Element& e, std::size_t s) -> std::optional<Element> {
    std::int64_t letter = std::int64_t(s / 2 + 1) * ((s % 2 == 0) ? 1 : -1);
    Element r = e;
    if (!r.empty() && r.back() == -letter)
      r.pop_back();
    else
      r.push_back(letter);
    return r;
  };
  return g;
}

GroupOracle GroupOracle::cyclic(unsigned order) {
  if (order == 0) throw Error(Errc::InvalidArgument, "order must be positive");
  GroupOracle g;
  g.identity = {0};
  letter_generators(g, 1);
  g.multiply = [order](const Element& e, std::size_t s) -> std::optional<Element> {
    std::int64_t n = order;
    return Element{((e[0] + (s == 0 ? 1 : -1)) % n + n) % n};
  };
  return g;
}

GroupOracle GroupOracle::by_name(const std::string& name) {
  auto number = [&](std::size_t from, unsigned dflt) -> unsigned {
    if (name.size() == from) return dflt;
    try {
      return unsigned(std::stoul(name.substr(from)));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad group name '" + name + "'");
    }
  };
  if (name.empty()) throw Error(Errc::ParseError, "empty group name");
  if (name[0] == 'Z') return free_abelian(number(1, 1));
  if (name[0] == 'F') return free_group(number(1, 2));
  if (name[0] == 'C') return cyclic(number(1, 2));
  throw Error(Errc::ParseError, "unknown group '" + name + "'");
}

namespace {

struct ElementHash {
  std::size_t operator()(const GroupOracle::Element& e) const {
    std::size_t h = e.size();
    for (auto x : e) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

GroupOracle::Element checked_multiply(const GroupOracle& o, const GroupOracle::Element& e, std::size_t s) {
  std::optional<GroupOracle::Element> r;
  try {
    r = o.multiply(e, s);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error(Errc::OracleFailure, std::string("oracle threw: ") + ex.what());
  }
  if (!r) throw Error(Errc::OracleFailure, "oracle undefined at generator " + o.generators[s]);
  return *r;
}

}  // namespace

CayleyBall cayley_ball(const GroupOracle& oracle, unsigned radius) {
  if (radius < 1) throw Error(Errc::InvalidArgument, "radius must be >= 1");
  if (!oracle.multiply || oracle.generators.empty())
    throw Error(Errc::OracleFailure, "oracle has no multiplication or generators");
  CayleyBall ball;
  ball.generators = oracle.generators;
  ball.radius = radius;
  ball.oracle = oracle;
  std::unordered_map<GroupOracle::Element, Vertex, ElementHash> index;
  ball.elements.push_back(oracle.identity);
  ball.labels.emplace_back();
  index.emplace(oracle.identity, 0);
  std::vector<unsigned> depth{0};
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < ball.elements.size(); ++head) {
    GroupOracle::Element cur = ball.elements[head];
    for (std::size_t s = 0; s < oracle.generators.size(); ++s) {
      GroupOracle::Element next = checked_multiply(oracle, cur, s);
      auto it = index.find(next);
      if (it == index.end()) {
        if (depth[head] == radius) continue;
        Vertex id = Vertex(ball.elements.size());
        index.emplace(next, id);
        ball.elements.push_back(next);
        ball.labels.push_back(ball.labels[head] + oracle.generators[s]);
        depth.push_back(depth[head] + 1);
        edges.emplace_back(Vertex(head), id);
      } else if (it->second != head) {
        edges.emplace_back(Vertex(head), it->second);
      }
    }
  }
  ball.graph = Graph::from_edges(ball.elements.size(), edges);
  return ball;
}

SubgraphFamily coset_family(const CayleyBall& ball, const std::vector<std::string>& subgroup_generators) {
  if (subgroup_generators.empty()) throw Error(Errc::EmptyFamily, "no subgroup generators");
  const GroupOracle& o = ball.oracle;
  std::vector<std::size_t> gens;
  for (const auto& name : subgroup_generators) {
    std::size_t i = o.generator_index(name);
    gens.push_back(i);
    if (i < o.inverse.size()) gens.push_back(o.inverse[i]);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::size_t n = ball.elements.size();
  std::unordered_map<GroupOracle::Element, Vertex, ElementHash> index;
  for (Vertex v = 0; v < n; ++v) index.emplace(ball.elements[v], v);

  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Vertex(Vertex)> find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  // Pieces connected by H-edges inside the ball.
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t s : gens) {
      auto it = index.find(checked_multiply(o, ball.elements[v], s));
      if (it != index.end()) unite(v, it->second);
    }
  std::vector<Vertex> inner_root(n);
  for (Vertex v = 0; v < n; ++v) inner_root[v] = find(v);

  // Pieces of one coset meeting only outside the ball: explore H-words that
  // leave the ball, up to 2*radius steps.
  std::vector<unsigned> merge_depth(n, 0);
  const std::size_t budget = 200000;
  std::size_t spent = 0;
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < n; ++v)
    if (inner_root[v] == v) roots.push_back(v);
  if (roots.size() > 1) {
    for (Vertex r : roots) {
      std::unordered_map<GroupOracle::Element, unsigned, ElementHash> seen;
      std::deque<std::pair<GroupOracle::Element, unsigned>> queue;
      for (Vertex v = 0; v < n; ++v)
        if (inner_root[v] == r) {
          seen.emplace(ball.elements[v], 0);
          queue.emplace_back(ball.elements[v], 0);
        }
      while (!queue.empty() && spent < budget) {
        auto [e, d] = queue.front();
        queue.pop_front();
        if (d >= 2 * ball.radius) continue;
        for (std::size_t s : gens) {
          GroupOracle::Element next = checked_multiply(o, e, s);
          ++spent;
          if (seen.count(next)) continue;
          seen.emplace(next, d + 1);
          auto it = index.find(next);
          if (it != index.end()) {
            if (inner_root[it->second] != r) {
              Vertex a = find(r), b = find(it->second);
              if (a != b) {
                unite(a, b);
                Vertex m = find(a);
                merge_depth[m] = std::max({merge_depth[m], merge_depth[a], merge_depth[b], d + 1});
              }
            }
            continue;
          }
          queue.emplace_back(std::move(next), d + 1);
        }
      }
    }
  }

  std::map<Vertex, std::size_t> slot;
  std::vector<std::vector<Vertex>> members;
  for (Vertex v = 0; v < n; ++v) {
    Vertex r = find(v);
    auto [it, fresh] = slot.emplace(r, members.size());
    if (fresh) members.emplace_back();
    members[it->second].push_back(v);
  }
  SubgraphFamily fam = make_family(n, members, true);
  for (auto [r, i] : slot) {
    // Connectivity is judged in the induced subgraph of the ball.
    InducedSubgraph sub = induced_subgraph(ball.graph, fam.members[i]);
    if (!GeodesicTable(sub.graph).connected()) {
      fam.truncated[i] = true;
      fam.required_radius[i] = ball.radius + std::max(merge_depth[r], 1u);
    }
  }
  return fam;
}

}  // namespace hypcoh
