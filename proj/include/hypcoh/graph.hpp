#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypcoh/rational.hpp"

namespace hypcoh {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Finite simple undirected graph on {0..n-1}. Adjacency lists are sorted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  /// Collapses duplicates and symmetric pairs. Throws SelfLoop / VertexOutOfRange.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  bool adjacent(Vertex u, Vertex v) const;
  /// Edges as (u,v) with u < v, sorted.
  std::vector<Edge> edges() const;

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
};

/// All-pairs BFS distances with a deterministic predecessor table.
/// pred(s, v) is the smallest neighbour of v one step closer to s.
class GeodesicTable {
 public:
  GeodesicTable() = default;
  explicit GeodesicTable(const Graph& g);

  std::size_t size() const { return n_; }
  Distance dist(Vertex u, Vertex v) const { return dist_[std::size_t(u) * n_ + v]; }
  Vertex pred(Vertex s, Vertex v) const { return pred_[std::size_t(s) * n_ + v]; }
  int component(Vertex v) const { return comp_[v]; }
  int component_count() const { return ncomp_; }
  bool connected() const { return ncomp_ <= 1; }

  /// Deterministic geodesic u -> v. Throws Disconnected.
  std::vector<Vertex> geodesic(Vertex u, Vertex v) const;

  /// Largest finite distance.
  Distance diameter() const;
  /// Max pairwise distance inside a vertex set (kInfinity across components).
  Distance set_diameter(const std::vector<Vertex>& vs) const;

 private:
  std::size_t n_ = 0;
  std::vector<Distance> dist_;
  std::vector<Vertex> pred_;
  std::vector<int> comp_;
  int ncomp_ = 0;
};

GeodesicTable metric(const Graph& g);
std::vector<Vertex> geodesic(const GeodesicTable& t, Vertex u, Vertex v);

/// Induced subgraph with local ids; `global[i]` is the ambient id of local vertex i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> global;
};

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices);

/// Ordered family of vertex subsets. Members are kept sorted; duplicates
/// of whole members are allowed.
struct SubgraphFamily {
  std::vector<std::vector<Vertex>> members;
  bool disjoint = false;
  /// Per member: the coset meets the ball in a set that is not connected in the ball.
  std::vector<bool> truncated;
  /// Per member: radius bound at which the truncated piece was seen to reconnect (0 if not truncated).
  std::vector<unsigned> required_radius;

  std::size_t size() const { return members.size(); }
};

/// Sorts members, fills metadata and checks ids, nonemptiness and the disjoint flag.
SubgraphFamily make_family(std::size_t n, std::vector<std::vector<Vertex>> members, bool disjoint);
bool pairwise_disjoint(const std::vector<std::vector<Vertex>>& members);

/// Group given by a right-multiplication oracle on hash-consed elements.
struct GroupOracle {
  using Element = std::vector<std::int64_t>;
  Element identity;
  std::vector<std::string> generators;
  /// inverse[i] is the index of the inverse generator (may be i).
  std::vector<std::size_t> inverse;
  std::function<std::optional<Element>(const Element&, std::size_t)> multiply;

  std::size_t generator_index(const std::string& name) const;

  /// Z^k with generators a,A,b,B,... (upper case = inverse).
  static GroupOracle free_abelian(unsigned rank);
  /// Free group of the given rank with generators a,A,b,B,...
  static GroupOracle free_group(unsigned rank);
  /// Z/n with generators a,A.
  static GroupOracle cyclic(unsigned order);
  /// Parses "Z", "Z2", "Zk", "F2", "Fk", "C5" style names.
  static GroupOracle by_name(const std::string& name);
};

struct CayleyBall {
  Graph graph;
  std::vector<std::string> labels;
  std::vector<std::string> generators;
  unsigned radius = 0;
  std::vector<GroupOracle::Element> elements;
  GroupOracle oracle;
};

/// Ball of the given radius around the identity (vertex 0). Throws OracleFailure.
CayleyBall cayley_ball(const GroupOracle& oracle, unsigned radius);

/// Intersections of left cosets gH with the ball, H generated by the named
/// generators (inverses added). Pieces joined only outside the ball are merged
/// and flagged truncated. Throws EmptyFamily / InvalidArgument.
SubgraphFamily coset_family(const CayleyBall& ball, const std::vector<std::string>& subgroup_generators);

}  // namespace hypcoh
