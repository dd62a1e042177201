#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hypcoh/cochain.hpp"
#include "hypcoh/graph.hpp"

namespace hypcoh {

/// Set-valued projections pi_Y: X -> 2^Y onto the members of a disjoint family.
class ProjectionSystem {
 public:
  ProjectionSystem() = default;
  /// pi[Y][v] must be a nonempty sorted subset of member Y. Throws InvalidArgument.
  ProjectionSystem(Graph g, SubgraphFamily family, std::vector<std::vector<std::vector<Vertex>>> pi);

  const Graph& graph() const { return graph_; }
  const GeodesicTable& metric() const { return *metric_; }
  const SubgraphFamily& family() const { return family_; }
  std::size_t members() const { return family_.size(); }
  int member_of(Vertex v) const { return member_of_[v]; }

  const std::vector<Vertex>& project(std::size_t Y, Vertex v) const { return pi_[Y][v]; }
  /// pi_Y(W) = union of pi_Y(w) over w in W (cached).
  const std::vector<Vertex>& project_member(std::size_t Y, std::size_t W) const;

  /// diam(A u B) in the ambient metric.
  Distance diameter(const std::vector<Vertex>& a, const std::vector<Vertex>& b) const;
  /// d_Y(a,b) for vertices.
  Distance d(std::size_t Y, Vertex a, Vertex b) const { return diameter(project(Y, a), project(Y, b)); }
  /// d_Y(W,Z) for members.
  Distance d_members(std::size_t Y, std::size_t W, std::size_t Z) const {
    return diameter(project_member(Y, W), project_member(Y, Z));
  }

  /// Adds a singleton member {v} for every uncovered vertex.
  ProjectionSystem with_singletons() const;
  /// Number of members before singletons were added by with_singletons.
  std::size_t original_members() const { return original_; }

 private:
  Graph graph_;
  std::shared_ptr<const GeodesicTable> metric_;
  SubgraphFamily family_;
  std::vector<int> member_of_;
  std::vector<std::vector<std::vector<Vertex>>> pi_;
  std::size_t original_ = 0;
  mutable std::vector<std::vector<std::vector<Vertex>>> member_cache_;
  mutable std::vector<std::vector<char>> member_cached_;
};

/// pi_Y(v) = all nearest points of Y. Throws DisconnectedMember, FamilyNotDisjoint.
ProjectionSystem nearest_point_system(const Graph& g, const SubgraphFamily& family);

struct AxiomReport {
  /// Smallest constant for each axiom on this finite instance.
  Rational bounded_projection = 0;
  Rational coarse_lipschitz = 0;
  Rational behrstock = 0;
  /// Finite families have finitely many large projections for every B.
  Rational large_projections = 0;
  /// max of the first three.
  Rational B = 0;
  /// Smallest integer B' for which the strong Behrstock form holds, and whether B >= B'.
  Rational strong_behrstock = 0;
  bool strong_holds_at_B = false;
  /// Where each constant is attained.
  std::string bounded_projection_witness, coarse_lipschitz_witness, behrstock_witness, strong_behrstock_witness;
  /// (W,Y) -> {Z != W,Y : d_Z(W,Y) >= B}, nonempty entries only.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> large_projection_sets;
  std::size_t max_large_projection_count = 0;
};

AxiomReport check_axioms(const ProjectionSystem& sys);

struct RelOrder {
  std::size_t W = 0, Y = 0;
  Rational threshold = 0;
  /// Members of Rel(W,Y) from least to greatest; ends with Y.
  std::vector<std::size_t> order;
  /// Immediate predecessor of each element (none for the least).
  std::map<std::size_t, std::size_t> predecessor;

  bool contains(std::size_t Z) const;
  /// Position in the order. Throws InvalidArgument if absent.
  std::size_t rank(std::size_t Z) const;
};

/// Rel(W,Y) = {Z : d_Z(W,Y) > 10B} u {W,Y}, ordered by U < V iff
/// pi_U(V) = pi_U(Y) (Y is the maximum). Throws InvalidArgument (W = Y),
/// OrderNotTotal with the offending pair.
RelOrder rel_order(const ProjectionSystem& sys, std::size_t W, std::size_t Y, const Rational& B);

struct LipschitzPrimitive {
  std::vector<Coeff> f;
  /// max over edges of |f(y) - f(x)|
  Rational lipschitz = 0;
};

/// f(x) = phi(x0, x). Throws NotACocycle (checked on all triples), InvalidArgument.
LipschitzPrimitive lipschitz_primitive(const Graph& y, const Cochain& phi, Vertex x0);

struct CocycleExtension {
  std::vector<Coeff> f;
  /// d f as a 1-cochain on the whole graph.
  Cochain phi;
  Rational lipschitz = 0;
  /// Constant used for the Rel sets (max over all axiom constants including strong Behrstock).
  Rational B = 0;
  /// Members after singletons were added; rho and parent are indexed by them.
  SubgraphFamily family;
  std::vector<std::size_t> rho;
  /// p(Y); W0 is its own parent.
  std::vector<std::size_t> parent;
  /// Rel(W0, p(Y)) against the segment of Rel(W0, Y) ending at p(Y), when p(Y) != W0.
  std::size_t prefix_checked = 0;
  std::size_t prefix_failures = 0;
};

/// Extends per-member 1-cocycles (locals[k] on member k, local ids in sorted
/// member order) to a global function f with d f = phi_Y on each member.
/// Members are processed by rho(W0, Y) = |Rel(W0, Y)|; on Y,
///   f = f_Y - f_Y(b(Y)) + f(s(Y)),  b(Y) = min pi_Y(p(Y)),  s(Y) = min pi_{p(Y)}(Y).
/// Throws OrderNotTotal, InductionGap, NotACocycle, InvalidArgument.
CocycleExtension extend_cocycle(const ProjectionSystem& sys, const std::vector<Cochain>& locals, std::size_t W0);

}  // namespace hypcoh
