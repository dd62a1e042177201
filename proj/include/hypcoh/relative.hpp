#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypcoh/cochain.hpp"
#include "hypcoh/graph.hpp"

namespace hypcoh {

/// A graph with a family of pairwise disjoint vertex sets.
struct PairSpace {
  Graph graph;
  GeodesicTable metric;
  SubgraphFamily family;
  /// Member containing each vertex, -1 if none.
  std::vector<int> member_of;

  std::size_t size() const { return graph.size(); }
  /// Both vertices lie in one member.
  bool common_member(Vertex a, Vertex b) const { return member_of[a] >= 0 && member_of[a] == member_of[b]; }
};

/// Throws FamilyNotDisjoint, InvalidArgument.
std::shared_ptr<const PairSpace> make_pair_space(const Graph& g, const SubgraphFamily& family);

/// Measured control function: entry D is the value at distance D; kInfinity
/// marks an unbounded entry (different components).
using ControlTable = std::vector<Distance>;

/// A relative coarsely uniform map (f, f#).
struct PairMap {
  std::shared_ptr<const PairSpace> source;
  std::shared_ptr<const PairSpace> target;
  std::vector<Vertex> f;
  std::vector<std::size_t> sharp;
  /// Over pairs not in a common member, indexed by d(x1,x2) up to diam(source):
  /// rho_plus[D] = max d(f x1, f x2) with d(x1,x2) <= D,
  /// rho_minus[D] = min d(f x1, f x2) with d(x1,x2) >= D.
  ControlTable rho_plus;
  ControlTable rho_minus;
  /// Indexed by r up to diam(target): max d(x1,x2) over such pairs with d(f x1, f x2) <= r.
  ControlTable rho_minus_star;
};

/// Checks f(Y) in f#(Y) exactly and that images of pairs outside a common
/// member stay in one component; measures the control tables.
/// Throws NotRelativelyUniform, InvalidArgument.
PairMap make_pair_map(std::shared_ptr<const PairSpace> source, std::shared_ptr<const PairSpace> target,
                      std::vector<Vertex> f, std::vector<std::size_t> sharp);

PairMap identity_map(std::shared_ptr<const PairSpace> space);
/// second o first. Throws InvalidArgument if the spaces do not match.
PairMap compose(const PairMap& first, const PairMap& second);

/// rho[D] = max d(f x1, fhat x2) over pairs not in a common member with
/// d(x1,x2) <= D. Throws MismatchedSharp.
ControlTable relative_closeness(const PairMap& m, const PairMap& mhat);

/// A cochain that vanishes on every tuple inside a single member.
struct RelativeCochain {
  Cochain cochain;
  std::shared_ptr<const PairSpace> space;
};

/// First member-internal tuple with a nonzero value (exhaustive over members).
std::optional<Tuple> member_violation(const Cochain& f, const SubgraphFamily& family);

/// Throws InvalidArgument when f does not vanish on the members.
RelativeCochain make_relative_cochain(const Cochain& f, std::shared_ptr<const PairSpace> space);

/// (f^* a)(x_0..x_k) = a(f(x_0)..f(x_k)).
RelativeCochain pullback(const PairMap& m, const RelativeCochain& a);

/// (h a)(x_0..x_k) = sum_i (-1)^i a(f x_0..f x_i, fhat x_i..fhat x_k), up to the
/// global sign that makes  d(h a) + h(d a) = fhat^* a - f^* a.
/// Throws MismatchedSharp, InvalidArgument.
Cochain homotopy_operator(const PairMap& m, const PairMap& mhat, const Cochain& a);
RelativeCochain homotopy_operator(const PairMap& m, const PairMap& mhat, const RelativeCochain& a);

struct ExcisionInverse {
  PairMap pi;
  /// approx[D] = max over y' in Y', x' outside Y' with d(y',x') <= D of
  /// min over y in pi#(Y') of d(y', f(y)).
  ControlTable member_approximation;
  /// f o pi against the identity of the target, and pi o f against the source.
  ControlTable target_closeness;
  ControlTable source_closeness;
  /// target_closeness[D] <= D + approx[D] and source_closeness[D] <= rho_minus_star[rho_plus[D]].
  bool target_ok = false;
  bool source_ok = false;
};

/// The relative coarse inverse of an excision map. Member vertices go to the
/// lexicographically first minimiser of d(y', f(y)) over pi#(Y'); others to
/// their smallest preimage. Throws HypothesisViolated.
ExcisionInverse excision_inverse(const PairMap& m);

/// The inclusion of the truncated pair (base plus level 0 of each horoball)
/// into the cusped space, members mapped to their horoballs.
PairMap truncated_inclusion(const Graph& g, const SubgraphFamily& family, std::optional<unsigned> depth = std::nullopt);

struct RelativeResult {
  RelativeCochain relative;
  /// relative = f + d(witness)
  Cochain witness;
  std::vector<Primitive> primitives;
};

/// Makes a degree-2 cocycle vanish on the members by subtracting d(phi_Y),
/// phi_Y a primitive of f on the induced member graph extended by zero.
/// Members of at most `extension_vertices` vertices use the extension method
/// at their smallest saturating radius; larger ones use the cone.
/// Throws DisconnectedMember and the errors of construct_primitive.
RelativeResult make_relative(const Graph& g, const Cochain& f, const SubgraphFamily& family,
                             const PrimitiveOptions& opts = {}, std::size_t extension_vertices = 12);

}  // namespace hypcoh
