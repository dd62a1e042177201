#pragma once

#include <utility>
#include <vector>

#include "hypcoh/chain.hpp"
#include "hypcoh/graph.hpp"

namespace hypcoh {

/// c = sum a_i <p_i> + sum b_j <q_j> + sum m_k (x_k,x_k) + sum n_l [(y_l,z_l)+(z_l,y_l)].
struct PathDecomposition {
  std::vector<std::pair<Rational, std::vector<Vertex>>> open_paths;
  /// Closed paths repeat their first vertex at the end.
  std::vector<std::pair<Rational, std::vector<Vertex>>> closed_paths;
  std::vector<std::pair<Rational, Vertex>> diagonal_terms;
  std::vector<std::pair<Rational, Edge>> reversal_pairs;

  Chain recombine() const;
  /// sum |a_i| len(p_i) + sum |b_j| len(q_j) + sum |m_k|
  Rational path_mass() const;
  /// sum |n_l|
  Rational reversal_mass() const;
  bool all_integer() const;
};

/// Splits a chain supported on adjacent or repeated pairs into weighted paths.
/// Negative off-diagonal terms are reversed and paid for by a reversal pair;
/// the remaining nonnegative flow is split into paths between boundary
/// vertices and then cycles by repeated bottleneck extraction.
/// `t` (optional) is used to check that every pair is at distance <= 1.
/// Throws NotC11, BoundaryOffT.
PathDecomposition decompose(const Chain& c, const std::vector<Vertex>& T, const GeodesicTable* t = nullptr);

struct C11Reduction {
  Chain b{1};
  Chain c_prime{1};
  Chain witness{2};
};

/// c = b + c' with c' a sum of geodesic edge chains and d(witness) = b.
/// Each term a (x,y) with d(x,y) >= 2 becomes a <p> along the deterministic
/// geodesic p, with witness a [(p0,p0,p0) - sum_j (p0, p_{j-1}, p_j)].
/// Throws Disconnected, InvalidArgument.
C11Reduction reduce_to_C11(const Graph& g, const GeodesicTable& t, const Chain& c, unsigned R);

}  // namespace hypcoh
