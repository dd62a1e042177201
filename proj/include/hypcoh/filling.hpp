#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hypcoh/chain.hpp"
#include "hypcoh/graph.hpp"
#include "hypcoh/lp.hpp"

namespace hypcoh {

struct FillingOptions {
  /// Hard cap on LP columns (triples). Exceeding it raises GraphTooLarge.
  std::size_t max_columns = 60000;
  /// Integer coefficients via branch and bound over the generated column pool.
  bool integer = false;
};

/// Degree-1 dual functional on ordered pairs; certifies optimality or infeasibility.
using DualCertificate = std::map<Tuple, Rational>;

struct FillingResult {
  bool feasible = false;
  Rational value = 0;
  Chain witness{2};
  /// Optimal: y with |y.d(t)| <= 1 for every triple t of diameter <= R and y.b = value.
  /// Infeasible: y with y.d(t) = 0 for every such triple and y.b != 0.
  DualCertificate certificate;
  std::size_t lp_rounds = 0;
  std::size_t columns = 0;
};

/// Exact min |c|_1 over c in C_2^R with dc = b. Column generation over the
/// triples of diameter <= R; the returned certificate is checked against all
/// of them. Throws GraphTooLarge, InvalidArgument.
FillingResult filling_norm(const Graph& g, const GeodesicTable& t, const Chain& b, unsigned R,
                           const FillingOptions& opts = {});

/// Re-checks a filling result against every triple of diameter <= R.
bool verify_filling(const GeodesicTable& t, const Chain& b, unsigned R, const FillingResult& r,
                    std::string* why = nullptr);

/// Filling norm of the 1-chain of a closed path. Throws NotACycle for open paths.
FillingResult homological_area(const Graph& g, const GeodesicTable& t, const std::vector<Vertex>& path,
                               unsigned R, const FillingOptions& opts = {});

/// All triples (x,y,z) with pairwise distances <= R, calling f on each.
template <class F>
void for_each_triple(const Graph& g, const GeodesicTable& t, unsigned R, F&& f);

struct IsoperimetricProfile {
  unsigned R = 0;
  /// length -> max observed filling norm (closed paths whose chain is not
  /// R-fillable are counted in `unfillable`).
  std::map<std::size_t, Rational> entries;
  std::map<std::size_t, std::size_t> unfillable;
  std::size_t exhaustive_upto = 0;
  std::size_t sampled_count = 0;
  std::size_t paths_examined = 0;
};

IsoperimetricProfile isoperimetric_profile(const Graph& g, const GeodesicTable& t, unsigned R,
                                           std::size_t exhaustive_upto, std::size_t samples,
                                           std::uint64_t seed, const FillingOptions& opts = {});

/// Closed walks up to `max_len`, one representative per rotation/reversal class.
/// `basepoints` empty means all vertices.
std::vector<std::vector<Vertex>> closed_paths(const Graph& g, std::size_t max_len,
                                              const std::vector<Vertex>& basepoints = {});

/// Cycles to test: explicit chains plus closed paths.
struct CycleSource {
  std::vector<Chain> chains;
  std::vector<std::vector<Vertex>> paths;
};

struct IpiReport {
  /// max |b|_F^R / |b|_1 over fillable nonzero cycles; nullopt if none.
  std::optional<Rational> constant;
  std::size_t examined = 0;
  std::size_t unfillable = 0;
  Chain argmax{1};
};

IpiReport linear_ipi_constant(const Graph& g, const GeodesicTable& t, unsigned R, const CycleSource& src,
                              const FillingOptions& opts = {});

struct SubdivisionResult {
  Chain chain{2};
  /// Largest replacement norm over the triples that were replaced (1 if none).
  Rational max_replacement = 1;
  std::size_t replaced = 0;
};

/// Replaces every triple of c with a long side (distance R+1) by a minimal
/// R-filling of its subdivided boundary. Throws TripleNotFillable, InvalidArgument.
SubdivisionResult subdivide_filling(const Graph& g, const GeodesicTable& t, const Chain& c, unsigned R,
                                    const FillingOptions& opts = {});

// ---------------------------------------------------------------------------

template <class F>
void for_each_triple(const Graph& g, const GeodesicTable& t, unsigned R, F&& f) {
  const Vertex n = Vertex(g.size());
  std::vector<Vertex> near;
  for (Vertex x = 0; x < n; ++x) {
    near.clear();
    for (Vertex y = 0; y < n; ++y)
      if (t.dist(x, y) <= R) near.push_back(y);
    for (Vertex y : near)
      for (Vertex z : near)
        if (t.dist(y, z) <= R) f(Tuple{x, y, z});
  }
}

}  // namespace hypcoh
