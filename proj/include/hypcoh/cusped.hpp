#pragma once

#include <optional>
#include <vector>

#include "hypcoh/graph.hpp"

namespace hypcoh {

/// Combinatorial horoball over a connected base Y, truncated at `depth`.
/// Vertex (i, n) has id n*|Y| + i, where i indexes `base`.
struct Horoball {
  std::vector<Vertex> base;
  /// Intrinsic metric of Y, |Y| x |Y| row-major.
  std::vector<Distance> base_metric;
  unsigned depth = 0;
  Graph graph;

  std::size_t width() const { return base.size(); }
  Vertex vertex(std::size_t local, unsigned level) const { return Vertex(level * base.size() + local); }
  unsigned level(Vertex v) const { return unsigned(v / base.size()); }
  std::size_t local(Vertex v) const { return v % base.size(); }
  Distance base_distance(std::size_t i, std::size_t j) const { return base_metric[i * base.size() + j]; }
};

/// Largest horizontal distance joined at level n: 2^n.
Distance level_threshold(unsigned level);

/// ceil(log2(max(diam, 1))) + 2
unsigned default_depth(Distance diameter);

/// Horoball over the graph `y` (vertex labels from `labels` when given).
/// Throws DisconnectedBase, InvalidArgument (depth 0).
Horoball horoball(const Graph& y, unsigned depth, std::vector<Vertex> labels = {});

/// Where a cusped-space vertex comes from.
struct CuspOrigin {
  /// -1 for vertices of the base graph.
  int member = -1;
  /// Vertex of the base graph (for horoball vertices: the base point y).
  Vertex base = 0;
  unsigned level = 0;
};

/// Base graph on 0..base_size-1 followed by one horoball block per member,
/// level-major inside each block.
struct CuspedSpace {
  Graph graph;
  std::size_t base_size = 0;
  std::vector<CuspOrigin> origin;
  /// Vertex sets of the horoballs, pairwise disjoint.
  SubgraphFamily horoballs;
  std::vector<unsigned> depths;
  std::vector<Vertex> offsets;

  Vertex vertex(std::size_t member, std::size_t local, unsigned level) const;
};

/// Glues a horoball along each member. `depth` empty means default_depth per
/// member. Duplicate members get distinct horoballs. Throws DisconnectedMember.
CuspedSpace cusp(const Graph& g, const SubgraphFamily& family, std::optional<unsigned> depth = std::nullopt);

/// The base graph with only level 0 of each horoball attached; the level-0
/// copies form a disjoint family.
struct TruncatedPair {
  Graph graph;
  SubgraphFamily family;
  std::vector<CuspOrigin> origin;
};

TruncatedPair truncated_pair(const Graph& g, const SubgraphFamily& family);

}  // namespace hypcoh
