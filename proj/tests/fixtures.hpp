#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "hypcoh/chain.hpp"
#include "hypcoh/graph.hpp"

namespace fixtures {

using hypcoh::Edge;
using hypcoh::Graph;
using hypcoh::Vertex;

inline Graph path_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return Graph::from_edges(n, e);
}

inline Graph cycle_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph complete_graph(Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

/// w x h grid, vertex (x,y) has id y*w + x.
inline Graph grid_graph(Vertex w, Vertex h) {
  std::vector<Edge> e;
  for (Vertex y = 0; y < h; ++y)
    for (Vertex x = 0; x < w; ++x) {
      if (x + 1 < w) e.emplace_back(y * w + x, y * w + x + 1);
      if (y + 1 < h) e.emplace_back(y * w + x, (y + 1) * w + x);
    }
  return Graph::from_edges(w * h, e);
}

/// Boundary walk of the n x n grid, closed.
inline std::vector<Vertex> grid_perimeter(Vertex n) {
  std::vector<Vertex> p;
  for (Vertex x = 0; x < n - 1; ++x) p.push_back(x);
  for (Vertex y = 0; y < n - 1; ++y) p.push_back(y * n + n - 1);
  for (Vertex x = n - 1; x > 0; --x) p.push_back((n - 1) * n + x);
  for (Vertex y = n - 1; y > 0; --y) p.push_back(y * n);
  p.push_back(0);
  return p;
}

inline Graph star_graph(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

inline Graph random_tree(std::mt19937_64& rng, Vertex n) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back(Vertex(rng() % i), i);
  return Graph::from_edges(n, e);
}

/// Random connected graph: a random tree plus extra edges with probability p.
inline Graph random_connected(std::mt19937_64& rng, Vertex n, double p) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back(Vertex(rng() % i), i);
  std::uniform_real_distribution<double> u(0, 1);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (u(rng) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

/// Random graph, possibly disconnected.
inline Graph random_graph(std::mt19937_64& rng, Vertex n, double p) {
  std::vector<Edge> e;
  std::uniform_real_distribution<double> u(0, 1);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (u(rng) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

inline hypcoh::Rational random_coeff(std::mt19937_64& rng, bool integer) {
  long num = long(rng() % 9) - 4;
  long den = integer ? 1 : 1 + long(rng() % 4);
  return hypcoh::ratio(num, den);
}

/// Random chain of the given degree with `terms` tuples over n vertices.
inline hypcoh::Chain random_chain(std::mt19937_64& rng, int degree, Vertex n, int terms, bool integer = false) {
  hypcoh::Chain c(degree);
  for (int k = 0; k < terms; ++k) {
    hypcoh::Tuple t;
    t.size = std::uint8_t(degree + 1);
    for (int i = 0; i <= degree; ++i) t.v[i] = Vertex(rng() % n);
    c.add(t, random_coeff(rng, integer));
  }
  return c;
}

}  // namespace fixtures
