#include "doctest.h"

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "hypcoh/cusped.hpp"
#include "hypcoh/error.hpp"
#include "oracles.hpp"

using namespace hypcoh;
using namespace fixtures;

namespace {

unsigned ceil_log2(Distance d) {
  unsigned k = 0;
  while ((Distance(1) << k) < d) ++k;
  return k;
}

void check_edge_rule(const Horoball& h) {
  for (unsigned n = 0; n <= h.depth; ++n)
    for (std::size_t i = 0; i < h.width(); ++i) {
      if (n < h.depth) CHECK(h.graph.adjacent(h.vertex(i, n), h.vertex(i, n + 1)));
      for (std::size_t j = 0; j < h.width(); ++j) {
        Distance d = h.base_distance(i, j);
        bool expect = d > 0 && std::pow(2.0, n) >= double(d);
        CHECK(h.graph.adjacent(h.vertex(i, n), h.vertex(j, n)) == expect);
      }
      for (unsigned m = 0; m <= h.depth; ++m)
        for (std::size_t j = 0; j < h.width(); ++j) {
          bool vertical = i == j && (m + 1 == n || n + 1 == m);
          if (m != n && !vertical) CHECK_FALSE(h.graph.adjacent(h.vertex(i, n), h.vertex(j, m)));
        }
    }
}

}  // namespace

TEST_CASE("horoball over a path of five vertices") {
  Horoball h = horoball(path_graph(5), 3);
  for (unsigned n = 0; n <= 3; ++n) CHECK(h.graph.adjacent(h.vertex(0, n), h.vertex(4, n)) == (n >= 2));
  check_edge_rule(h);
  GeodesicTable t(h.graph);
  auto fw = oracles::floyd_warshall(h.graph);
  CHECK(t.dist(h.vertex(0, 0), h.vertex(4, 0)) == fw[h.vertex(0, 0)][h.vertex(4, 0)]);
  CHECK(t.dist(h.vertex(0, 0), h.vertex(4, 0)) == 4);
  Horoball deep = horoball(path_graph(9), 4);
  GeodesicTable td(deep.graph);
  // Up two levels, two steps of length 4, down two levels.
  CHECK(td.dist(deep.vertex(0, 0), deep.vertex(8, 0)) == 6);
}

TEST_CASE("horoball over a single vertex is a ray") {
  Horoball h = horoball(Graph(1), 4);
  CHECK(h.graph.size() == 5);
  CHECK(h.graph.edge_count() == 4);
  CHECK(GeodesicTable(h.graph).dist(0, 4) == 4);
}

TEST_CASE("horoball edge rule on random bases") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Graph y = random_connected(rng, Vertex(1 + rng() % 9), 0.2);
    check_edge_rule(horoball(y, 1 + unsigned(rng() % 4)));
  }
}

TEST_CASE("horoball errors") {
  try {
    horoball(Graph::from_edges(3, {{0, 1}}), 2);
    FAIL("expected DisconnectedBase");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DisconnectedBase);
  }
  CHECK_THROWS_AS(horoball(path_graph(3), 0), Error);
}

TEST_CASE("default depth") {
  CHECK(default_depth(0) == 2);
  CHECK(default_depth(1) == 2);
  CHECK(default_depth(4) == 4);
  CHECK(default_depth(5) == 5);
  CHECK(default_depth(32) == 7);
}

TEST_CASE("cusp with no members is the base graph") {
  Graph g = cycle_graph(5);
  CuspedSpace c = cusp(g, make_family(5, {}, true));
  CHECK(c.graph == g);
  CHECK(c.horoballs.size() == 0);
}

TEST_CASE("cusp over a ball of Z") {
  CayleyBall ball = cayley_ball(GroupOracle::by_name("Z"), 3);
  REQUIRE(ball.graph.size() == 7);
  std::vector<Vertex> all(7);
  for (Vertex v = 0; v < 7; ++v) all[v] = v;
  CuspedSpace c = cusp(ball.graph, make_family(7, {all}, true), 3u);
  CHECK(c.graph.size() == 7 + 7 * 4);
  // base 6, gluing 7, vertical 21, levels 0..3: 6 + 11 + 18 + 21
  CHECK(c.graph.edge_count() == 6 + 7 + 21 + 6 + 11 + 18 + 21);
  for (Vertex y : all) CHECK(c.graph.adjacent(y, c.vertex(0, std::size_t(y), 0)));
}

TEST_CASE("cusp keeps duplicate members apart") {
  Graph g = path_graph(4);
  SubgraphFamily fam = make_family(4, {{0, 1, 2, 3}, {0, 1, 2, 3}}, false);
  CuspedSpace c = cusp(g, fam, 2u);
  REQUIRE(c.horoballs.size() == 2);
  CHECK(pairwise_disjoint(c.horoballs.members));
  CHECK(c.graph.size() == 4 + 2 * 4 * 3);
  std::set<Vertex> hv;
  for (const auto& m : c.horoballs.members) hv.insert(m.begin(), m.end());
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < c.graph.size(); ++v)
    if (!hv.count(v)) rest.push_back(v);
  CHECK(induced_subgraph(c.graph, rest).graph == g);
  for (Vertex v = 0; v < c.graph.size(); ++v) {
    if (v < 4) CHECK(c.origin[v].member == -1);
    else CHECK(c.origin[v].member >= 0);
  }
}

TEST_CASE("cusped distances are logarithmic") {
  for (Vertex len : {2u, 5u, 9u, 17u, 33u}) {
    Graph g = path_graph(len);
    std::vector<Vertex> all(len);
    for (Vertex v = 0; v < len; ++v) all[v] = v;
    CuspedSpace c = cusp(g, make_family(len, {all}, true));
    GeodesicTable t(c.graph);
    for (Vertex a = 0; a < len; ++a)
      for (Vertex b = a + 1; b < len; ++b) CHECK(t.dist(a, b) <= 2 * ceil_log2(b - a) + 3);
  }
}

TEST_CASE("cusp rejects disconnected members") {
  CayleyBall ball = cayley_ball(GroupOracle::by_name("F2"), 2);
  SubgraphFamily fam = make_family(ball.graph.size(), {{1, 2}}, true);
  fam.truncated[0] = true;
  fam.required_radius[0] = 3;
  try {
    cusp(ball.graph, fam);
    FAIL("expected DisconnectedMember");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DisconnectedMember);
    CHECK(std::string(e.what()).find("required_radius=3") != std::string::npos);
  }
}

TEST_CASE("truncated pair") {
  Graph g = path_graph(5);
  TruncatedPair empty = truncated_pair(g, make_family(5, {}, true));
  CHECK(empty.graph == g);
  CHECK(empty.family.size() == 0);

  SubgraphFamily overlap = make_family(5, {{0, 1, 2}, {2, 3}, {2, 3}}, false);
  TruncatedPair p = truncated_pair(g, overlap);
  CHECK(p.graph.size() == 5 + 3 + 2 + 2);
  CHECK(p.family.disjoint);
  CHECK(pairwise_disjoint(p.family.members));
  for (std::size_t k = 0; k < 3; ++k)
    for (Vertex v : p.family.members[k]) {
      CHECK(p.origin[v].member == int(k));
      CHECK(p.graph.adjacent(v, p.origin[v].base));
    }
}
