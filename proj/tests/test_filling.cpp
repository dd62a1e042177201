#include "doctest.h"

#include <set>

#include "fixtures.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/filling.hpp"

using namespace hypcoh;
using namespace fixtures;

namespace {

Chain triangle_cycle() {
  Chain b(1);
  b.add(Tuple{0, 1}, 1);
  b.add(Tuple{1, 2}, 1);
  b.add(Tuple{0, 2}, -1);
  return b;
}

}  // namespace

TEST_CASE("filling: K3 triangle at R=1") {
  Graph g = complete_graph(3);
  GeodesicTable t(g);
  FillingResult r = filling_norm(g, t, triangle_cycle(), 1);
  REQUIRE(r.feasible);
  CHECK(r.value == 1);
  CHECK(r.witness == Chain::single(Tuple{0, 1, 2}));
  CHECK(verify_filling(t, triangle_cycle(), 1, r));
}

TEST_CASE("filling: zero chain") {
  Graph g = complete_graph(3);
  GeodesicTable t(g);
  FillingResult r = filling_norm(g, t, Chain(1), 1);
  CHECK(r.feasible);
  CHECK(r.value == 0);
}

TEST_CASE("filling: hexagon") {
  Graph g = cycle_graph(6);
  GeodesicTable t(g);
  // Oriented hexagon (0,1)+...+(4,5)-(0,5) and the closed-path chain <0..5,0>.
  Chain signed_hex = path_chain({0, 1, 2, 3, 4, 5});
  signed_hex.add(Tuple{0, 5}, -1);
  Chain loop = path_chain({0, 1, 2, 3, 4, 5, 0});
  for (const Chain& b : {signed_hex, loop}) {
    FillingResult r1 = filling_norm(g, t, b, 1);
    CHECK_FALSE(r1.feasible);
    CHECK(verify_filling(t, b, 1, r1));
  }
  FillingResult r2 = filling_norm(g, t, signed_hex, 2);
  REQUIRE(r2.feasible);
  CHECK(r2.value == 4);
  CHECK(verify_filling(t, signed_hex, 2, r2));
  Chain expected(2);
  for (Tuple tr : {Tuple{0, 1, 2}, Tuple{2, 3, 4}, Tuple{0, 4, 5}, Tuple{0, 2, 4}}) expected.add(tr, 1);
  CHECK(boundary(expected) == signed_hex);

  // Closing with (5,0) instead of -(0,5) costs two degenerate triples.
  FillingResult r3 = filling_norm(g, t, loop, 2);
  REQUIRE(r3.feasible);
  CHECK(r3.value == 6);
  CHECK(verify_filling(t, loop, 2, r3));
}

TEST_CASE("filling: K3 closed path") {
  Graph g = complete_graph(3);
  GeodesicTable t(g);
  FillingResult r = homological_area(g, t, {0, 1, 2, 0}, 1);
  REQUIRE(r.feasible);
  CHECK(r.value == 3);
  CHECK(verify_filling(t, path_chain({0, 1, 2, 0}), 1, r));
}

TEST_CASE("filling: backtrack of length two has area 2") {
  Graph g = path_graph(2);
  GeodesicTable t(g);
  FillingResult r = homological_area(g, t, {0, 1, 0}, 1);
  REQUIRE(r.feasible);
  CHECK(r.value == 2);
  CHECK(verify_filling(t, path_chain({0, 1, 0}), 1, r));
  CHECK_THROWS_AS(homological_area(g, t, {0, 1}, 1), Error);
}

TEST_CASE("filling: appending a backtrack changes the area by at most 2") {
  Graph g = complete_graph(3);
  GeodesicTable t(g);
  Rational base = homological_area(g, t, {0, 1, 2, 0}, 1).value;
  Rational more = homological_area(g, t, {0, 1, 2, 0, 1, 0}, 1).value;
  CHECK(abs(Rational(more - base)) <= 2);
}

TEST_CASE("filling: grid perimeters") {
  for (Vertex n : {3u, 4u, 5u}) {
    Graph g = grid_graph(n, n);
    GeodesicTable t(g);
    Chain b = path_chain(grid_perimeter(n));
    FillingResult r = filling_norm(g, t, b, 2);
    REQUIRE(r.feasible);
    CHECK(verify_filling(t, b, 2, r));
    MESSAGE("grid " << n << " value " << r.value << " rounds " << r.lp_rounds << " cols " << r.columns);
  }
}

TEST_CASE("filling: norm is non-increasing in R") {
  Graph g = grid_graph(4, 4);
  GeodesicTable t(g);
  Chain b = path_chain(grid_perimeter(4));
  CHECK_FALSE(filling_norm(g, t, b, 1).feasible);
  Rational prev = filling_norm(g, t, b, 2).value;
  for (unsigned R = 3; R <= 5; ++R) {
    FillingResult r = filling_norm(g, t, b, R);
    REQUIRE(r.feasible);
    CHECK(r.value <= prev);
    prev = r.value;
  }
}

TEST_CASE("filling: integer mode") {
  Graph g = cycle_graph(6);
  GeodesicTable t(g);
  FillingOptions o;
  o.integer = true;
  FillingResult r = filling_norm(g, t, path_chain({0, 1, 2, 3, 4, 5, 0}), 2, o);
  REQUIRE(r.feasible);
  CHECK(all_integer(r.witness));
  CHECK(r.value == 6);
}

TEST_CASE("profile and ipi") {
  Graph k3 = complete_graph(3);
  GeodesicTable tk(k3);
  IsoperimetricProfile p = isoperimetric_profile(k3, tk, 1, 3, 0, 1);
  CHECK(p.entries.at(3) == 3);
  CHECK(p.entries.at(2) == 2);

  Graph c6 = cycle_graph(6);
  GeodesicTable tc(c6);
  IsoperimetricProfile pc = isoperimetric_profile(c6, tc, 2, 6, 10, 5);
  CHECK(pc.entries.at(6) == 6);

  CycleSource src;
  src.chains.push_back(triangle_cycle());
  IpiReport rep = linear_ipi_constant(k3, tk, 1, src);
  REQUIRE(rep.constant);
  CHECK(*rep.constant == ratio(1, 3));
}

TEST_CASE("closed paths are canonical") {
  Graph g = cycle_graph(4);
  auto ps = closed_paths(g, 4);
  std::size_t squares = 0;
  for (const auto& p : ps)
    if (p.size() == 5 && std::set<Vertex>(p.begin(), p.end()).size() == 4) ++squares;
  CHECK(squares == 1);
}

TEST_CASE("subdivision preserves the boundary") {
  Graph g = cycle_graph(6);
  GeodesicTable t(g);
  Chain b = path_chain({0, 1, 2, 3, 4, 5, 0});
  Chain c = cone(0, b);
  REQUIRE(diameter(c, t) == 3);
  SubdivisionResult s = subdivide_filling(g, t, c, 2);
  CHECK(boundary(s.chain) == b);
  CHECK(diameter(s.chain, t) <= 2);
  CHECK(s.replaced > 0);
  CHECK(l1_norm(s.chain) <= s.max_replacement * l1_norm(c));

  Chain short_only = Chain::single(Tuple{0, 1, 2});
  CHECK(subdivide_filling(g, t, short_only, 2).chain == short_only);
  CHECK(subdivide_filling(g, t, Chain(2), 2).chain.is_zero());

  Chain big = Chain::single(Tuple{0, 2, 4}) + Chain::single(Tuple{0, 1, 2}) + Chain::single(Tuple{2, 3, 4}) +
              Chain::single(Tuple{0, 4, 5});
  try {
    subdivide_filling(g, t, big, 1);
    FAIL("expected TripleNotFillable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TripleNotFillable);
  }
}
