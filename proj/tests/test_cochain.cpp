#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcoh/cochain.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/filling.hpp"

using namespace hypcoh;
using fixtures::complete_graph;
using fixtures::cycle_graph;
using fixtures::grid_graph;
using fixtures::path_graph;

namespace {

Coeff one(long n, long d = 1) { return Coeff{ratio(n, d)}; }

Chain random_chain(std::mt19937_64& rng, std::size_t n, int degree, std::size_t terms) {
  Chain c(degree);
  for (std::size_t i = 0; i < terms; ++i) {
    Tuple t;
    t.size = std::uint8_t(degree + 1);
    for (int j = 0; j <= degree; ++j) t.v[j] = Vertex(rng() % n);
    c.add(t, ratio(long(rng() % 11) - 5, long(rng() % 3) + 1));
  }
  return c;
}

bool cobounds(const Cochain& g, const Cochain& f, const GeodesicTable& t) {
  return !first_difference(coboundary(g), f, t, kInfinity);
}

}  // namespace

TEST_CASE("coboundary of degree-0 cochains") {
  Graph p3 = path_graph(3);
  Cochain c = Cochain::from_values({5, 5, 5});
  Cochain dc = coboundary(c);
  for (Vertex x = 0; x < 3; ++x)
    for (Vertex y = 0; y < 3; ++y) CHECK(is_zero(dc(Tuple{x, y})));

  Cochain g0 = Cochain::from_values({0, 1, 3});
  CHECK(coboundary(g0)(Tuple{0, 2}) == one(3));
  CHECK(coboundary(g0)(Tuple{2, 1}) == one(-2));
}

TEST_CASE("dd = 0 and the pairing adjunction on random instances") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Vertex n = Vertex(2 + rng() % 6);
    Graph g = fixtures::random_graph(rng, n, 0.4);
    GeodesicTable t(g);
    int degree = int(rng() % 2);
    std::size_t dim = 1 + rng() % 2;
    Cochain f = random_cochain(rng(), t, degree, kInfinity, dim);
    Cochain ddf = coboundary(coboundary(f));
    for_each_tuple(t, std::size_t(degree) + 3, kInfinity, [&](const Tuple& q) { REQUIRE(is_zero(ddf(q))); });

    Chain c = random_chain(rng, n, degree + 1, 6);
    CHECK(pairing(coboundary(f), c) == pairing(f, boundary(c)));
  }
}

TEST_CASE("cochain arithmetic, memo and restriction") {
  GeodesicTable t(path_graph(4));
  Cochain a = random_cochain(1, t, 1, kInfinity);
  Cochain b = random_cochain(2, t, 1, kInfinity);
  Cochain s = (a + b) * ratio(1, 2) - ratio(1, 2) * b;
  Cochain m = s.memoized();
  for_each_tuple(t, 2, kInfinity, [&](const Tuple& p) {
    Coeff want = a(p);
    want[0] /= 2;
    CHECK(s(p) == want);
    CHECK(m(p) == want);
    CHECK(m(p) == want);
  });
  CHECK(is_zero((a - a)(Tuple{0, 3})));

  Cochain r = restrict_to(a, {3, 1});
  CHECK(r.vertices() == 2);
  CHECK(r(Tuple{0, 1}) == a(Tuple{3, 1}));
  CHECK_THROWS_AS(r(Tuple{0, 2}), Error);
  CHECK_THROWS_AS(a(Tuple{0, 1, 2}), Error);
  CHECK_THROWS_AS(a + random_cochain(3, t, 2, 1), Error);
  CHECK_THROWS_AS(coboundary(Cochain(3, 4)), Error);
}

TEST_CASE("extension by zero and pullback") {
  GeodesicTable t(path_graph(6));
  Cochain l0 = Cochain::from_table(1, 2, 1, {{Tuple{0, 1}, one(4)}});
  Cochain l1 = Cochain::from_table(1, 3, 1, {{Tuple{2, 0}, one(-1)}});
  Cochain e = extend_by_zero(6, {{0, 1}, {3, 4, 5}}, {l0, l1});
  CHECK(e(Tuple{0, 1}) == one(4));
  CHECK(e(Tuple{5, 3}) == one(-1));
  CHECK(is_zero(e(Tuple{1, 3})));
  CHECK(is_zero(e(Tuple{2, 2})));
  CHECK_THROWS_AS(extend_by_zero(6, {{0, 1}, {1, 2, 3}}, {l0, l1}), Error);

  Cochain g0 = Cochain::from_values({0, 1, 3});
  Cochain pb = pullback(g0, {2, 2, 0, 1});
  CHECK(pb.vertices() == 4);
  CHECK(pb(Tuple{3}) == one(1));
  CHECK(coboundary(pb)(Tuple{2, 0}) == one(3));
}

TEST_CASE("graded norms") {
  GeodesicTable t(path_graph(5));
  Cochain g0 = Cochain::from_values({0, 1, 3, 6, 10});
  Cochain dg = coboundary(g0);
  CHECK(graded_norm(dg, t, 0) == 0);
  CHECK(graded_norm(dg, t, 1) == 4);
  CHECK(graded_norm(dg, t, 2) == 7);
  CHECK(graded_norm(dg, t, kInfinity) == 10);
  CHECK(graded_norm(Cochain(2, 5), t, 3) == 0);
}

TEST_CASE("cochain files round trip") {
  GeodesicTable t(cycle_graph(5));
  Cochain f = random_cochain(9, t, 2, 2, 2);
  std::string text = format_cochain(f, t);
  Cochain back = parse_cochain(text, 5);
  CHECK(back.degree() == 2);
  CHECK(back.dim() == 2);
  CHECK(!first_difference(f, back, t, kInfinity));
  CHECK(format_cochain(back, t) == text);

  Cochain p = parse_cochain("# comment\ncochain 1 1\n0 1 3/2\n1 0 -2\n", 3);
  CHECK(p(Tuple{0, 1}) == one(3, 2));
  CHECK(p(Tuple{1, 0}) == one(-2));
  CHECK(is_zero(p(Tuple{2, 2})));

  CHECK_THROWS_AS(parse_cochain("cochain 1\n", 3), Error);
  CHECK_THROWS_AS(parse_cochain("0 1 2\n", 3), Error);
  CHECK_THROWS_AS(parse_cochain("cochain 1 1\n0 5 1\n", 3), Error);
  CHECK_THROWS_AS(parse_cochain("cochain 1 1\n0 1\n", 3), Error);
  CHECK_THROWS_AS(parse_cochain("cochain 1 1\n0 1 1\n0 1 2\n", 3), Error);
  CHECK_THROWS_AS(parse_cochain("cochain 1 1\n0 x 1\n", 3), Error);
  try {
    parse_cochain("cochain 1 1\n0 1 1/0\n", 3);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}

TEST_CASE("saturation radius") {
  CHECK(smallest_saturating_radius(GeodesicTable(path_graph(5)), 3) == 1u);
  CHECK(smallest_saturating_radius(GeodesicTable(complete_graph(4)), 3) == 1u);
  CHECK(smallest_saturating_radius(GeodesicTable(cycle_graph(6)), 3) == 2u);
  CHECK(smallest_saturating_radius(GeodesicTable(grid_graph(3, 3)), 4) == 2u);
  CHECK(!smallest_saturating_radius(GeodesicTable(cycle_graph(9)), 2));
}

TEST_CASE("construct_primitive on zero and on coboundaries") {
  Graph c6 = cycle_graph(6);
  GeodesicTable t(c6);
  Primitive z = construct_primitive(c6, t, Cochain(2, 6), 2);
  CHECK(z.method == PrimitiveMethod::Extension);
  CHECK(z.extension_norm == std::vector<Rational>{0});
  CHECK(graded_norm(z.g, t, kInfinity) == 0);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    Vertex n = Vertex(4 + rng() % 6);
    Graph g = fixtures::random_connected(rng, n, 0.3);
    GeodesicTable tg(g);
    unsigned R0 = *smallest_saturating_radius(tg, n);
    Cochain g0 = random_cochain(rng(), tg, 1, kInfinity);
    Cochain f = coboundary(g0);
    Primitive p = construct_primitive(g, tg, f, R0);
    CAPTURE(trial);
    CHECK(p.method == PrimitiveMethod::Extension);
    CHECK(cobounds(p.g, f, tg));
    // g1 - g0 is a cocycle.
    Cochain diff = p.g - g0;
    for_each_tuple(tg, 3, kInfinity, [&](const Tuple& s) { REQUIRE(is_zero(coboundary(diff)(s))); });
    // f(a,b,c) = g(a,b) + g(b,c) - g(a,c)
    for_each_tuple(tg, 3, kInfinity, [&](const Tuple& s) {
      Coeff lhs = f(s);
      Rational rhs = p.g(Tuple{s[0], s[1]})[0] + p.g(Tuple{s[1], s[2]})[0] - p.g(Tuple{s[0], s[2]})[0];
      REQUIRE(lhs[0] == rhs);
    });
    CHECK(graded_norm(p.g, tg, R0) == p.extension_norm[0]);
  }
}

TEST_CASE("construct_primitive norm bound with the measured IPI constant") {
  Graph g = grid_graph(3, 3);
  GeodesicTable t(g);
  const unsigned R0 = 2;
  CycleSource src;
  src.paths = closed_paths(g, 8);
  IpiReport ipi = linear_ipi_constant(g, t, R0, src);
  REQUIRE(ipi.constant);
  Rational C = *ipi.constant;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Cochain f = coboundary(random_cochain(seed, t, 1, kInfinity, 2));
    Primitive p = construct_primitive(g, t, f, R0);
    CHECK(cobounds(p.g, f, t));
    for (unsigned R : {R0, R0 + 1}) {
      Rational lhs = graded_norm(p.g, t, R);
      Rational rhs = (C * R0 + 1) * R * graded_norm(f, t, R);
      CAPTURE(R);
      CHECK(lhs <= rhs);
    }
  }
}

TEST_CASE("cone primitive") {
  Graph g = grid_graph(3, 2);
  GeodesicTable t(g);
  Cochain f = coboundary(random_cochain(4, t, 1, kInfinity, 3));
  PrimitiveOptions o;
  o.method = PrimitiveMethod::Cone;
  Primitive p = construct_primitive(g, t, f, 1, o);
  CHECK(p.method == PrimitiveMethod::Cone);
  CHECK(cobounds(p.g, f, t));

  o.method = PrimitiveMethod::Auto;
  o.extension_cap = 3;
  CHECK(construct_primitive(g, t, f, 1, o).method == PrimitiveMethod::Cone);
}

TEST_CASE("construct_primitive errors") {
  Graph c6 = cycle_graph(6);
  GeodesicTable t(c6);
  Cochain bad = random_cochain(3, t, 2, 2);
  CHECK_THROWS_WITH_AS(construct_primitive(c6, t, bad, 2), doctest::Contains("NotACocycle"), Error);

  Cochain f = coboundary(random_cochain(3, t, 1, kInfinity));
  CHECK_THROWS_WITH_AS(construct_primitive(c6, t, f, 1), doctest::Contains("Unsaturated"), Error);

  PrimitiveOptions skip;
  skip.verify_cocycle = false;
  CHECK_THROWS_WITH_AS(construct_primitive(c6, t, bad, 2, skip), doctest::Contains("NotWellDefined"), Error);

  CHECK_THROWS_AS(construct_primitive(c6, t, Cochain(1, 6), 2), Error);
  CHECK_THROWS_AS(construct_primitive(c6, t, f, 0), Error);
  Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  PrimitiveOptions ext;
  ext.method = PrimitiveMethod::Extension;
  CHECK_THROWS_WITH_AS(construct_primitive(two, GeodesicTable(two), Cochain(2, 4), 1, ext),
                       doctest::Contains("Disconnected"), Error);
}
