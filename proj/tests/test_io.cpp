#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcoh/cochain.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/io.hpp"
#include "hypcoh/pipeline.hpp"

using namespace hypcoh;

TEST_CASE("graph files") {
  Graph g = parse_graph("# hexagon\ngraph 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 1\n1 0\n");
  CHECK(g == fixtures::cycle_graph(6));
  CHECK(format_graph(g).rfind("graph 6\n0 1\n0 5\n", 0) == 0);
  CHECK(parse_graph(format_graph(g)) == g);
  CHECK(parse_graph("graph 3\n").edge_count() == 0);

  CHECK_THROWS_WITH_AS(parse_graph(""), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_graph("grph 3\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_graph("graph 3\n0 1\n1 3\n"), doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(parse_graph("graph 3\n0 0\n"), doctest::Contains("self-loop"), Error);
  CHECK_THROWS_WITH_AS(parse_graph("graph 3\n0 x\n"), doctest::Contains("bad number"), Error);
  CHECK_THROWS_WITH_AS(parse_graph("graph 3\n0 1 2\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_AS(parse_graph("graph -3\n"), Error);
}

TEST_CASE("family files") {
  SubgraphFamily f = parse_family("0 1\n\n3 2\n0 1\n", 5);
  CHECK(f.size() == 3);
  CHECK(f.members[1] == std::vector<Vertex>{2, 3});
  CHECK(!f.disjoint);
  SubgraphFamily d = parse_family("0 1\n3 2  # second\n", 5);
  CHECK(d.disjoint);
  CHECK(parse_family(format_family(d), 5).members == d.members);
  CHECK(parse_family("", 4).size() == 0);
  CHECK_THROWS_WITH_AS(parse_family("0 1\n0 7\n", 5), doctest::Contains("line 2"), Error);
}

TEST_CASE("chain files") {
  Chain c = parse_chain("chain 1\n1 0 1\n1 1 2\n-1 0 2\n2/4 0 1\n", 3);
  CHECK(c.coefficient(Tuple{0, 1}) == ratio(3, 2));
  CHECK(c.coefficient(Tuple{0, 2}) == -1);
  CHECK(parse_chain(format_chain(c), 3) == c);
  CHECK(format_chain(c).rfind("chain 1\n3/2 0 1\n", 0) == 0);
  Chain z = parse_chain("chain 2\n1 0 1 2\n-1 0 1 2\n", 3);
  CHECK(z.is_zero());
  CHECK(z.degree() == 2);

  CHECK_THROWS_WITH_AS(parse_chain("chain 3\n", 3), doctest::Contains("degree"), Error);
  CHECK_THROWS_WITH_AS(parse_chain("chain 1\n1 0\n", 3), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_chain("chain 1\n1/0 0 1\n", 3), doctest::Contains("bad coefficient"), Error);
  CHECK_THROWS_WITH_AS(parse_chain("chain 1\nx 0 1\n", 3), doctest::Contains("bad coefficient"), Error);
  CHECK_THROWS_WITH_AS(parse_chain("chain 1\n1 0 9\n", 3), doctest::Contains("out of range"), Error);
}

TEST_CASE("property: file round trips") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Vertex n = Vertex(1 + rng() % 12);
    Graph g = fixtures::random_graph(rng, n, 0.3);
    CHECK(parse_graph(format_graph(g)) == g);

    Chain c(int(rng() % 3));
    for (int k = 0; k < 8; ++k) {
      Vertex vs[3] = {Vertex(rng() % n), Vertex(rng() % n), Vertex(rng() % n)};
      c.add(Tuple::from(vs, std::size_t(c.degree()) + 1), ratio(long(rng() % 21) - 10, long(1 + rng() % 4)));
    }
    CHECK(parse_chain(format_chain(c), n) == c);

    GeodesicTable t(fixtures::complete_graph(n));
    int degree = int(rng() % 3);
    Cochain f = random_cochain(rng(), t, degree, kInfinity, 1 + rng() % 2);
    Cochain back = parse_cochain(format_cochain(f, t), n);
    CHECK(!first_difference(f, back));
  }
}

TEST_CASE("reports") {
  Report r;
  r.add("value", ratio(4, 1));
  r.add("slim", std::string("0"));
  r.add("ok", true);
  r.add("count", std::size_t(3));
  CHECK(r.machine() == "value=4/1\nslim=0\nok=true\ncount=3\n");
  CHECK(r.human() == "value  4/1\nslim   0\nok     true\ncount  3\n");
  CHECK(r.at("ok") == "true");
  CHECK(r.has("count"));
  CHECK_THROWS_AS(r.at("missing"), Error);
}
