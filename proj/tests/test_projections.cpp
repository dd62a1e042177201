#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/projections.hpp"

using namespace hypcoh;
using fixtures::path_graph;

namespace {

// Path with `count` segments of `len` vertices separated by `gap` edges.
struct Flats {
  Graph g;
  SubgraphFamily family;
};

Flats chain_of_flats(Vertex count, Vertex len, Vertex gap) {
  Vertex n = count * len + (count - 1) * (gap - 1);
  std::vector<std::vector<Vertex>> members;
  for (Vertex k = 0; k < count; ++k) {
    std::vector<Vertex> m;
    for (Vertex i = 0; i < len; ++i) m.push_back(k * (len + gap - 1) + i);
    members.push_back(m);
  }
  return {path_graph(n), make_family(n, members, true)};
}

// Random connected subsets of a tree, grown from random roots into unused vertices.
SubgraphFamily random_subtrees(std::mt19937_64& rng, const Graph& g, std::size_t count) {
  std::vector<char> used(g.size(), 0);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t k = 0; k < count; ++k) {
    Vertex root = Vertex(rng() % g.size());
    if (used[root]) continue;
    std::vector<Vertex> m{root};
    used[root] = 1;
    std::size_t want = 1 + rng() % 4;
    for (std::size_t step = 0; step < 20 && m.size() < want; ++step) {
      Vertex from = m[rng() % m.size()];
      const auto& nb = g.neighbors(from);
      Vertex to = nb[rng() % nb.size()];
      if (used[to]) continue;
      // keep a gap so members stay disjoint and non-adjacent
      bool touches = false;
      for (Vertex w : g.neighbors(to))
        if (used[w] && std::find(m.begin(), m.end(), w) == m.end()) touches = true;
      if (touches) continue;
      used[to] = 1;
      m.push_back(to);
    }
    out.push_back(m);
  }
  return make_family(g.size(), out, true);
}

// Independent brute force of the bounded projection and Behrstock constants.
std::pair<Distance, Distance> brute_constants(const Graph& g, const SubgraphFamily& fam) {
  GeodesicTable t(g);
  const std::size_t n = g.size(), M = fam.size();
  auto near = [&](std::size_t k, Vertex v) {
    Distance best = kInfinity;
    for (Vertex y : fam.members[k]) best = std::min(best, t.dist(v, y));
    std::vector<Vertex> s;
    for (Vertex y : fam.members[k])
      if (t.dist(v, y) == best) s.push_back(y);
    return s;
  };
  auto proj_set = [&](std::size_t k, const std::vector<Vertex>& a) {
    std::vector<Vertex> s;
    for (Vertex v : a)
      for (Vertex y : near(k, v)) s.push_back(y);
    return s;
  };
  auto diam = [&](std::vector<Vertex> a, const std::vector<Vertex>& b) {
    a.insert(a.end(), b.begin(), b.end());
    Distance d = 0;
    for (Vertex x : a)
      for (Vertex y : a) d = std::max(d, t.dist(x, y));
    return d;
  };
  Distance b1 = 0, b3 = 0;
  for (std::size_t W = 0; W < M; ++W) {
    for (Vertex x = 0; x < n; ++x) b1 = std::max(b1, diam(near(W, x), {}));
    for (std::size_t Y = 0; Y < M; ++Y) {
      if (Y == W) continue;
      b1 = std::max(b1, diam(proj_set(W, fam.members[Y]), {}));
      for (Vertex x = 0; x < n; ++x)
        b3 = std::max(b3, std::min(diam(proj_set(W, fam.members[Y]), near(W, x)),
                                   diam(proj_set(Y, fam.members[W]), near(Y, x))));
    }
  }
  return {b1, b3};
}

std::vector<Cochain> coboundary_locals(std::mt19937_64& rng, const SubgraphFamily& fam, std::size_t dim = 1) {
  std::vector<Cochain> locals;
  for (const auto& m : fam.members) {
    Cochain::Table tab;
    for (Vertex i = 0; i < m.size(); ++i) {
      Coeff c(dim);
      for (auto& x : c) x = ratio(long(rng() % 11) - 5, long(1 + rng() % 3));
      tab[Tuple{i}] = c;
    }
    locals.push_back(coboundary(Cochain::from_table(0, m.size(), dim, tab)));
  }
  return locals;
}

bool matches_locals(const CocycleExtension& ext, const SubgraphFamily& fam, const std::vector<Cochain>& locals) {
  for (std::size_t k = 0; k < fam.size(); ++k) {
    const auto& m = fam.members[k];
    for (Vertex i = 0; i < m.size(); ++i)
      for (Vertex j = 0; j < m.size(); ++j)
        if (ext.phi(Tuple{m[i], m[j]}) != locals[k](Tuple{i, j})) {
          MESSAGE("member " << k << " pair " << i << "," << j << " got " << ext.phi(Tuple{m[i], m[j]})[0] << " want "
                            << locals[k](Tuple{i, j})[0]);
          return false;
        }
  }
  return true;
}

}  // namespace

TEST_CASE("nearest point projections on a tree with two subtrees") {
  // Spider: path 0..6 with a leg 3-7-8.
  Graph g = Graph::from_edges(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}, {7, 8}});
  SubgraphFamily fam = make_family(9, {{0, 1}, {5, 6}}, true);
  ProjectionSystem sys = nearest_point_system(g, fam);
  CHECK(sys.project(0, 8) == std::vector<Vertex>{1});
  CHECK(sys.project(1, 8) == std::vector<Vertex>{5});
  CHECK(sys.project(1, 6) == std::vector<Vertex>{6});
  CHECK(sys.project_member(0, 1) == std::vector<Vertex>{1});
  CHECK(sys.d(1, 0, 6) == 1);

  AxiomReport rep = check_axioms(sys);
  CHECK(rep.bounded_projection == 0);
  CHECK(rep.behrstock == 0);
  // d_Y(5,6) = 1 at distance 1.
  CHECK(rep.coarse_lipschitz == Rational(1, 2));
  CHECK(rep.B == Rational(1, 2));
  CHECK(rep.large_projection_sets.empty());
}

TEST_CASE("one member makes the pair axioms vacuous") {
  ProjectionSystem sys = nearest_point_system(path_graph(6), make_family(6, {{2, 3}}, true));
  AxiomReport rep = check_axioms(sys);
  CHECK(rep.behrstock == 0);
  CHECK(rep.strong_behrstock == 0);
  CHECK(rep.strong_holds_at_B);
  CHECK(rep.max_large_projection_count == 0);
  CHECK(rep.large_projection_sets.empty());
}

TEST_CASE("nearest point system errors") {
  CHECK_THROWS_WITH_AS(nearest_point_system(fixtures::cycle_graph(6), make_family(6, {{0, 3}}, true)),
                       doctest::Contains("DisconnectedMember"), Error);
  CHECK_THROWS_AS(nearest_point_system(Graph::from_edges(4, {{0, 1}, {2, 3}}), make_family(4, {{0}}, true)), Error);
  CHECK_THROWS_WITH_AS(
      ProjectionSystem(path_graph(3), make_family(3, {{0, 1}, {1, 2}}, false), {{{0}, {0}, {0}}, {{1}, {1}, {1}}}),
      doctest::Contains("FamilyNotDisjoint"), Error);
  CHECK_THROWS_AS(ProjectionSystem(path_graph(3), make_family(3, {{0}}, true), {{{0}, {1}, {0}}}), Error);
}

TEST_CASE("Rel order on a chain of flats") {
  Flats fl = chain_of_flats(4, 12, 3);
  ProjectionSystem sys = nearest_point_system(fl.g, fl.family);
  AxiomReport rep = check_axioms(sys);
  CHECK(rep.bounded_projection == 0);
  CHECK(rep.behrstock == 0);
  CHECK(rep.coarse_lipschitz == Rational(11, 12));
  CHECK(rep.strong_behrstock == 1);
  CHECK(!rep.strong_holds_at_B);
  // Each inner flat sees the outer two at its opposite ends.
  CHECK(rep.large_projection_sets.at({0, 3}) == std::vector<std::size_t>{1, 2});

  RelOrder r = rel_order(sys, 0, 3, 1);
  CHECK(r.order == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(r.predecessor.at(3) == 2);
  CHECK(r.rank(1) == 1);
  CHECK(!r.contains(4));
  // From the far end the order reverses.
  CHECK(rel_order(sys, 3, 0, 1).order == std::vector<std::size_t>{3, 2, 1, 0});
  // A large constant leaves only the endpoints.
  CHECK(rel_order(sys, 0, 3, 2).order == std::vector<std::size_t>{0, 3});
  CHECK_THROWS_AS(rel_order(sys, 1, 1, 1), Error);
}

TEST_CASE("Rel order detects incomparable members") {
  SubgraphFamily fam = make_family(6, {{0, 1}, {2, 3}, {4, 5}}, true);
  std::vector<std::vector<std::vector<Vertex>>> pi(3, std::vector<std::vector<Vertex>>(6));
  for (Vertex v = 0; v < 6; ++v) {
    pi[0][v] = {v < 4 ? Vertex(0) : Vertex(1)};
    pi[1][v] = {v < 2 ? Vertex(2) : v < 4 ? v : Vertex(3)};
    pi[2][v] = {v < 4 ? Vertex(4) : v};
  }
  ProjectionSystem sys(path_graph(6), fam, pi);
  CHECK_THROWS_WITH_AS(rel_order(sys, 0, 2, 0), doctest::Contains("incomparable"), Error);
}

TEST_CASE("Lipschitz primitive of a 1-cocycle") {
  Graph c6 = fixtures::cycle_graph(6);
  std::vector<Rational> g{0, 2, 3, -1, 4, 1};
  Cochain phi = coboundary(Cochain::from_values(g));
  LipschitzPrimitive p = lipschitz_primitive(c6, phi, 2);
  for (Vertex x = 0; x < 6; ++x) CHECK(p.f[x] == Coeff{g[x] - g[2]});
  CHECK(p.lipschitz == 5);

  Cochain bad = Cochain::from_function(1, 6, 1, [](const Tuple& t) { return Coeff{Rational(t[0] * t[1])}; });
  CHECK_THROWS_WITH_AS(lipschitz_primitive(c6, bad, 0), doctest::Contains("NotACocycle"), Error);
  CHECK_THROWS_AS(lipschitz_primitive(c6, phi, 6), Error);
}

TEST_CASE("extending cocycles along a chain of flats") {
  std::mt19937_64 rng(5);
  Flats fl = chain_of_flats(4, 12, 3);
  ProjectionSystem sys = nearest_point_system(fl.g, fl.family);
  for (std::size_t dim : {1, 2}) {
    auto locals = coboundary_locals(rng, fl.family, dim);
    CocycleExtension ext = extend_cocycle(sys, locals, 0);
    CHECK(ext.B == 1);
    CHECK(ext.rho[0] == 1);
    CHECK(ext.rho[3] == 4);
    CHECK(ext.parent[1] == 0);
    CHECK(ext.parent[2] == 1);
    CHECK(ext.parent[3] == 2);
    CHECK(ext.prefix_checked >= 2);
    CHECK(ext.prefix_failures == 0);
    CHECK(matches_locals(ext, fl.family, locals));
    // Singletons were added for the gap vertices.
    CHECK(ext.family.size() == 4 + 3 * 2);
  }
  CHECK_THROWS_AS(extend_cocycle(sys, {}, 0), Error);
}

TEST_CASE("property: tree systems") {
  std::mt19937_64 rng(17);
  int extended = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Vertex n = Vertex(6 + rng() % 10);
    Graph g = fixtures::random_tree(rng, n);
    SubgraphFamily fam = random_subtrees(rng, g, 1 + rng() % 4);
    CAPTURE(trial);
    ProjectionSystem sys = nearest_point_system(g, fam);
    AxiomReport rep = check_axioms(sys);
    auto [b1, b3] = brute_constants(g, fam);
    CHECK(rep.bounded_projection == b1);
    CHECK(rep.behrstock == b3);
    // Gates in trees are unique.
    CHECK(b1 == 0);

    // The reported constant satisfies coarse Lipschitz everywhere.
    GeodesicTable t(g);
    for (std::size_t Y = 0; Y < sys.members(); ++Y)
      for (Vertex x = 0; x < n; ++x)
        for (Vertex y = 0; y < n; ++y) CHECK(Rational(sys.d(Y, x, y)) <= rep.B * t.dist(x, y) + rep.B);

    auto locals = coboundary_locals(rng, fam);
    try {
      CocycleExtension ext = extend_cocycle(sys, locals, 0);
      CHECK(matches_locals(ext, fam, locals));
      ++extended;
    } catch (const Error& e) {
      CHECK((e.code() == Errc::OrderNotTotal || e.code() == Errc::InductionGap));
    }
  }
  CHECK(extended >= 30);
}
