#include "doctest.h"

#include <algorithm>
#include <random>

#include "hypcoh/error.hpp"
#include "hypcoh/lp.hpp"

using namespace hypcoh;

TEST_CASE("lp: single variable equality") {
  LpProblem p(1);
  p.rhs[0] = 1;
  p.add_column(1, {{0, 1}});
  LpOutcome out = solve(p);
  CHECK(out.status == LpStatus::Optimal);
  CHECK(out.primal[0] == 1);
  CHECK(out.objective == 1);
  CHECK(verify_certificate(p, out));
}

TEST_CASE("lp: infeasible with Farkas ray") {
  LpProblem p(1);
  p.rhs[0] = -1;
  p.add_column(0, {{0, 1}});
  LpOutcome out = solve(p);
  CHECK(out.status == LpStatus::Infeasible);
  CHECK(out.dual[0] < 0);
  CHECK(verify_certificate(p, out));
}

TEST_CASE("lp: unbounded is reported") {
  LpProblem p(1);
  p.rhs[0] = 0;
  p.add_column(-1, {{0, 1}});
  p.add_column(0, {{0, -1}});
  CHECK_THROWS_AS(solve(p), Error);
}

TEST_CASE("lp: lower bounds shift the feasible region") {
  LpProblem p(1);
  p.rhs[0] = 5;
  p.add_column(1, {{0, 1}}, 2);
  p.add_column(3, {{0, 1}}, 1);
  LpOutcome out = solve(p);
  REQUIRE(out.status == LpStatus::Optimal);
  CHECK(out.objective == 4 + 3);
  CHECK(verify_certificate(p, out));
}

TEST_CASE("lp: tampered certificates are rejected") {
  LpProblem p(2);
  p.rhs = {Rational(3), Rational(1)};
  p.add_column(1, {{0, 1}, {1, 1}});
  p.add_column(2, {{0, 1}});
  p.add_column(1, {{1, 1}});
  LpOutcome out = solve(p);
  REQUIRE(out.status == LpStatus::Optimal);
  LpOutcome bad = out;
  bad.objective += 1;
  CHECK_FALSE(verify_certificate(p, bad));
  bad = out;
  bad.dual[0] += 5;
  CHECK_FALSE(verify_certificate(p, bad));
}

TEST_CASE("lp: permuted columns give the same optimum") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t m = 2 + rng() % 5, n = m + rng() % 8;
    LpProblem p(m);
    std::vector<Rational> x0(n);
    for (auto& x : x0) x = ratio(long(rng() % 4), 1 + long(rng() % 3));
    std::vector<LpProblem::Column> cols(n);
    std::vector<Rational> cost(n);
    for (std::size_t j = 0; j < n; ++j) {
      cost[j] = int(rng() % 7);
      for (std::size_t i = 0; i < m; ++i)
        if (rng() % 2) cols[j].emplace_back(i, Rational(int(rng() % 7) - 3));
    }
    for (std::size_t j = 0; j < n; ++j)
      for (auto& [i, a] : cols[j]) p.rhs[i] += a * x0[j];
    for (std::size_t j = 0; j < n; ++j) p.add_column(cost[j], cols[j]);
    LpOutcome a = solve(p);
    REQUIRE(a.status == LpStatus::Optimal);

    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;
    std::shuffle(perm.begin(), perm.end(), rng);
    LpProblem q(m);
    q.rhs = p.rhs;
    for (std::size_t j : perm) q.add_column(cost[j], cols[j]);
    LpOutcome b = solve(q);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.objective == b.objective);
  }
}
