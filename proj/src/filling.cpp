#include "hypcoh/filling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hypcoh/error.hpp"

namespace hypcoh {

namespace {

// (x,x,z) and (x,y,y) have the same boundary as (x,x,x) and (y,y,y).
Tuple canonical_triple(const Tuple& t) {
  if (t[0] == t[1]) return Tuple{t[0], t[0], t[0]};
  if (t[1] == t[2]) return Tuple{t[1], t[1], t[1]};
  return t;
}

// Boundary of a triple as (pair, coefficient) with repeated faces merged.
std::vector<std::pair<Tuple, int>> triple_faces(const Tuple& t) {
  std::vector<std::pair<Tuple, int>> out;
  for (std::size_t i = 0; i < 3; ++i) {
    Tuple f = t.face(i);
    int s = i % 2 == 0 ? 1 : -1;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == f; });
    if (it == out.end())
      out.emplace_back(f, s);
    else
      it->second += s;
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }), out.end());
  return out;
}

template <class V>
V pair_value(const std::map<Tuple, V>& y, const Tuple& t) {
  auto it = y.find(t);
  return it == y.end() ? V(0) : it->second;
}

template <class V>
V apply_dual(const std::map<Tuple, V>& y, const Tuple& t) {
  V s = 0;
  for (const auto& [f, c] : triple_faces(t)) s += c * pair_value(y, f);
  return s;
}

Rational apply_dual(const DualCertificate& y, const Chain& b) {
  Rational s = 0;
  for (const auto& [p, a] : b.terms()) s += a * pair_value(y, p);
  return s;
}

// Triples of diameter <= R having some pair of supp(y) as a face.
template <class V, class F>
void for_each_touching_triple(const GeodesicTable& t, unsigned R, const std::map<Tuple, V>& y, F&& f) {
  const Vertex n = Vertex(t.size());
  for (const auto& [p, val] : y) {
    if (val == 0) continue;
    Vertex a = p[0], c = p[1];
    if (t.dist(a, c) > R) continue;
    for (Vertex w = 0; w < n; ++w) {
      if (t.dist(w, a) > R || t.dist(w, c) > R) continue;
      f(Tuple{w, a, c});
      f(Tuple{a, w, c});
      f(Tuple{a, c, w});
    }
  }
}

class PoolLp {
 public:
  /// With `only`, faces outside it get no row (they are left unbalanced).
  PoolLp(const Chain& b, const std::vector<Tuple>& pool, const std::set<Tuple>* only = nullptr) : pool_(pool) {
    auto keep = [&](const Tuple& f) { return !only || only->count(f); };
    for (const auto& [p, a] : b.terms()) row(p);
    for (const Tuple& tr : pool_)
      for (const auto& [f, c] : triple_faces(tr))
        if (keep(f)) row(f);
    problem_ = LpProblem(rows_.size());
    for (const auto& [p, a] : b.terms()) problem_.rhs[rows_.at(p)] = a;
    for (const Tuple& tr : pool_) {
      LpProblem::Column plus, minus;
      for (const auto& [f, c] : triple_faces(tr)) {
        if (!keep(f)) continue;
        plus.emplace_back(rows_.at(f), Rational(c));
        minus.emplace_back(rows_.at(f), Rational(-c));
      }
      problem_.add_column(1, plus);
      problem_.add_column(1, minus);
    }
  }

  LpProblem& problem() { return problem_; }

  DualCertificate dual(const LpOutcome& out) const {
    DualCertificate y;
    for (const auto& [p, i] : rows_)
      if (i < out.dual.size() && sgn(out.dual[i]) != 0) y.emplace(p, out.dual[i]);
    return y;
  }

  std::map<Tuple, double> dual(const ApproxOutcome& out) const {
    std::map<Tuple, double> y;
    for (const auto& [p, i] : rows_)
      if (i < out.dual.size() && std::abs(out.dual[i]) > 1e-12) y.emplace(p, out.dual[i]);
    return y;
  }

  Chain witness(const LpOutcome& out) const {
    Chain c(2);
    for (std::size_t k = 0; k < pool_.size(); ++k) c.add(pool_[k], Rational(out.primal[2 * k] - out.primal[2 * k + 1]));
    return c;
  }

 private:
  std::size_t row(const Tuple& p) { return rows_.emplace(p, rows_.size()).first->second; }

  std::vector<Tuple> pool_;
  std::map<Tuple, std::size_t> rows_;
  LpProblem problem_;
};

bool is_integral(const LpOutcome& out, std::size_t cols, std::size_t* frac) {
  for (std::size_t j = 0; j < cols; ++j)
    if (out.primal[j].get_den() != 1) {
      *frac = j;
      return false;
    }
  return true;
}

Rational ceil_q(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c);
}

Rational floor_q(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

// Depth-first branch and bound over the columns of an LP.
void branch_and_bound(const LpProblem& base, std::optional<LpOutcome>& best, std::size_t& nodes) {
  if (++nodes > 20000) throw Error(Errc::GraphTooLarge, "integer filling search exceeded its node budget");
  LpOutcome out = solve(base);
  if (out.status != LpStatus::Optimal) return;
  if (best && ceil_q(out.objective) >= best->objective) return;
  std::size_t j = 0;
  const std::size_t structural = base.lower.size();
  if (is_integral(out, structural, &j)) {
    best = out;
    return;
  }
  Rational v = out.primal[j];
  {
    LpProblem up = base;
    up.lower[j] = ceil_q(v);
    branch_and_bound(up, best, nodes);
  }
  {
    LpProblem down = base;
    std::size_t r = down.rows++;
    down.rhs.push_back(floor_q(v));
    down.columns[j].emplace_back(r, 1);
    down.add_column(0, {{r, 1}});
    branch_and_bound(down, best, nodes);
  }
}

// Relaxation on the pairs S inside N_k(supp b): rows only for S, columns all
// triples touching S. Its dual vanishes off S, so it certifies globally; if its
// optimum has boundary exactly b it is a global optimum. k grows by R until the
// optimum closes up, the neighbourhood stops growing or the pool gets too big.
bool local_filling(const Graph& g, const GeodesicTable& t, const Chain& b, unsigned R, const FillingOptions& opts,
                   FillingResult& res) {
  for (const auto& [p, a] : b.terms())
    if (t.dist(p[0], p[1]) > R) return false;
  const Vertex n = Vertex(g.size());
  const std::size_t cap = std::min<std::size_t>(opts.max_columns, 6000);
  const std::vector<Vertex> supp = b.support_vertices();
  std::size_t last = 0;
  for (unsigned k = R;; k += R) {
    std::vector<Vertex> verts;
    for (Vertex v = 0; v < n; ++v)
      for (Vertex s : supp)
        if (t.dist(v, s) <= k) {
          verts.push_back(v);
          break;
        }
    if (verts.size() == last) return false;
    last = verts.size();
    std::set<Tuple> S;
    for (Vertex x : verts)
      for (Vertex y : verts)
        if (t.dist(x, y) <= R) S.insert(Tuple{x, y});
    std::set<Tuple> cols;
    for (const Tuple& p : S) {
      Vertex a = p[0], c = p[1];
      for (Vertex w = 0; w < n; ++w) {
        if (t.dist(w, a) > R || t.dist(w, c) > R) continue;
        cols.insert(canonical_triple(Tuple{w, a, c}));
        cols.insert(canonical_triple(Tuple{a, w, c}));
        cols.insert(canonical_triple(Tuple{a, c, w}));
      }
      if (cols.size() > cap) return false;
    }
    std::vector<Tuple> pool(cols.begin(), cols.end());
    PoolLp lp(b, pool, &S);
    LpOutcome out = solve(lp.problem());
    ++res.lp_rounds;
    res.columns = pool.size();
    if (out.status != LpStatus::Optimal) {
      res.feasible = false;
      res.certificate = lp.dual(out);
      return true;
    }
    Chain w = lp.witness(out);
    if (boundary(w) == b) {
      res.feasible = true;
      res.value = out.objective;
      res.witness = std::move(w);
      res.certificate = lp.dual(out);
      return true;
    }
  }
}

}  // namespace

FillingResult filling_norm(const Graph& g, const GeodesicTable& t, const Chain& b, unsigned R,
                           const FillingOptions& opts) {
  if (b.degree() != 1) throw Error(Errc::InvalidArgument, "filling norm expects a 1-chain");
  if (t.size() != g.size()) throw Error(Errc::InvalidArgument, "geodesic table does not match graph");
  for (Vertex v : b.support_vertices())
    if (v >= g.size()) throw Error(Errc::VertexOutOfRange, "chain vertex " + std::to_string(v));
  FillingResult res;
  if (b.is_zero()) {
    res.feasible = true;
    return res;
  }

  if (!opts.integer && local_filling(g, t, b, R, opts, res)) return res;

  std::set<Tuple> pool;
  {
    std::vector<Vertex> supp = b.support_vertices();
    unsigned reach = R;
    std::vector<bool> near(g.size(), false);
    for (Vertex v = 0; v < g.size(); ++v)
      for (Vertex s : supp)
        if (t.dist(v, s) <= reach) {
          near[v] = true;
          break;
        }
    std::vector<Vertex> verts;
    for (Vertex v = 0; v < g.size(); ++v)
      if (near[v]) verts.push_back(v);
    for (Vertex x : verts)
      for (Vertex y : verts) {
        if (t.dist(x, y) > R) continue;
        for (Vertex z : verts)
          if (t.dist(x, z) <= R && t.dist(y, z) <= R) pool.insert(canonical_triple(Tuple{x, y, z}));
        if (pool.size() > opts.max_columns)
          throw Error(Errc::GraphTooLarge, "initial triple pool exceeds " + std::to_string(opts.max_columns));
      }
  }

  auto grow = [&](std::vector<std::pair<double, Tuple>>& violated) {
    std::sort(violated.begin(), violated.end(), [](const auto& a, const auto& c) {
      if (a.first != c.first) return a.first > c.first;
      return a.second < c.second;
    });
    std::size_t take = std::min<std::size_t>(violated.size(), 2000);
    for (std::size_t i = 0; i < take; ++i) pool.insert(violated[i].second);
    if (pool.size() > opts.max_columns)
      throw Error(Errc::GraphTooLarge, "triple pool exceeds " + std::to_string(opts.max_columns));
  };

  // Floating-point rounds first, so the exact loop below usually needs one.
  std::vector<std::size_t> hint;
  for (int round = 0; round < 100; ++round) {
    std::vector<Tuple> cols(pool.begin(), pool.end());
    PoolLp lp(b, cols);
    ApproxOutcome out = solve_approx(lp.problem());
    hint.clear();
    if (!out.ok) break;
    ++res.lp_rounds;
    hint = out.basis;
    std::map<Tuple, double> y = lp.dual(out);
    bool feasible = out.status == LpStatus::Optimal;
    std::vector<std::pair<double, Tuple>> violated;
    std::unordered_set<Tuple, TupleHash> seen;
    for_each_touching_triple(t, R, y, [&](const Tuple& raw) {
      Tuple tr = canonical_triple(raw);
      if (pool.count(tr) || !seen.insert(tr).second) return;
      double v = std::abs(apply_dual(y, tr));
      if (feasible ? v > 1 + 1e-7 : v > 1e-7) violated.emplace_back(v, tr);
    });
    if (violated.empty()) break;
    hint.clear();
    grow(violated);
  }

  for (;;) {
    ++res.lp_rounds;
    std::vector<Tuple> cols(pool.begin(), pool.end());
    PoolLp lp(b, cols);
    LpOutcome out = solve(lp.problem(), hint);
    hint.clear();
    DualCertificate y = lp.dual(out);
    bool feasible = out.status == LpStatus::Optimal;

    std::vector<std::pair<double, Tuple>> violated;
    std::unordered_set<Tuple, TupleHash> seen;
    for_each_touching_triple(t, R, y, [&](const Tuple& raw) {
      Tuple tr = canonical_triple(raw);
      if (pool.count(tr) || !seen.insert(tr).second) return;
      Rational v = abs(apply_dual(y, tr));
      if (feasible ? v > 1 : sgn(v) != 0) violated.emplace_back(v.get_d(), tr);
    });
    if (violated.empty()) {
      res.feasible = feasible;
      res.certificate = std::move(y);
      res.columns = cols.size();
      if (feasible) {
        res.value = out.objective;
        res.witness = lp.witness(out);
        if (opts.integer && !all_integer(res.witness)) {
          std::optional<LpOutcome> best;
          std::size_t nodes = 0;
          branch_and_bound(lp.problem(), best, nodes);
          if (!best) throw Error(Errc::Internal, "no integer filling over the column pool");
          res.witness = lp.witness(*best);
          res.value = best->objective;
        }
      }
      return res;
    }
    grow(violated);
  }
}

bool verify_filling(const GeodesicTable& t, const Chain& b, unsigned R, const FillingResult& r, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (b.is_zero()) return r.feasible && sgn(r.value) == 0 ? true : fail("zero chain must have value 0");
  Rational yb = apply_dual(r.certificate, b);
  bool bad = false;
  std::string msg;
  for_each_touching_triple(t, R, r.certificate, [&](const Tuple& tr) {
    if (bad) return;
    Rational v = apply_dual(r.certificate, tr);
    if (r.feasible ? abs(v) > 1 : sgn(v) != 0) {
      bad = true;
      msg = "dual violated at triple " + to_string(tr);
    }
  });
  if (bad) return fail(msg);
  if (!r.feasible) return sgn(yb) != 0 ? true : fail("Farkas functional vanishes on b");
  if (boundary(r.witness) != b) return fail("witness boundary differs from b");
  if (diameter(r.witness, t) > R) return fail("witness has diameter above R");
  if (l1_norm(r.witness) != r.value) return fail("witness norm differs from value");
  // Integer fillings need not meet the rational dual bound.
  if (yb > r.value) return fail("dual objective exceeds primal value");
  if (all_integer(r.witness) || yb == r.value) return true;
  return fail("dual objective differs from value");
}

FillingResult homological_area(const Graph& g, const GeodesicTable& t, const std::vector<Vertex>& path, unsigned R,
                               const FillingOptions& opts) {
  if (path.empty() || path.front() != path.back()) throw Error(Errc::NotACycle, "path is not closed");
  return filling_norm(g, t, path_chain(path), R, opts);
}

// ---------------------------------------------------------------------------
// Closed paths

namespace {

std::vector<Vertex> canonical_cycle(const std::vector<Vertex>& cyc) {
  std::vector<Vertex> best = cyc;
  const std::size_t L = cyc.size();
  std::vector<Vertex> rev(cyc.rbegin(), cyc.rend());
  std::vector<Vertex> cand(L);
  const std::vector<Vertex>* sources[] = {&cyc, &rev};
  for (const std::vector<Vertex>* src : sources)
    for (std::size_t s = 0; s < L; ++s) {
      for (std::size_t i = 0; i < L; ++i) cand[i] = (*src)[(s + i) % L];
      if (cand < best) best = cand;
    }
  return best;
}

}  // namespace

std::vector<std::vector<Vertex>> closed_paths(const Graph& g, std::size_t max_len, const std::vector<Vertex>& basepoints) {
  std::vector<Vertex> starts = basepoints;
  if (starts.empty())
    for (Vertex v = 0; v < g.size(); ++v) starts.push_back(v);
  std::set<std::vector<Vertex>> seen;
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> walk;
  std::function<void(Vertex)> dfs = [&](Vertex s) {
    Vertex cur = walk.back();
    if (walk.size() >= 3 && g.adjacent(cur, s)) {
      std::vector<Vertex> key = canonical_cycle(walk);
      if (seen.insert(key).second) {
        std::vector<Vertex> p = key;
        p.push_back(key.front());
        out.push_back(std::move(p));
      }
    }
    if (walk.size() >= max_len) return;
    for (Vertex w : g.neighbors(cur)) {
      walk.push_back(w);
      dfs(s);
      walk.pop_back();
    }
  };
  for (Vertex s : starts) {
    if (s >= g.size()) throw Error(Errc::VertexOutOfRange, "basepoint out of range");
    if (max_len >= 2)
      for (Vertex w : g.neighbors(s)) {
        std::vector<Vertex> key = canonical_cycle({s, w});
        if (seen.insert(key).second) out.push_back({key[0], key[1], key[0]});
      }
    walk = {s};
    dfs(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

IsoperimetricProfile isoperimetric_profile(const Graph& g, const GeodesicTable& t, unsigned R,
                                           std::size_t exhaustive_upto, std::size_t samples, std::uint64_t seed,
                                           const FillingOptions& opts) {
  if (R < 1) throw Error(Errc::InvalidArgument, "R must be >= 1");
  IsoperimetricProfile prof;
  prof.R = R;
  prof.exhaustive_upto = exhaustive_upto;
  std::map<Chain::Terms, std::optional<Rational>> cache;
  auto record = [&](const std::vector<Vertex>& path) {
    std::size_t len = path.size() - 1;
    Chain b = path_chain(path);
    auto it = cache.find(b.terms());
    if (it == cache.end()) {
      FillingResult r = filling_norm(g, t, b, R, opts);
      it = cache.emplace(b.terms(), r.feasible ? std::optional<Rational>(r.value) : std::nullopt).first;
    }
    ++prof.paths_examined;
    if (!it->second) {
      ++prof.unfillable[len];
      return;
    }
    auto [e, fresh] = prof.entries.emplace(len, *it->second);
    if (!fresh && *it->second > e->second) e->second = *it->second;
  };
  for (const auto& p : closed_paths(g, exhaustive_upto)) record(p);

  if (g.size() > 0 && samples > 0) {
    std::mt19937_64 rng(seed);
    std::size_t max_walk = std::max<std::size_t>(4, 2 * exhaustive_upto);
    for (std::size_t k = 0; k < samples; ++k) {
      Vertex start = Vertex(rng() % g.size());
      if (g.neighbors(start).empty()) continue;
      std::size_t steps = 1 + rng() % max_walk;
      std::vector<Vertex> path{start};
      for (std::size_t i = 0; i < steps; ++i) {
        const auto& nb = g.neighbors(path.back());
        path.push_back(nb[rng() % nb.size()]);
      }
      std::vector<Vertex> back = t.geodesic(path.back(), start);
      path.insert(path.end(), back.begin() + 1, back.end());
      record(path);
      ++prof.sampled_count;
    }
  }
  return prof;
}

IpiReport linear_ipi_constant(const Graph& g, const GeodesicTable& t, unsigned R, const CycleSource& src,
                              const FillingOptions& opts) {
  if (R < 1) throw Error(Errc::InvalidArgument, "R must be >= 1");
  IpiReport rep;
  std::set<Chain::Terms> done;
  auto consider = [&](const Chain& b) {
    if (b.is_zero() || !done.insert(b.terms()).second) return;
    ++rep.examined;
    if (!boundary(b).is_zero() || diameter(b, t) > R) {
      ++rep.unfillable;
      return;
    }
    FillingResult r = filling_norm(g, t, b, R, opts);
    if (!r.feasible) {
      ++rep.unfillable;
      return;
    }
    Rational q = r.value / l1_norm(b);
    if (!rep.constant || q > *rep.constant) {
      rep.constant = q;
      rep.argmax = b;
    }
  };
  for (const auto& c : src.chains) consider(c);
  for (const auto& p : src.paths) consider(path_chain(p));
  return rep;
}

// ---------------------------------------------------------------------------
// Subdivision

SubdivisionResult subdivide_filling(const Graph& g, const GeodesicTable& t, const Chain& c, unsigned R,
                                    const FillingOptions& opts) {
  if (c.degree() != 2) throw Error(Errc::InvalidArgument, "subdivision expects a 2-chain");
  if (diameter(c, t) > R + 1) throw Error(Errc::InvalidArgument, "chain diameter exceeds R+1");
  if (diameter(boundary(c), t) > R) throw Error(Errc::InvalidArgument, "boundary of the chain has diameter above R");
  SubdivisionResult res;
  auto side = [&](Vertex u, Vertex v) {
    Chain s(1);
    if (t.dist(u, v) == R + 1) {
      std::vector<Vertex> p = t.geodesic(u, v);
      Vertex m = p[p.size() / 2];
      s.add(Tuple{u, m}, 1);
      s.add(Tuple{m, v}, 1);
    } else {
      s.add(Tuple{u, v}, 1);
    }
    return s;
  };
  std::map<Tuple, Chain> replacement;
  for (const auto& [tr, a] : c.terms()) {
    if (tuple_diameter(tr, t) <= R) {
      res.chain.add(tr, a);
      continue;
    }
    auto it = replacement.find(tr);
    if (it == replacement.end()) {
      Chain bt = side(tr[1], tr[2]) - side(tr[0], tr[2]) + side(tr[0], tr[1]);
      FillingResult f = filling_norm(g, t, bt, R, opts);
      if (!f.feasible) throw Error(Errc::TripleNotFillable, "subdivided boundary of " + to_string(tr) + " is not R-fillable");
      if (f.value > res.max_replacement) res.max_replacement = f.value;
      it = replacement.emplace(tr, f.witness).first;
      ++res.replaced;
    }
    res.chain.add(it->second, a);
  }
  return res;
}

}  // namespace hypcoh
