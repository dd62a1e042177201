#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "hypcoh/cochain.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/lp.hpp"

namespace hypcoh {

namespace {

using SparseRow = std::map<std::size_t, Rational>;

// Incremental row echelon form over Q. Each row carries the f-value of the
// 2-chain it came from, so a dependent triple exposes a 2-cycle on which f
// has to vanish.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  // Returns true if v was independent. On dependence, `residual` is f of the
  // corresponding 2-cycle.
  bool insert(SparseRow v, Coeff val, Coeff* residual) {
    while (!v.empty()) {
      auto last = std::prev(v.end());
      auto it = pivot_.find(last->first);
      if (it == pivot_.end()) {
        Rational lead = last->second;
        for (auto& [c, a] : v) a /= lead;
        for (auto& x : val) x /= lead;
        pivot_.emplace(last->first, rows_.size());
        rows_.push_back({std::move(v), std::move(val)});
        return true;
      }
      const auto& [row, rval] = rows_[it->second];
      Rational coef = last->second;
      for (const auto& [c, a] : row) {
        Rational& x = v[c];
        x -= coef * a;
        if (sgn(x) == 0) v.erase(c);
      }
      for (std::size_t i = 0; i < dim_; ++i) val[i] -= coef * rval[i];
    }
    if (residual) *residual = std::move(val);
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::pair<SparseRow, Coeff>> rows_;
  std::unordered_map<std::size_t, std::size_t> pivot_;
};

struct ShortPairs {
  std::unordered_map<Tuple, std::size_t, TupleHash> index;
  std::vector<Tuple> pairs;
};

ShortPairs short_pairs(const GeodesicTable& t, Distance R0) {
  ShortPairs sp;
  for_each_tuple(t, 2, R0, [&](const Tuple& p) {
    sp.index.emplace(p, sp.pairs.size());
    sp.pairs.push_back(p);
  });
  return sp;
}

SparseRow triple_boundary(const ShortPairs& sp, const Tuple& s) {
  SparseRow r;
  auto add = [&](Tuple p, int sign) {
    Rational& x = r[sp.index.at(p)];
    x += sign;
    if (sgn(x) == 0) r.erase(sp.index.at(p));
  };
  add(Tuple{s[1], s[2]}, 1);
  add(Tuple{s[0], s[2]}, -1);
  add(Tuple{s[0], s[1]}, 1);
  return r;
}

// Triples with repeated vertices first: they keep the echelon rows short.
std::vector<Tuple> ordered_triples(const GeodesicTable& t, Distance R0) {
  std::vector<Tuple> degenerate, rest;
  for_each_tuple(t, 3, R0, [&](const Tuple& s) {
    bool rep = s[0] == s[1] || s[1] == s[2] || s[0] == s[2];
    (rep ? degenerate : rest).push_back(s);
  });
  degenerate.insert(degenerate.end(), rest.begin(), rest.end());
  return degenerate;
}

std::size_t cycle_dimension(const GeodesicTable& t, std::size_t pairs) {
  return pairs - (t.size() - std::size_t(t.component_count()));
}

// Value of the geodesic formula along a path with k >= 1 steps.
struct PathPrimitiveNode final : detail::CochainNode {
  std::shared_ptr<const GeodesicTable> metric;
  Distance R0 = 1;
  std::size_t dim = 1;
  std::unordered_map<Tuple, Coeff, TupleHash> short_values;
  Cochain f;

  void along(const std::vector<Vertex>& p, const Rational& s, Coeff& out) const {
    for (std::size_t j = 1; j < p.size(); ++j) {
      auto it = short_values.find(Tuple{p[j - 1], p[j]});
      if (it == short_values.end()) continue;
      for (std::size_t i = 0; i < dim; ++i) out[i] += s * it->second[i];
    }
    Rational neg = -s;
    for (std::size_t j = 1; j + 1 < p.size(); ++j) f.accumulate(Tuple{p[0], p[j], p[j + 1]}, neg, out);
  }

  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    if (metric->dist(t[0], t[1]) <= R0) {
      auto it = short_values.find(t);
      if (it != short_values.end())
        for (std::size_t i = 0; i < dim; ++i) out[i] += s * it->second[i];
      return;
    }
    along(metric->geodesic(t[0], t[1]), s, out);
  }
};

void all_geodesics(const GeodesicTable& t, const Graph& g, Vertex a, Vertex b, std::vector<Vertex>& cur,
                   std::vector<std::vector<Vertex>>& out) {
  Vertex x = cur.back();
  if (x == b) {
    out.push_back(cur);
    return;
  }
  for (Vertex w : g.neighbors(x))
    if (t.dist(w, b) + 1 == t.dist(x, b)) {
      cur.push_back(w);
      all_geodesics(t, g, a, b, cur, out);
      cur.pop_back();
    }
}

std::vector<Vertex> random_geodesic(const GeodesicTable& t, const Graph& g, Vertex a, Vertex b, std::mt19937_64& rng) {
  std::vector<Vertex> p{a};
  std::vector<Vertex> next;
  while (p.back() != b) {
    next.clear();
    for (Vertex w : g.neighbors(p.back()))
      if (t.dist(w, b) + 1 == t.dist(p.back(), b)) next.push_back(w);
    p.push_back(next[rng() % next.size()]);
  }
  return p;
}

void check_cocycle(const GeodesicTable& t, const Cochain& f, const PrimitiveOptions& opts) {
  Cochain df = coboundary(f);
  auto test = [&](const Tuple& q) {
    if (!is_zero(df(q))) throw Error(Errc::NotACocycle, "df" + to_string(q) + " is not zero");
  };
  const std::size_t n = t.size();
  if (n <= opts.cocycle_exhaustive_cap) {
    for_each_tuple(t, 4, kInfinity, test);
    return;
  }
  std::mt19937_64 rng(opts.seed);
  for (std::size_t i = 0; i < opts.cocycle_samples; ++i) {
    Tuple q{Vertex(rng() % n), Vertex(rng() % n), Vertex(rng() % n), Vertex(rng() % n)};
    test(q);
  }
}

}  // namespace

std::optional<unsigned> smallest_saturating_radius(const GeodesicTable& t, unsigned max_radius) {
  for (unsigned R = 1; R <= max_radius; ++R) {
    ShortPairs sp = short_pairs(t, R);
    Echelon ech(1);
    for (const Tuple& s : ordered_triples(t, R)) ech.insert(triple_boundary(sp, s), Coeff{0}, nullptr);
    if (ech.rank() == cycle_dimension(t, sp.pairs.size())) return R;
  }
  return std::nullopt;
}

Primitive construct_primitive(const Graph& g, const GeodesicTable& t, const Cochain& f, unsigned R0,
                              const PrimitiveOptions& opts) {
  if (f.degree() != 2) throw Error(Errc::InvalidArgument, "construct_primitive expects a degree-2 cochain");
  if (t.size() != g.size() || f.vertices() != g.size())
    throw Error(Errc::InvalidArgument, "graph, geodesic table and cochain sizes differ");
  if (R0 < 1) throw Error(Errc::InvalidArgument, "R0 must be at least 1");
  if (opts.verify_cocycle) check_cocycle(t, f, opts);

  Primitive out;
  const std::size_t dim = f.dim();
  PrimitiveMethod method = opts.method;
  ShortPairs sp;
  if (method != PrimitiveMethod::Cone) {
    sp = short_pairs(t, R0);
    if (method == PrimitiveMethod::Auto)
      method = t.connected() && sp.pairs.size() <= opts.extension_cap ? PrimitiveMethod::Extension
                                                                       : PrimitiveMethod::Cone;
  }
  out.method = method;

  if (method == PrimitiveMethod::Cone) {
    const Vertex o = 0;
    out.g = g.size() == 0 ? Cochain(1, 0, dim)
                          : Cochain::from_function(1, g.size(), dim, [f, o](const Tuple& p) {
                              return f(Tuple{o, p[0], p[1]});
                            });
    return out;
  }
  if (!t.connected()) throw Error(Errc::Disconnected, "the geodesic formula needs a connected graph");

  // (i) h(dc) = f(c) on a spanning set of B_1^{R0}; dependent triples must carry f = 0.
  Echelon ech(dim);
  std::vector<Tuple> spanning;
  for (const Tuple& s : ordered_triples(t, R0)) {
    Coeff residual;
    if (ech.insert(triple_boundary(sp, s), f(s), &residual)) {
      spanning.push_back(s);
    } else if (!is_zero(residual)) {
      throw Error(Errc::NotWellDefined, "two fillings of d" + to_string(s) + " at R0=" + std::to_string(R0) +
                                            " give different f-values");
    }
  }
  out.boundary_rank = ech.rank();
  out.cycle_dim = cycle_dimension(t, sp.pairs.size());
  if (out.boundary_rank != out.cycle_dim)
    throw Error(Errc::Unsaturated, "dim Z_1=" + std::to_string(out.cycle_dim) + " but rank B_1=" +
                                       std::to_string(out.boundary_rank) + " at R0=" + std::to_string(R0));

  // (ii) min-sup extension, one LP per coordinate.
  const std::size_t P = sp.pairs.size(), S = spanning.size();
  std::vector<SparseRow> rows;
  for (const Tuple& s : spanning) rows.push_back(triple_boundary(sp, s));
  std::vector<Coeff> values(P, Coeff(dim, Rational(0)));
  out.extension_norm.assign(dim, 0);
  for (std::size_t c = 0; c < dim; ++c) {
    LpProblem lp(S + P);
    for (std::size_t k = 0; k < S; ++k) lp.rhs[k] = f(spanning[k])[c];
    std::vector<LpProblem::Column> plus(P), minus(P);
    for (std::size_t k = 0; k < S; ++k)
      for (const auto& [j, a] : rows[k]) {
        plus[j].emplace_back(k, a);
        minus[j].emplace_back(k, Rational(-a));
      }
    for (std::size_t j = 0; j < P; ++j) {
      plus[j].emplace_back(S + j, 1);
      minus[j].emplace_back(S + j, 1);
      lp.add_column(0, plus[j]);
      lp.add_column(0, minus[j]);
    }
    LpProblem::Column tcol;
    for (std::size_t j = 0; j < P; ++j) tcol.emplace_back(S + j, -1);
    const std::size_t tvar = lp.add_column(1, tcol);
    for (std::size_t j = 0; j < P; ++j) lp.add_column(0, {{S + j, Rational(1)}});
    LpOutcome r = solve(lp);
    if (r.status != LpStatus::Optimal) throw Error(Errc::Internal, "extension LP infeasible although h is well defined");
    for (std::size_t j = 0; j < P; ++j) values[j][c] = r.primal[2 * j] - r.primal[2 * j + 1];
    out.extension_norm[c] = r.primal[tvar];
  }

  // (iii) geodesic formula for long pairs.
  auto node = std::make_shared<PathPrimitiveNode>();
  node->metric = std::make_shared<GeodesicTable>(t);
  node->R0 = R0;
  node->dim = dim;
  node->f = f;
  for (std::size_t j = 0; j < P; ++j)
    if (!is_zero(values[j])) node->short_values.emplace(sp.pairs[j], values[j]);
  out.g = Cochain(1, g.size(), dim, node);

  std::mt19937_64 rng(opts.seed);
  const bool exhaustive = g.size() <= 8;
  for (Vertex a = 0; a < g.size(); ++a)
    for (Vertex b = 0; b < g.size(); ++b) {
      if (t.dist(a, b) < 2) continue;
      Coeff want = out.g(Tuple{a, b});
      std::vector<std::vector<Vertex>> paths;
      if (exhaustive) {
        std::vector<Vertex> cur{a};
        all_geodesics(t, g, a, b, cur, paths);
      } else {
        for (unsigned k = 0; k < opts.path_checks; ++k) paths.push_back(random_geodesic(t, g, a, b, rng));
      }
      for (const auto& p : paths) {
        Coeff got(dim, Rational(0));
        node->along(p, 1, got);
        ++out.alternative_paths_checked;
        if (got != want)
          throw Error(Errc::NotWellDefined, "geodesic formula for " + to_string(Tuple{a, b}) + " depends on the path");
      }
    }
  return out;
}

}  // namespace hypcoh
