#include "hypcoh/projections.hpp"

#include <algorithm>
#include <numeric>

#include "hypcoh/error.hpp"

namespace hypcoh {

namespace {

std::string id(std::size_t k) { return std::to_string(k); }

Coeff minus(const Coeff& a, const Coeff& b) {
  Coeff r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Keeps the largest num/den seen, with its witness.
struct Ratio {
  Distance num = 0, den = 1;
  std::string witness;
  bool offer(Distance n, Distance d, const std::function<std::string()>& w) {
    if (std::uint64_t(n) * den <= std::uint64_t(num) * d) return false;
    num = n;
    den = d;
    witness = w();
    return true;
  }
  Rational value() const { return ratio(long(num), long(den)); }
};

bool singleton(const ProjectionSystem& sys, std::size_t Y) { return sys.family().members[Y].size() == 1; }

}  // namespace

ProjectionSystem::ProjectionSystem(Graph g, SubgraphFamily family, std::vector<std::vector<std::vector<Vertex>>> pi)
    : graph_(std::move(g)), family_(std::move(family)), pi_(std::move(pi)) {
  const std::size_t n = graph_.size();
  metric_ = std::make_shared<GeodesicTable>(graph_);
  if (!metric_->connected()) throw Error(Errc::Disconnected, "projection systems need a connected graph");
  member_of_.assign(n, -1);
  for (std::size_t k = 0; k < family_.size(); ++k) {
    if (family_.members[k].empty()) throw Error(Errc::InvalidArgument, "member " + id(k) + " is empty");
    for (Vertex v : family_.members[k]) {
      if (v >= n) throw Error(Errc::InvalidArgument, "member vertex out of range");
      if (member_of_[v] >= 0) throw Error(Errc::FamilyNotDisjoint, "vertex " + id(v) + " lies in two members");
      member_of_[v] = int(k);
    }
  }
  family_.disjoint = true;
  if (pi_.size() != family_.size()) throw Error(Errc::InvalidArgument, "one projection per member expected");
  for (std::size_t k = 0; k < pi_.size(); ++k) {
    if (pi_[k].size() != n) throw Error(Errc::InvalidArgument, "projection onto member " + id(k) + " has wrong length");
    for (Vertex v = 0; v < n; ++v) {
      auto& s = pi_[k][v];
      if (s.empty()) throw Error(Errc::InvalidArgument, "empty projection of " + id(v) + " to member " + id(k));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      for (Vertex y : s)
        if (y >= n || member_of_[y] != int(k))
          throw Error(Errc::InvalidArgument, "projection of " + id(v) + " leaves member " + id(k));
    }
  }
  original_ = family_.size();
  member_cache_.assign(family_.size(), std::vector<std::vector<Vertex>>(family_.size()));
  member_cached_.assign(family_.size(), std::vector<char>(family_.size(), 0));
}

const std::vector<Vertex>& ProjectionSystem::project_member(std::size_t Y, std::size_t W) const {
  if (!member_cached_[Y][W]) {
    std::vector<Vertex> u;
    for (Vertex w : family_.members[W]) u.insert(u.end(), pi_[Y][w].begin(), pi_[Y][w].end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    member_cache_[Y][W] = std::move(u);
    member_cached_[Y][W] = 1;
  }
  return member_cache_[Y][W];
}

Distance ProjectionSystem::diameter(const std::vector<Vertex>& a, const std::vector<Vertex>& b) const {
  Distance d = 0;
  auto scan = [&](const std::vector<Vertex>& x, const std::vector<Vertex>& y, bool same) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = same ? i + 1 : 0; j < y.size(); ++j) d = std::max(d, metric_->dist(x[i], y[j]));
  };
  scan(a, a, true);
  scan(b, b, true);
  scan(a, b, false);
  return d;
}

ProjectionSystem ProjectionSystem::with_singletons() const {
  SubgraphFamily fam = family_;
  auto pi = pi_;
  const std::size_t n = graph_.size();
  for (Vertex v = 0; v < n; ++v)
    if (member_of_[v] < 0) {
      fam.members.push_back({v});
      pi.emplace_back(n, std::vector<Vertex>{v});
    }
  fam.truncated.resize(fam.size(), false);
  fam.required_radius.resize(fam.size(), 0);
  ProjectionSystem s(graph_, std::move(fam), std::move(pi));
  s.original_ = original_;
  return s;
}

ProjectionSystem nearest_point_system(const Graph& g, const SubgraphFamily& family) {
  GeodesicTable t(g);
  if (!t.connected()) throw Error(Errc::Disconnected, "projection systems need a connected graph");
  const std::size_t n = g.size();
  std::vector<std::vector<std::vector<Vertex>>> pi(family.size(), std::vector<std::vector<Vertex>>(n));
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& Y = family.members[k];
    if (Y.empty()) throw Error(Errc::InvalidArgument, "member " + id(k) + " is empty");
    if (Y.size() > 1 && !GeodesicTable(induced_subgraph(g, Y).graph).connected())
      throw Error(Errc::DisconnectedMember, "member " + id(k) + " is not connected");
    for (Vertex v = 0; v < n; ++v) {
      Distance best = kInfinity;
      for (Vertex y : Y) best = std::min(best, t.dist(v, y));
      for (Vertex y : Y)
        if (t.dist(v, y) == best) pi[k][v].push_back(y);
    }
  }
  return ProjectionSystem(g, family, std::move(pi));
}

AxiomReport check_axioms(const ProjectionSystem& sys) {
  AxiomReport rep;
  const std::size_t n = sys.graph().size(), M = sys.members();
  const GeodesicTable& t = sys.metric();
  std::vector<std::size_t> big;
  for (std::size_t k = 0; k < M; ++k)
    if (!singleton(sys, k)) big.push_back(k);

  // Bounded projection: diam pi_W(x) for x in X and diam pi_W(Y) for members Y != W.
  Ratio b1;
  for (std::size_t W : big) {
    for (Vertex x = 0; x < n; ++x)
      b1.offer(t.set_diameter(sys.project(W, x)), 1, [&] { return "W=" + id(W) + " x=" + id(x); });
    for (std::size_t Y = 0; Y < M; ++Y)
      if (Y != W) b1.offer(t.set_diameter(sys.project_member(W, Y)), 1, [&] { return "W=" + id(W) + " Y=" + id(Y); });
  }
  rep.bounded_projection = b1.value();
  rep.bounded_projection_witness = b1.witness;

  // Coarse Lipschitz: d_Y(x,y) <= B d(x,y) + B, i.e. B >= d_Y(x,y) / (d(x,y) + 1).
  Ratio b2;
  for (std::size_t Y : big) {
    std::vector<Distance> own(n);
    for (Vertex x = 0; x < n; ++x) own[x] = t.set_diameter(sys.project(Y, x));
    for (Vertex x = 0; x < n; ++x) {
      const auto& px = sys.project(Y, x);
      for (Vertex y = x + 1; y < n; ++y) {
        const auto& py = sys.project(Y, y);
        Distance dy = std::max(own[x], own[y]);
        for (Vertex a : px)
          for (Vertex b : py) dy = std::max(dy, t.dist(a, b));
        b2.offer(dy, t.dist(x, y) + 1, [&] { return "Y=" + id(Y) + " x=" + id(x) + " y=" + id(y); });
      }
    }
  }
  rep.coarse_lipschitz = b2.value();
  rep.coarse_lipschitz_witness = b2.witness;

  // Behrstock: min{d_W(Y,x), d_Y(W,x)} over distinct W, Y and x in X.
  Ratio b3;
  for (std::size_t W : big)
    for (std::size_t Y : big) {
      if (Y <= W) continue;
      const auto& wy = sys.project_member(W, Y);
      const auto& yw = sys.project_member(Y, W);
      for (Vertex x = 0; x < n; ++x) {
        Distance m = sys.diameter(wy, sys.project(W, x));
        if (m <= b3.num) continue;
        m = std::min(m, sys.diameter(yw, sys.project(Y, x)));
        b3.offer(m, 1, [&] { return "W=" + id(W) + " Y=" + id(Y) + " x=" + id(x); });
      }
    }
  rep.behrstock = b3.value();
  rep.behrstock_witness = b3.witness;
  rep.B = std::max({rep.bounded_projection, rep.coarse_lipschitz, rep.behrstock});

  // Strong Behrstock: d_W(Y,Z) >= B' forces pi_Y(W) = pi_Y(Z). Singleton W has d_W = 0 and
  // singleton Y never violates.
  long worst = -1;
  for (std::size_t Y : big)
    for (std::size_t W : big) {
      if (W == Y) continue;
      for (std::size_t Z = 0; Z < M; ++Z) {
        if (Z == W || Z == Y) continue;
        if (sys.project_member(Y, W) == sys.project_member(Y, Z)) continue;
        Distance d = sys.d_members(W, Y, Z);
        if (long(d) > worst) {
          worst = long(d);
          rep.strong_behrstock_witness = "W=" + id(W) + " Y=" + id(Y) + " Z=" + id(Z);
        }
      }
    }
  if (worst < 0) {
    for (std::size_t Y : big) {
      for (std::size_t W = 0; W < M && worst < 0; ++W) {
        if (W == Y || !singleton(sys, W)) continue;
        for (std::size_t Z = 0; Z < M; ++Z)
          if (Z != W && Z != Y && sys.project_member(Y, W) != sys.project_member(Y, Z)) {
            worst = 0;
            rep.strong_behrstock_witness = "W=" + id(W) + " Y=" + id(Y) + " Z=" + id(Z);
            break;
          }
      }
      if (worst >= 0) break;
    }
  }
  rep.strong_behrstock = Rational(worst + 1);
  rep.strong_holds_at_B = rep.B >= rep.strong_behrstock;

  // Large projections: {Z : d_Z(W,Y) >= B} for each pair of distinct members.
  for (std::size_t W = 0; W < M; ++W)
    for (std::size_t Y = W + 1; Y < M; ++Y) {
      if (singleton(sys, W) && singleton(sys, Y) && rep.B > 0) continue;
      std::vector<std::size_t> large;
      for (std::size_t Z = 0; Z < M; ++Z) {
        if (Z == W || Z == Y) continue;
        if (singleton(sys, Z) && rep.B > 0) continue;
        if (Rational(sys.d_members(Z, W, Y)) >= rep.B) large.push_back(Z);
      }
      if (large.empty()) continue;
      rep.max_large_projection_count = std::max(rep.max_large_projection_count, large.size());
      rep.large_projection_sets[{W, Y}] = std::move(large);
    }
  return rep;
}

bool RelOrder::contains(std::size_t Z) const { return std::find(order.begin(), order.end(), Z) != order.end(); }

std::size_t RelOrder::rank(std::size_t Z) const {
  auto it = std::find(order.begin(), order.end(), Z);
  if (it == order.end()) throw Error(Errc::InvalidArgument, "member " + id(Z) + " is not in the Rel set");
  return std::size_t(it - order.begin());
}

RelOrder rel_order(const ProjectionSystem& sys, std::size_t W, std::size_t Y, const Rational& B) {
  const std::size_t M = sys.members();
  if (W >= M || Y >= M) throw Error(Errc::InvalidArgument, "member index out of range");
  if (W == Y) throw Error(Errc::InvalidArgument, "Rel(W,Y) needs distinct members");
  RelOrder r;
  r.W = W;
  r.Y = Y;
  r.threshold = 10 * B;
  std::vector<std::size_t> rel{W};
  for (std::size_t Z = 0; Z < M; ++Z)
    if (Z != W && Z != Y && Rational(sys.d_members(Z, W, Y)) > r.threshold) rel.push_back(Z);
  rel.push_back(Y);

  auto less = [&](std::size_t U, std::size_t V) {
    if (V == Y) return true;
    if (U == Y) return false;
    return sys.project_member(U, V) == sys.project_member(U, Y);
  };
  std::vector<std::size_t> above(rel.size(), 0);
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = i + 1; j < rel.size(); ++j) {
      bool a = less(rel[i], rel[j]), b = less(rel[j], rel[i]);
      if (a == b)
        throw Error(Errc::OrderNotTotal, "members " + id(rel[i]) + " and " + id(rel[j]) +
                                             (a ? " precede each other" : " are incomparable"));
      ++above[a ? i : j];
    }
  // A tournament is transitive exactly when its scores are distinct.
  std::vector<std::size_t> idx(rel.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return above[a] > above[b]; });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (above[idx[i]] != rel.size() - 1 - i) {
      std::size_t other = i > 0 && above[idx[i - 1]] == above[idx[i]] ? idx[i - 1] : idx[(i + 1) % idx.size()];
      throw Error(Errc::OrderNotTotal,
                  "order on Rel(" + id(W) + "," + id(Y) + ") has a cycle through members " + id(rel[idx[i]]) + " and " +
                      id(rel[other]));
    }
    r.order.push_back(rel[idx[i]]);
  }
  for (std::size_t i = 1; i < r.order.size(); ++i) r.predecessor[r.order[i]] = r.order[i - 1];
  return r;
}

LipschitzPrimitive lipschitz_primitive(const Graph& y, const Cochain& phi, Vertex x0) {
  const std::size_t n = y.size();
  if (phi.degree() != 1) throw Error(Errc::InvalidArgument, "a 1-cochain is required");
  if (phi.vertices() != n) throw Error(Errc::InvalidArgument, "cochain and graph sizes differ");
  if (x0 >= n) throw Error(Errc::InvalidArgument, "base vertex out of range");
  Cochain d = coboundary(phi);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c) {
        Coeff v = d(Tuple{a, b, c});
        if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }))
          throw Error(Errc::NotACocycle, "d phi(" + id(a) + "," + id(b) + "," + id(c) + ") != 0");
      }
  LipschitzPrimitive out;
  out.f.reserve(n);
  for (Vertex x = 0; x < n; ++x) out.f.push_back(phi(Tuple{x0, x}));
  for (const Edge& e : y.edges()) out.lipschitz = std::max(out.lipschitz, sup_norm(minus(out.f[e.second], out.f[e.first])));
  return out;
}

CocycleExtension extend_cocycle(const ProjectionSystem& sys, const std::vector<Cochain>& locals, std::size_t W0) {
  if (locals.size() != sys.members()) throw Error(Errc::InvalidArgument, "one local cocycle per member expected");
  if (W0 >= sys.members()) throw Error(Errc::InvalidArgument, "base member out of range");
  const std::size_t dim = locals.empty() ? 1 : locals[0].dim();
  for (std::size_t k = 0; k < locals.size(); ++k)
    if (locals[k].degree() != 1 || locals[k].vertices() != sys.family().members[k].size() || locals[k].dim() != dim)
      throw Error(Errc::InvalidArgument, "local cocycle " + id(k) + " has the wrong shape");

  ProjectionSystem aug = sys.with_singletons();
  const std::size_t M = aug.members(), n = aug.graph().size();
  const auto& members = aug.family().members;
  AxiomReport rep = check_axioms(aug);

  CocycleExtension out;
  out.B = std::max(rep.B, rep.strong_behrstock);
  out.family = aug.family();
  const Rational threshold = 10 * out.B;

  std::vector<std::vector<Coeff>> local_f(M);
  for (std::size_t k = 0; k < M; ++k) {
    if (k < locals.size())
      local_f[k] = lipschitz_primitive(induced_subgraph(aug.graph(), members[k]).graph, locals[k], 0).f;
    else
      local_f[k].assign(1, Coeff(dim, 0));
  }
  auto rel_set = [&](std::size_t Y) {
    std::vector<std::size_t> s{W0};
    if (Y == W0) return s;
    for (std::size_t Z = 0; Z < M; ++Z)
      if (Z != W0 && Z != Y && Rational(aug.d_members(Z, W0, Y)) > threshold) s.push_back(Z);
    s.push_back(Y);
    std::sort(s.begin(), s.end());
    return s;
  };

  out.rho.assign(M, 1);
  for (std::size_t Y = 0; Y < M; ++Y) out.rho[Y] = rel_set(Y).size();
  std::vector<std::size_t> todo(M);
  std::iota(todo.begin(), todo.end(), 0);
  std::stable_sort(todo.begin(), todo.end(), [&](std::size_t a, std::size_t b) { return out.rho[a] < out.rho[b]; });

  auto local_index = [&](std::size_t k, Vertex v) {
    return std::size_t(std::lower_bound(members[k].begin(), members[k].end(), v) - members[k].begin());
  };
  out.f.assign(n, Coeff());
  out.parent.assign(M, W0);
  std::vector<char> done(M, 0);
  for (std::size_t Y : todo) {
    if (Y == W0) {
      for (std::size_t i = 0; i < members[Y].size(); ++i) out.f[members[Y][i]] = local_f[Y][i];
      done[Y] = 1;
      continue;
    }
    RelOrder order = rel_order(aug, W0, Y, out.B);
    std::size_t p = order.predecessor.at(Y);
    out.parent[Y] = p;
    if (!done[p])
      throw Error(Errc::InductionGap, "predecessor " + id(p) + " of member " + id(Y) + " (rho " + id(out.rho[Y]) +
                                          ") has rho " + id(out.rho[p]) + " and is not yet defined");
    if (p != W0) {
      ++out.prefix_checked;
      std::vector<std::size_t> lower(order.order.begin(), order.order.begin() + order.rank(p) + 1);
      std::sort(lower.begin(), lower.end());
      if (lower != rel_set(p)) ++out.prefix_failures;
    }
    Vertex b = aug.project_member(Y, p).front();
    Vertex s = aug.project_member(p, Y).front();
    const Coeff& fb = local_f[Y][local_index(Y, b)];
    for (std::size_t i = 0; i < members[Y].size(); ++i) {
      Coeff v = minus(local_f[Y][i], fb);
      for (std::size_t c = 0; c < dim; ++c) v[c] += out.f[s][c];
      out.f[members[Y][i]] = std::move(v);
    }
    done[Y] = 1;
  }

  auto values = std::make_shared<std::vector<Coeff>>(out.f);
  Cochain f0 = Cochain::from_function(0, n, dim, [values](const Tuple& t) { return (*values)[t.v[0]]; });
  out.phi = coboundary(f0);
  for (const Edge& e : aug.graph().edges())
    out.lipschitz = std::max(out.lipschitz, sup_norm(minus(out.f[e.second], out.f[e.first])));
  return out;
}

}  // namespace hypcoh
