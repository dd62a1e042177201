#include "hypcoh/relative.hpp"

#include <algorithm>

#include "hypcoh/cusped.hpp"
#include "hypcoh/error.hpp"

namespace hypcoh {

namespace {

Distance finite_diameter(const GeodesicTable& t) {
  Distance d = 0;
  for (Vertex x = 0; x < t.size(); ++x)
    for (Vertex y = 0; y < t.size(); ++y)
      if (t.dist(x, y) != kInfinity) d = std::max(d, t.dist(x, y));
  return d;
}

void prefix_max(ControlTable& c) {
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = std::max(c[i], c[i - 1]);
}

struct HomotopyNode final : detail::CochainNode {
  std::shared_ptr<const detail::CochainNode> inner;
  std::vector<Vertex> f, fhat;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    Rational neg = -s;
    for (std::size_t i = 0; i < t.size; ++i) {
      Tuple u;
      u.size = std::uint8_t(t.size + 1);
      for (std::size_t j = 0; j <= i; ++j) u.v[j] = f[t.v[j]];
      for (std::size_t j = i; j < t.size; ++j) u.v[j + 1] = fhat[t.v[j]];
      inner->accumulate(u, i % 2 ? neg : s, out);
    }
  }
};

void same_spaces(const PairMap& a, const PairMap& b) {
  if (a.source != b.source || a.target != b.target)
    throw Error(Errc::InvalidArgument, "pair maps between different spaces");
  if (a.sharp != b.sharp) throw Error(Errc::MismatchedSharp, "member maps differ");
}

}  // namespace

std::shared_ptr<const PairSpace> make_pair_space(const Graph& g, const SubgraphFamily& family) {
  auto s = std::make_shared<PairSpace>();
  s->graph = g;
  s->metric = GeodesicTable(g);
  s->family = family;
  s->member_of.assign(g.size(), -1);
  for (std::size_t k = 0; k < family.size(); ++k)
    for (Vertex v : family.members[k]) {
      if (v >= g.size()) throw Error(Errc::InvalidArgument, "member vertex out of range");
      if (s->member_of[v] >= 0)
        throw Error(Errc::FamilyNotDisjoint, "vertex " + std::to_string(v) + " lies in two members");
      s->member_of[v] = int(k);
    }
  s->family.disjoint = true;
  return s;
}

PairMap make_pair_map(std::shared_ptr<const PairSpace> source, std::shared_ptr<const PairSpace> target,
                      std::vector<Vertex> f, std::vector<std::size_t> sharp) {
  if (!source || !target) throw Error(Errc::InvalidArgument, "missing space");
  if (f.size() != source->size()) throw Error(Errc::InvalidArgument, "vertex map has the wrong length");
  if (sharp.size() != source->family.size()) throw Error(Errc::InvalidArgument, "member map has the wrong length");
  for (Vertex v : f)
    if (v >= target->size()) throw Error(Errc::InvalidArgument, "vertex map leaves the target");
  for (std::size_t s : sharp)
    if (s >= target->family.size()) throw Error(Errc::InvalidArgument, "member map leaves the target family");
  for (std::size_t k = 0; k < source->family.size(); ++k)
    for (Vertex y : source->family.members[k])
      if (target->member_of[f[y]] != int(sharp[k]))
        throw Error(Errc::NotRelativelyUniform, "f(" + std::to_string(y) + ") = " + std::to_string(f[y]) +
                                                    " is not in the image member of member " + std::to_string(k));

  PairMap m;
  m.source = source;
  m.target = target;
  m.f = std::move(f);
  m.sharp = std::move(sharp);
  const GeodesicTable& ts = source->metric;
  const GeodesicTable& tt = target->metric;
  const Distance ds = finite_diameter(ts), dt = finite_diameter(tt);
  m.rho_plus.assign(ds + 1, 0);
  m.rho_minus.assign(ds + 1, kInfinity);
  m.rho_minus_star.assign(dt + 1, 0);
  for (Vertex a = 0; a < source->size(); ++a)
    for (Vertex b = 0; b < source->size(); ++b) {
      if (source->common_member(a, b)) continue;
      Distance d = ts.dist(a, b), e = tt.dist(m.f[a], m.f[b]);
      if (d != kInfinity) {
        if (e == kInfinity)
          throw Error(Errc::NotRelativelyUniform, "images of " + std::to_string(a) + " and " + std::to_string(b) +
                                                      " lie in different components");
        m.rho_plus[d] = std::max(m.rho_plus[d], e);
        m.rho_minus[d] = std::min(m.rho_minus[d], e);
      }
      if (e != kInfinity) m.rho_minus_star[e] = std::max(m.rho_minus_star[e], d);
    }
  prefix_max(m.rho_plus);
  for (std::size_t i = m.rho_minus.size(); i-- > 1;) m.rho_minus[i - 1] = std::min(m.rho_minus[i - 1], m.rho_minus[i]);
  prefix_max(m.rho_minus_star);
  return m;
}

PairMap identity_map(std::shared_ptr<const PairSpace> space) {
  std::vector<Vertex> f(space->size());
  for (Vertex v = 0; v < f.size(); ++v) f[v] = v;
  std::vector<std::size_t> sharp(space->family.size());
  for (std::size_t k = 0; k < sharp.size(); ++k) sharp[k] = k;
  return make_pair_map(space, space, std::move(f), std::move(sharp));
}

PairMap compose(const PairMap& first, const PairMap& second) {
  if (first.target != second.source) throw Error(Errc::InvalidArgument, "maps do not compose");
  std::vector<Vertex> f(first.f.size());
  for (Vertex v = 0; v < f.size(); ++v) f[v] = second.f[first.f[v]];
  std::vector<std::size_t> sharp(first.sharp.size());
  for (std::size_t k = 0; k < sharp.size(); ++k) sharp[k] = second.sharp[first.sharp[k]];
  return make_pair_map(first.source, second.target, std::move(f), std::move(sharp));
}

ControlTable relative_closeness(const PairMap& m, const PairMap& mhat) {
  same_spaces(m, mhat);
  const auto& src = *m.source;
  ControlTable rho(finite_diameter(src.metric) + 1, 0);
  for (Vertex a = 0; a < src.size(); ++a)
    for (Vertex b = 0; b < src.size(); ++b) {
      Distance d = src.metric.dist(a, b);
      if (d == kInfinity || src.common_member(a, b)) continue;
      rho[d] = std::max(rho[d], m.target->metric.dist(m.f[a], mhat.f[b]));
    }
  prefix_max(rho);
  return rho;
}

std::optional<Tuple> member_violation(const Cochain& f, const SubgraphFamily& family) {
  const std::size_t k = std::size_t(f.degree()) + 1;
  for (const auto& mem : family.members) {
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      Tuple t;
      t.size = std::uint8_t(k);
      for (std::size_t i = 0; i < k; ++i) t.v[i] = mem[idx[i]];
      if (!is_zero(f(t))) return t;
      std::size_t i = 0;
      while (i < k && ++idx[i] == mem.size()) idx[i++] = 0;
      if (i == k) break;
    }
  }
  return std::nullopt;
}

RelativeCochain make_relative_cochain(const Cochain& f, std::shared_ptr<const PairSpace> space) {
  if (f.vertices() != space->size()) throw Error(Errc::InvalidArgument, "cochain does not live on this space");
  if (auto t = member_violation(f, space->family))
    throw Error(Errc::InvalidArgument, "cochain is nonzero on member tuple " + to_string(*t));
  return {f, std::move(space)};
}

RelativeCochain pullback(const PairMap& m, const RelativeCochain& a) {
  if (a.space != m.target) throw Error(Errc::InvalidArgument, "cochain does not live on the target");
  return {pullback(a.cochain, m.f), m.source};
}

Cochain homotopy_operator(const PairMap& m, const PairMap& mhat, const Cochain& a) {
  same_spaces(m, mhat);
  if (a.vertices() != m.target->size()) throw Error(Errc::InvalidArgument, "cochain does not live on the target");
  if (a.degree() < 1) throw Error(Errc::InvalidArgument, "homotopy operator needs degree >= 1");
  if (!a.node()) return Cochain(a.degree() - 1, m.source->size(), a.dim());
  auto n = std::make_shared<HomotopyNode>();
  n->inner = a.node();
  n->f = m.f;
  n->fhat = mhat.f;
  return Cochain(a.degree() - 1, m.source->size(), a.dim(), n);
}

RelativeCochain homotopy_operator(const PairMap& m, const PairMap& mhat, const RelativeCochain& a) {
  if (a.space != m.target) throw Error(Errc::InvalidArgument, "cochain does not live on the target");
  return {homotopy_operator(m, mhat, a.cochain), m.source};
}

ExcisionInverse excision_inverse(const PairMap& m) {
  const PairSpace& X = *m.source;
  const PairSpace& Xp = *m.target;
  auto violated = [](const std::string& what) { throw Error(Errc::HypothesisViolated, what); };

  // f# bijective.
  if (X.family.size() != Xp.family.size()) violated("f# is not a bijection: family sizes differ");
  std::vector<std::size_t> inv(Xp.family.size(), std::size_t(-1));
  for (std::size_t k = 0; k < m.sharp.size(); ++k) {
    if (inv[m.sharp[k]] != std::size_t(-1))
      violated("f# is not a bijection: members " + std::to_string(inv[m.sharp[k]]) + " and " + std::to_string(k) +
               " have the same image");
    inv[m.sharp[k]] = k;
  }
  // x in Y iff f(x) in f#(Y).
  for (Vertex x = 0; x < X.size(); ++x) {
    int want = X.member_of[x] < 0 ? -1 : int(m.sharp[std::size_t(X.member_of[x])]);
    if (Xp.member_of[m.f[x]] != want)
      violated("membership equivalence fails at vertex " + std::to_string(x));
  }
  // X' = f(X) u members; smallest preimages.
  std::vector<Vertex> pre(Xp.size(), Vertex(-1));
  for (Vertex x = X.size(); x-- > 0;) pre[m.f[x]] = x;
  for (Vertex xp = 0; xp < Xp.size(); ++xp)
    if (Xp.member_of[xp] < 0 && pre[xp] == Vertex(-1))
      violated("vertex " + std::to_string(xp) + " of the target is neither an image nor in a member");

  ExcisionInverse out;
  std::vector<Vertex> pi(Xp.size());
  std::vector<Distance> gap(Xp.size(), 0);
  for (Vertex xp = 0; xp < Xp.size(); ++xp) {
    int k = Xp.member_of[xp];
    if (k < 0) {
      pi[xp] = pre[xp];
      continue;
    }
    Distance best = kInfinity;
    Vertex arg = 0;
    for (Vertex y : X.family.members[inv[std::size_t(k)]]) {
      Distance d = Xp.metric.dist(xp, m.f[y]);
      if (d < best) best = d, arg = y;
    }
    pi[xp] = arg;
    gap[xp] = best;
  }
  out.member_approximation.assign(finite_diameter(Xp.metric) + 1, 0);
  for (Vertex yp = 0; yp < Xp.size(); ++yp) {
    if (Xp.member_of[yp] < 0) continue;
    for (Vertex xp = 0; xp < Xp.size(); ++xp) {
      Distance d = Xp.metric.dist(yp, xp);
      if (d == kInfinity || Xp.member_of[xp] == Xp.member_of[yp]) continue;
      if (gap[yp] == kInfinity)
        violated("member vertex " + std::to_string(yp) + " is not approximated by images of its member");
      out.member_approximation[d] = std::max(out.member_approximation[d], gap[yp]);
    }
  }
  prefix_max(out.member_approximation);

  out.pi = make_pair_map(m.target, m.source, std::move(pi), inv);
  PairMap fpi = compose(out.pi, m), pif = compose(m, out.pi);
  out.target_closeness = relative_closeness(fpi, identity_map(m.target));
  out.source_closeness = relative_closeness(pif, identity_map(m.source));
  out.target_ok = true;
  for (std::size_t D = 0; D < out.target_closeness.size(); ++D)
    if (out.target_closeness[D] > D + out.member_approximation[D]) out.target_ok = false;
  out.source_ok = true;
  for (std::size_t D = 0; D < out.source_closeness.size(); ++D) {
    Distance r = D < m.rho_plus.size() ? m.rho_plus[D] : m.rho_plus.back();
    Distance bound = r < m.rho_minus_star.size() ? m.rho_minus_star[r] : m.rho_minus_star.back();
    if (out.source_closeness[D] > bound) out.source_ok = false;
  }
  return out;
}

PairMap truncated_inclusion(const Graph& g, const SubgraphFamily& family, std::optional<unsigned> depth) {
  TruncatedPair tp = truncated_pair(g, family);
  CuspedSpace cs = cusp(g, family, depth);
  std::vector<Vertex> f(tp.graph.size());
  for (Vertex v = 0; v < g.size(); ++v) f[v] = v;
  std::vector<std::size_t> sharp(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& layer = tp.family.members[k];
    for (std::size_t i = 0; i < layer.size(); ++i) f[layer[i]] = cs.vertex(k, i, 0);
    sharp[k] = k;
  }
  return make_pair_map(make_pair_space(tp.graph, tp.family), make_pair_space(cs.graph, cs.horoballs), std::move(f),
                       std::move(sharp));
}

RelativeResult make_relative(const Graph& g, const Cochain& f, const SubgraphFamily& family,
                             const PrimitiveOptions& opts, std::size_t extension_vertices) {
  if (f.degree() != 2) throw Error(Errc::InvalidArgument, "make_relative expects a degree-2 cochain");
  if (f.vertices() != g.size()) throw Error(Errc::InvalidArgument, "cochain does not live on this graph");
  RelativeResult out;
  auto space = make_pair_space(g, family);
  if (family.size() == 0) {
    out.relative = {f, space};
    out.witness = Cochain(1, g.size(), f.dim());
    return out;
  }
  std::vector<Cochain> locals;
  std::vector<std::vector<Vertex>> globals;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& mem = family.members[k];
    InducedSubgraph sub = induced_subgraph(g, mem);
    GeodesicTable ty(sub.graph);
    if (!ty.connected()) throw Error(Errc::DisconnectedMember, "member " + std::to_string(k) + " is not connected");
    Cochain fy = restrict_to(f, sub.global);
    globals.push_back(sub.global);
    PrimitiveOptions o = opts;
    unsigned R0 = 1;
    if (o.method == PrimitiveMethod::Auto)
      o.method = mem.size() <= extension_vertices ? PrimitiveMethod::Extension : PrimitiveMethod::Cone;
    if (o.method == PrimitiveMethod::Extension) {
      unsigned diam = std::max<unsigned>(1, ty.diameter());
      R0 = smallest_saturating_radius(ty, diam).value_or(diam);
    }
    out.primitives.push_back(construct_primitive(sub.graph, ty, fy, R0, o));
    locals.push_back(out.primitives.back().g);
  }
  out.witness = -extend_by_zero(g.size(), globals, locals);
  out.relative = {f + coboundary(out.witness), space};
  return out;
}

}  // namespace hypcoh
