#include "hypcoh/cochain.hpp"

#include <random>
#include <sstream>
#include <unordered_map>

#include "hypcoh/error.hpp"

namespace hypcoh {

using detail::CochainNode;
using NodePtr = std::shared_ptr<const CochainNode>;

namespace {

void add_scaled(Coeff& out, const Coeff& v, const Rational& s) {
  for (std::size_t i = 0; i < out.size(); ++i)
    if (sgn(v[i]) != 0) out[i] += s * v[i];
}

struct TableNode final : CochainNode {
  std::unordered_map<Tuple, Coeff, TupleHash> values;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    auto it = values.find(t);
    if (it != values.end()) add_scaled(out, it->second, s);
  }
};

struct FunctionNode final : CochainNode {
  Cochain::Function fn;
  std::size_t dim = 1;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    Coeff v = fn(t);
    if (v.size() != dim) throw Error(Errc::InvalidArgument, "cochain function returned wrong dimension");
    add_scaled(out, v, s);
  }
};

struct LinearNode final : CochainNode {
  std::vector<std::pair<Rational, NodePtr>> terms;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    for (const auto& [a, n] : terms) n->accumulate(t, s * a, out);
  }
};

struct CoboundaryNode final : CochainNode {
  NodePtr inner;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    Rational neg = -s;
    for (std::size_t j = 0; j < t.size; ++j) inner->accumulate(t.face(j), j % 2 ? neg : s, out);
  }
};

struct MemoNode final : CochainNode {
  NodePtr inner;
  std::size_t dim = 1;
  mutable std::unordered_map<Tuple, Coeff, TupleHash> cache;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    auto it = cache.find(t);
    if (it == cache.end()) {
      Coeff v(dim, Rational(0));
      inner->accumulate(t, 1, v);
      it = cache.emplace(t, std::move(v)).first;
    }
    add_scaled(out, it->second, s);
  }
};

struct RestrictNode final : CochainNode {
  NodePtr inner;
  std::vector<Vertex> global;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    Tuple u = t;
    for (std::size_t i = 0; i < t.size; ++i) u.v[i] = global[t.v[i]];
    inner->accumulate(u, s, out);
  }
};

struct ExtendNode final : CochainNode {
  std::vector<int> member_of;
  std::vector<Vertex> local;
  std::vector<NodePtr> locals;
  void accumulate(const Tuple& t, const Rational& s, Coeff& out) const override {
    int m = member_of[t.v[0]];
    if (m < 0) return;
    Tuple u = t;
    for (std::size_t i = 0; i < t.size; ++i) {
      if (member_of[t.v[i]] != m) return;
      u.v[i] = local[t.v[i]];
    }
    if (locals[std::size_t(m)]) locals[std::size_t(m)]->accumulate(u, s, out);
  }
};

Cochain linear(const Cochain& f, const std::vector<std::pair<Rational, const Cochain*>>& parts) {
  auto n = std::make_shared<LinearNode>();
  for (const auto& [a, c] : parts) {
    if (c->degree() != f.degree() || c->vertices() != f.vertices() || c->dim() != f.dim())
      throw Error(Errc::InvalidArgument, "cochains of different shape");
    if (!c->node() || sgn(a) == 0) continue;
    n->terms.emplace_back(a, c->node());
  }
  if (n->terms.empty()) return Cochain(f.degree(), f.vertices(), f.dim());
  return Cochain(f.degree(), f.vertices(), f.dim(), n);
}

}  // namespace

Cochain::Cochain(int degree, std::size_t vertices, std::size_t dim) : Cochain(degree, vertices, dim, nullptr) {}

Cochain::Cochain(int degree, std::size_t vertices, std::size_t dim, NodePtr node)
    : degree_(degree), n_(vertices), dim_(dim), node_(std::move(node)) {
  if (degree < 0 || degree > 3) throw Error(Errc::InvalidArgument, "cochain degree must be in 0..3");
  if (dim == 0) throw Error(Errc::InvalidArgument, "coefficient dimension must be positive");
}

Cochain Cochain::from_table(int degree, std::size_t vertices, std::size_t dim, const Table& values) {
  auto n = std::make_shared<TableNode>();
  Cochain shape(degree, vertices, dim);
  for (const auto& [t, v] : values) {
    shape.check(t);
    if (v.size() != dim) throw Error(Errc::InvalidArgument, "value of " + to_string(t) + " has wrong dimension");
    if (!is_zero(v)) n->values.emplace(t, v);
  }
  if (n->values.empty()) return shape;
  return Cochain(degree, vertices, dim, n);
}

Cochain Cochain::from_function(int degree, std::size_t vertices, std::size_t dim, Function fn) {
  auto n = std::make_shared<FunctionNode>();
  n->fn = std::move(fn);
  n->dim = dim;
  return Cochain(degree, vertices, dim, n);
}

Cochain Cochain::from_values(const std::vector<Rational>& values) {
  Table tab;
  for (Vertex v = 0; v < values.size(); ++v) tab[Tuple{v}] = Coeff{values[v]};
  return from_table(0, values.size(), 1, tab);
}

void Cochain::check(const Tuple& t) const {
  if (t.size != std::size_t(degree_) + 1)
    throw Error(Errc::InvalidArgument, "tuple " + to_string(t) + " does not match degree " + std::to_string(degree_));
  for (Vertex x : t)
    if (x >= n_) throw Error(Errc::InvalidArgument, "tuple " + to_string(t) + " has a vertex out of range");
}

Coeff Cochain::operator()(const Tuple& t) const {
  Coeff out(dim_, Rational(0));
  accumulate(t, 1, out);
  return out;
}

void Cochain::accumulate(const Tuple& t, const Rational& scale, Coeff& out) const {
  check(t);
  if (out.size() != dim_) throw Error(Errc::InvalidArgument, "accumulator has wrong dimension");
  if (node_) node_->accumulate(t, scale, out);
}

Cochain Cochain::operator+(const Cochain& o) const { return linear(*this, {{1, this}, {1, &o}}); }
Cochain Cochain::operator-(const Cochain& o) const { return linear(*this, {{1, this}, {-1, &o}}); }
Cochain Cochain::operator-() const { return linear(*this, {{-1, this}}); }
Cochain Cochain::operator*(const Rational& s) const { return linear(*this, {{s, this}}); }

Cochain Cochain::memoized() const {
  if (!node_) return *this;
  auto n = std::make_shared<MemoNode>();
  n->inner = node_;
  n->dim = dim_;
  return Cochain(degree_, n_, dim_, n);
}

Cochain Cochain::materialize(const std::vector<Tuple>& tuples) const {
  Table tab;
  for (const Tuple& t : tuples) {
    Coeff v = (*this)(t);
    if (!is_zero(v)) tab[t] = std::move(v);
  }
  return from_table(degree_, n_, dim_, tab);
}

Cochain coboundary(const Cochain& f) {
  if (f.degree() >= 3) throw Error(Errc::InvalidArgument, "coboundary of a degree-3 cochain needs 5-tuples");
  if (!f.node()) return Cochain(f.degree() + 1, f.vertices(), f.dim());
  auto n = std::make_shared<CoboundaryNode>();
  n->inner = f.node();
  return Cochain(f.degree() + 1, f.vertices(), f.dim(), n);
}

Coeff pairing(const Cochain& f, const Chain& c) {
  if (c.degree() != f.degree()) throw Error(Errc::InvalidArgument, "pairing of cochain and chain of different degree");
  Coeff out(f.dim(), Rational(0));
  for (const auto& [t, a] : c.terms()) f.accumulate(t, a, out);
  return out;
}

void for_each_tuple(const GeodesicTable& t, std::size_t length, Distance R,
                    const std::function<void(const Tuple&)>& fn) {
  if (length == 0 || length > 4) throw Error(Errc::InvalidArgument, "tuple length must be in 1..4");
  const Vertex n = Vertex(t.size());
  std::vector<std::vector<Vertex>> ball(n);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      if (t.dist(x, y) <= R) ball[x].push_back(y);
  Tuple cur;
  cur.size = std::uint8_t(length);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == length) {
      fn(cur);
      return;
    }
    const auto& cand = i == 0 ? ball[0] : ball[cur.v[0]];
    if (i == 0) {
      for (Vertex x = 0; x < n; ++x) {
        cur.v[0] = x;
        rec(1);
      }
      return;
    }
    for (Vertex y : cand) {
      bool ok = true;
      for (std::size_t j = 1; j < i && ok; ++j) ok = t.dist(cur.v[j], y) <= R;
      if (!ok) continue;
      cur.v[i] = y;
      rec(i + 1);
    }
  };
  rec(0);
}

Rational graded_norm(const Cochain& f, const GeodesicTable& t, Distance R) {
  if (t.size() != f.vertices()) throw Error(Errc::InvalidArgument, "geodesic table does not match cochain");
  Rational best = 0;
  if (!f.node()) return best;
  for_each_tuple(t, std::size_t(f.degree()) + 1, R, [&](const Tuple& tp) {
    Rational v = sup_norm(f(tp));
    if (v > best) best = v;
  });
  return best;
}

std::optional<Tuple> first_difference(const Cochain& f, const Cochain& g, const GeodesicTable& t, Distance R) {
  if (f.degree() != g.degree() || f.vertices() != g.vertices() || f.dim() != g.dim())
    throw Error(Errc::InvalidArgument, "cochains of different shape");
  std::optional<Tuple> out;
  Cochain d = f - g;
  for_each_tuple(t, std::size_t(f.degree()) + 1, R, [&](const Tuple& tp) {
    if (!out && !is_zero(d(tp))) out = tp;
  });
  return out;
}

std::optional<Tuple> first_difference(const Cochain& f, const Cochain& g) {
  GeodesicTable full(Graph::from_edges(f.vertices(), [&] {
    std::vector<Edge> e;
    for (Vertex x = 0; x < f.vertices(); ++x)
      for (Vertex y = x + 1; y < f.vertices(); ++y) e.emplace_back(x, y);
    return e;
  }()));
  return first_difference(f, g, full, 1);
}

Cochain restrict_to(const Cochain& f, const std::vector<Vertex>& global) {
  for (Vertex v : global)
    if (v >= f.vertices()) throw Error(Errc::InvalidArgument, "restriction vertex out of range");
  if (!f.node()) return Cochain(f.degree(), global.size(), f.dim());
  auto n = std::make_shared<RestrictNode>();
  n->inner = f.node();
  n->global = global;
  return Cochain(f.degree(), global.size(), f.dim(), n);
}

Cochain extend_by_zero(std::size_t vertices, const std::vector<std::vector<Vertex>>& members,
                       const std::vector<Cochain>& locals) {
  if (members.size() != locals.size()) throw Error(Errc::InvalidArgument, "one local cochain per member expected");
  if (members.empty()) throw Error(Errc::InvalidArgument, "extension by zero needs at least one member");
  auto n = std::make_shared<ExtendNode>();
  n->member_of.assign(vertices, -1);
  n->local.assign(vertices, 0);
  const int degree = locals[0].degree();
  const std::size_t dim = locals[0].dim();
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (locals[k].degree() != degree || locals[k].dim() != dim)
      throw Error(Errc::InvalidArgument, "local cochains of different shape");
    if (locals[k].vertices() != members[k].size())
      throw Error(Errc::InvalidArgument, "local cochain " + std::to_string(k) + " does not match its member");
    for (std::size_t i = 0; i < members[k].size(); ++i) {
      Vertex v = members[k][i];
      if (v >= vertices) throw Error(Errc::InvalidArgument, "member vertex out of range");
      if (n->member_of[v] >= 0) throw Error(Errc::FamilyNotDisjoint, "vertex " + std::to_string(v) + " in two members");
      n->member_of[v] = int(k);
      n->local[v] = Vertex(i);
    }
    n->locals.push_back(locals[k].node());
  }
  return Cochain(degree, vertices, dim, n);
}

Cochain pullback(const Cochain& a, const std::vector<Vertex>& map) { return restrict_to(a, map); }

Cochain random_cochain(std::uint64_t seed, const GeodesicTable& t, int degree, Distance R, std::size_t dim,
                       long range, long max_den) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-range, range), den(1, std::max(1L, max_den));
  Cochain::Table tab;
  for_each_tuple(t, std::size_t(degree) + 1, R, [&](const Tuple& tp) {
    Coeff v(dim);
    for (auto& x : v) x = ratio(num(rng), den(rng));
    tab[tp] = std::move(v);
  });
  return Cochain::from_table(degree, t.size(), dim, tab);
}

std::string format_cochain(const Cochain& f, const GeodesicTable& t, Distance R) {
  std::ostringstream os;
  os << "cochain " << f.degree() << ' ' << f.dim() << '\n';
  for_each_tuple(t, std::size_t(f.degree()) + 1, R, [&](const Tuple& tp) {
    Coeff v = f(tp);
    if (is_zero(v)) return;
    for (Vertex x : tp) os << x << ' ';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << to_string(v[i]);
    os << '\n';
  });
  return os.str();
}

Cochain parse_cochain(const std::string& text, std::size_t vertices) {
  std::istringstream in(text);
  std::string line;
  int degree = -1;
  std::size_t dim = 0;
  Cochain::Table tab;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(Errc::ParseError, "cochain line " + std::to_string(lineno) + ": " + why);
    };
    if (degree < 0) {
      if (tok.size() != 3 || tok[0] != "cochain") fail("expected 'cochain <degree> <dim>'");
      try {
        degree = std::stoi(tok[1]);
        dim = std::stoul(tok[2]);
      } catch (const std::exception&) {
        fail("bad header");
      }
      if (degree < 0 || degree > 3 || dim == 0) fail("degree must be 0..3 and dim positive");
      continue;
    }
    const std::size_t k = std::size_t(degree) + 1;
    if (tok.size() != k + dim) fail("expected " + std::to_string(k) + " vertices and " + std::to_string(dim) + " values");
    Tuple tp;
    tp.size = std::uint8_t(k);
    for (std::size_t i = 0; i < k; ++i) {
      unsigned long v = 0;
      try {
        std::size_t used = 0;
        v = std::stoul(tok[i], &used);
        if (used != tok[i].size()) fail("bad vertex '" + tok[i] + "'");
      } catch (const std::logic_error&) {
        fail("bad vertex '" + tok[i] + "'");
      }
      if (v >= vertices) fail("vertex " + tok[i] + " out of range");
      tp.v[i] = Vertex(v);
    }
    Coeff val(dim);
    for (std::size_t i = 0; i < dim; ++i) val[i] = parse_rational(tok[k + i]);
    auto [it, fresh] = tab.emplace(tp, val);
    if (!fresh) fail("duplicate tuple " + to_string(tp));
  }
  if (degree < 0) throw Error(Errc::ParseError, "missing cochain header");
  return Cochain::from_table(degree, vertices, dim, tab);
}

}  // namespace hypcoh
