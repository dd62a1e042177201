#include "hypcoh/chain.hpp"

#include <algorithm>

#include "hypcoh/error.hpp"

namespace hypcoh {

Tuple::Tuple(std::initializer_list<Vertex> xs) {
  if (xs.size() > 4) throw Error(Errc::InvalidArgument, "tuple longer than 4");
  for (Vertex x : xs) v[size++] = x;
}

Tuple Tuple::from(const Vertex* xs, std::size_t n) {
  if (n > 4) throw Error(Errc::InvalidArgument, "tuple longer than 4");
  Tuple t;
  for (std::size_t i = 0; i < n; ++i) t.v[i] = xs[i];
  t.size = std::uint8_t(n);
  return t;
}

Tuple Tuple::face(std::size_t i) const {
  Tuple t;
  for (std::size_t j = 0; j < size; ++j)
    if (j != i) t.v[t.size++] = v[j];
  return t;
}

Tuple Tuple::reversed() const {
  Tuple t = *this;
  std::reverse(t.v.begin(), t.v.begin() + size);
  return t;
}

bool Tuple::operator==(const Tuple& o) const {
  return size == o.size && std::equal(begin(), end(), o.begin());
}

bool Tuple::operator<(const Tuple& o) const {
  if (size != o.size) return size < o.size;
  return std::lexicographical_compare(begin(), end(), o.begin(), o.end());
}

std::size_t TupleHash::operator()(const Tuple& t) const {
  std::size_t h = t.size;
  for (Vertex x : t) h = h * 1000003u ^ x;
  return h;
}

std::string to_string(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size; ++i) {
    if (i) s += ",";
    s += std::to_string(t.v[i]);
  }
  return s + ")";
}

Chain Chain::single(const Tuple& t, const Rational& coeff) {
  Chain c(int(t.size) - 1);
  c.add(t, coeff);
  return c;
}

Rational Chain::coefficient(const Tuple& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Chain::add(const Tuple& t, const Rational& coeff) {
  if (int(t.size) != degree_ + 1)
    throw Error(Errc::InvalidArgument, "tuple " + to_string(t) + " in chain of degree " + std::to_string(degree_));
  if (sgn(coeff) == 0) return;
  Rational c = coeff;
  c.canonicalize();
  auto [it, fresh] = terms_.emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Chain::add(const Chain& c, const Rational& scale) {
  if (c.degree_ != degree_) throw Error(Errc::InvalidArgument, "degree mismatch in chain sum");
  for (const auto& [t, a] : c.terms_) add(t, Rational(a * scale));
}

std::vector<Vertex> Chain::support_vertices() const {
  std::vector<Vertex> vs;
  for (const auto& [t, a] : terms_) vs.insert(vs.end(), t.begin(), t.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

Chain Chain::operator+(const Chain& o) const {
  Chain r = *this;
  r.add(o);
  return r;
}

Chain Chain::operator-(const Chain& o) const {
  Chain r = *this;
  r.add(o, -1);
  return r;
}

Chain Chain::operator-() const { return *this * Rational(-1); }

Chain Chain::operator*(const Rational& s) const {
  Chain r(degree_);
  if (sgn(s) == 0) return r;
  Rational k = s;
  k.canonicalize();
  for (const auto& [t, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), t, Rational(a * k));
  return r;
}

Chain boundary(const Chain& c) {
  if (c.degree() == 0) throw Error(Errc::DegreeZero, "boundary of a 0-chain");
  Chain out(c.degree() - 1);
  for (const auto& [t, a] : c.terms())
    for (std::size_t i = 0; i < t.size; ++i) out.add(t.face(i), i % 2 == 0 ? a : Rational(-a));
  return out;
}

Rational l1_norm(const Chain& c) {
  Rational s = 0;
  for (const auto& [t, a] : c.terms()) s += abs(a);
  return s;
}

Distance tuple_diameter(const Tuple& t, const GeodesicTable& table) {
  Distance best = 0;
  for (std::size_t i = 0; i < t.size; ++i)
    for (std::size_t j = i + 1; j < t.size; ++j) best = std::max(best, table.dist(t.v[i], t.v[j]));
  return best;
}

Distance diameter(const Chain& c, const GeodesicTable& table) {
  Distance best = 0;
  for (const auto& [t, a] : c.terms()) best = std::max(best, tuple_diameter(t, table));
  return best;
}

Chain cone(Vertex v, const Chain& b) {
  if (b.degree() != 1) throw Error(Errc::InvalidArgument, "cone expects a 1-chain");
  if (!boundary(b).is_zero()) throw Error(Errc::NotACycle, "cone over a chain with nonzero boundary");
  Chain out(2);
  for (const auto& [t, a] : b.terms()) out.add(Tuple{v, t[0], t[1]}, a);
  return out;
}

Chain path_chain(const std::vector<Vertex>& path) {
  Chain c(1);
  for (std::size_t i = 1; i < path.size(); ++i) c.add(Tuple{path[i - 1], path[i]}, 1);
  return c;
}

bool all_integer(const Chain& c) {
  for (const auto& [t, a] : c.terms())
    if (a.get_den() != 1) return false;
  return true;
}

}  // namespace hypcoh
