#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "hypcoh/graph.hpp"
#include "hypcoh/rational.hpp"

namespace hypcoh {

/// Ordered tuple of at most four vertices. Repeated vertices are allowed.
struct Tuple {
  std::array<Vertex, 4> v{};
  std::uint8_t size = 0;

  Tuple() = default;
  Tuple(std::initializer_list<Vertex> xs);
  static Tuple from(const Vertex* xs, std::size_t n);

  Vertex operator[](std::size_t i) const { return v[i]; }
  const Vertex* begin() const { return v.data(); }
  const Vertex* end() const { return v.data() + size; }

  /// Tuple with the i-th entry removed.
  Tuple face(std::size_t i) const;
  Tuple reversed() const;

  bool operator==(const Tuple& o) const;
  bool operator!=(const Tuple& o) const { return !(*this == o); }
  bool operator<(const Tuple& o) const;
};

struct TupleHash {
  std::size_t operator()(const Tuple& t) const;
};

std::string to_string(const Tuple& t);

/// Sparse i-chain with exact coefficients. Zero coefficients are never stored.
class Chain {
 public:
  using Terms = std::map<Tuple, Rational>;

  explicit Chain(int degree = 1) : degree_(degree) {}
  static Chain single(const Tuple& t, const Rational& coeff = 1);

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Tuple& t) const;

  /// Adds `coeff * t`. Throws InvalidArgument if the tuple length is wrong.
  void add(const Tuple& t, const Rational& coeff);
  void add(const Chain& c, const Rational& scale = 1);

  /// Distinct vertices appearing in the support, sorted.
  std::vector<Vertex> support_vertices() const;

  Chain operator+(const Chain& o) const;
  Chain operator-(const Chain& o) const;
  Chain operator-() const;
  Chain operator*(const Rational& s) const;
  bool operator==(const Chain& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }
  bool operator!=(const Chain& o) const { return !(*this == o); }

 private:
  int degree_;
  Terms terms_;
};

inline Chain operator*(const Rational& s, const Chain& c) { return c * s; }

/// Alternating face map. Throws DegreeZero.
Chain boundary(const Chain& c);
Rational l1_norm(const Chain& c);
Distance tuple_diameter(const Tuple& t, const GeodesicTable& table);
/// Max tuple diameter over the support; 0 for the zero chain.
Distance diameter(const Chain& c, const GeodesicTable& table);
/// Cone over a 1-cycle: sum of a_t (v,x,y). Throws NotACycle.
Chain cone(Vertex v, const Chain& b);
/// The 1-chain of a path: sum of (p[i-1], p[i]).
Chain path_chain(const std::vector<Vertex>& path);
bool all_integer(const Chain& c);

}  // namespace hypcoh
