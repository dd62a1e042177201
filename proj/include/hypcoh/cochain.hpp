#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypcoh/chain.hpp"
#include "hypcoh/graph.hpp"

namespace hypcoh {

namespace detail {
struct CochainNode {
  virtual ~CochainNode() = default;
  /// out += scale * value(t)
  virtual void accumulate(const Tuple& t, const Rational& scale, Coeff& out) const = 0;
};
}  // namespace detail

/// An i-cochain on the vertices 0..n-1 with values in Q^dim. Immutable; values
/// are computed on demand, so sums, coboundaries and pullbacks never
/// enumerate tuples. Tuples have at most four entries, so degree <= 3.
class Cochain {
 public:
  using Table = std::map<Tuple, Coeff>;
  using Function = std::function<Coeff(const Tuple&)>;

  /// The zero cochain.
  Cochain(int degree = 0, std::size_t vertices = 0, std::size_t dim = 1);

  /// Absent tuples are zero. Throws InvalidArgument on bad tuple length,
  /// coefficient length or vertex id.
  static Cochain from_table(int degree, std::size_t vertices, std::size_t dim, const Table& values);
  static Cochain from_function(int degree, std::size_t vertices, std::size_t dim, Function fn);
  /// Degree-0 cochain from one value per vertex (dim 1).
  static Cochain from_values(const std::vector<Rational>& values);

  int degree() const { return degree_; }
  std::size_t vertices() const { return n_; }
  std::size_t dim() const { return dim_; }

  /// Throws InvalidArgument for a tuple of the wrong length or a vertex out of range.
  Coeff operator()(const Tuple& t) const;
  void accumulate(const Tuple& t, const Rational& scale, Coeff& out) const;

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain operator*(const Rational& s) const;

  /// Evaluations are cached (not thread safe).
  Cochain memoized() const;
  /// Snapshot of the nonzero values on the given tuples.
  Cochain materialize(const std::vector<Tuple>& tuples) const;

  std::shared_ptr<const detail::CochainNode> node() const { return node_; }
  Cochain(int degree, std::size_t vertices, std::size_t dim, std::shared_ptr<const detail::CochainNode> node);

 private:
  void check(const Tuple& t) const;

  int degree_;
  std::size_t n_;
  std::size_t dim_;
  std::shared_ptr<const detail::CochainNode> node_;
};

inline Cochain operator*(const Rational& s, const Cochain& f) { return f * s; }

/// (df)(x_0..x_{i+1}) = sum_j (-1)^j f(..x_j omitted..). Throws InvalidArgument at degree 3.
Cochain coboundary(const Cochain& f);

/// <f, c> = sum_t c_t f(t). Throws InvalidArgument on a degree mismatch.
Coeff pairing(const Cochain& f, const Chain& c);

/// Calls fn on every (k)-tuple whose pairwise distances are <= R.
void for_each_tuple(const GeodesicTable& t, std::size_t length, Distance R,
                    const std::function<void(const Tuple&)>& fn);

/// |f|^R: max sup-norm over tuples of diameter <= R.
Rational graded_norm(const Cochain& f, const GeodesicTable& t, Distance R);

/// First tuple of diameter <= R on which f and g differ (exhaustive).
std::optional<Tuple> first_difference(const Cochain& f, const Cochain& g, const GeodesicTable& t, Distance R);
/// Same, over every tuple on the vertex set.
std::optional<Tuple> first_difference(const Cochain& f, const Cochain& g);

/// f on the induced subgraph: local vertex i is global[i].
Cochain restrict_to(const Cochain& f, const std::vector<Vertex>& global);

/// Sum over members of the local cochains, each extended by zero off its
/// member. Members must be pairwise disjoint; locals[k] lives on members[k]
/// (local ids in sorted member order).
Cochain extend_by_zero(std::size_t vertices, const std::vector<std::vector<Vertex>>& members,
                       const std::vector<Cochain>& locals);

/// (f^* a)(x_0..x_k) = a(f(x_0)..f(x_k)); map[v] is a vertex of a's space.
Cochain pullback(const Cochain& a, const std::vector<Vertex>& map);

/// Random cochain supported on tuples of diameter <= R, entries num/den with
/// |num| <= range and den in 1..max_den.
Cochain random_cochain(std::uint64_t seed, const GeodesicTable& t, int degree, Distance R, std::size_t dim = 1,
                       long range = 5, long max_den = 3);

enum class PrimitiveMethod {
  /// Extension when the short-pair complex is small enough, cone otherwise.
  Auto,
  /// Filling-based h on boundaries, min-sup extension, geodesic formula.
  Extension,
  /// g(x,y) = f(o,x,y) for a fixed vertex o; exact but without norm control.
  Cone,
};

struct PrimitiveOptions {
  PrimitiveMethod method = PrimitiveMethod::Auto;
  /// Auto switches to the cone above this many short pairs.
  std::size_t extension_cap = 600;
  /// Alternative geodesics checked per pair in stage (iii); exhaustive at <= 8 vertices.
  unsigned path_checks = 3;
  /// Cocycle check: exhaustive on 4-tuples of diameter <= R0+1 up to this many
  /// vertices, otherwise this many sampled 4-tuples.
  std::size_t cocycle_exhaustive_cap = 12;
  std::size_t cocycle_samples = 20000;
  bool verify_cocycle = true;
  std::uint64_t seed = 1;
};

struct Primitive {
  Cochain g;
  PrimitiveMethod method = PrimitiveMethod::Cone;
  /// Optimal max |g| over pairs of diameter <= R0, per coordinate (extension only).
  std::vector<Rational> extension_norm;
  /// rank of B_1^{R0} and dim Z_1^{R0}.
  std::size_t boundary_rank = 0;
  std::size_t cycle_dim = 0;
  std::size_t alternative_paths_checked = 0;
};

/// g with dg = f for a degree-2 cocycle f. The extension method builds h on
/// B_1^{R0} from h(dc) = f(c), extends it with minimal sup norm by an exact LP
/// per coordinate, and fills in long pairs with
///   g(a,b) = sum_j g(p_{j-1},p_j) - sum_j f(p_0,p_j,p_{j+1})
/// along the deterministic geodesic. Throws NotACocycle, NotWellDefined,
/// Unsaturated, Disconnected, InvalidArgument.
Primitive construct_primitive(const Graph& g, const GeodesicTable& t, const Cochain& f, unsigned R0,
                              const PrimitiveOptions& opts = {});

/// Smallest R0 at which every 1-cycle of diameter <= R0 bounds in C_2^{R0},
/// or nullopt if none up to `max_radius`.
std::optional<unsigned> smallest_saturating_radius(const GeodesicTable& t, unsigned max_radius);

/// Cochain file: "cochain <degree> <dim>" then "v0 .. vk val1 .. valm" lines,
/// one per nonzero value on tuples of diameter <= R.
std::string format_cochain(const Cochain& f, const GeodesicTable& t, Distance R = kInfinity);
/// Throws ParseError.
Cochain parse_cochain(const std::string& text, std::size_t vertices);

}  // namespace hypcoh
