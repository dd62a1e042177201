#include "hypcoh/hyperbolicity.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "hypcoh/error.hpp"

namespace hypcoh {

namespace {

void require_connected(const GeodesicTable& t) {
  if (!t.connected()) throw Error(Errc::Disconnected, "hyperbolicity constants need a connected graph");
}

// Twice the four-point defect of (x,y,z,w).
Distance defect2(const GeodesicTable& t, Vertex x, Vertex y, Vertex z, Vertex w) {
  std::array<Distance, 3> s{t.dist(x, y) + t.dist(z, w), t.dist(x, z) + t.dist(y, w), t.dist(x, w) + t.dist(y, z)};
  std::sort(s.begin(), s.end());
  return s[2] - s[1];
}

// Max distance from a vertex of `side` to the union of the other two sides.
Distance side_gap(const GeodesicTable& t, const std::vector<Vertex>& side, const std::vector<Vertex>& o1,
                  const std::vector<Vertex>& o2) {
  Distance worst = 0;
  for (Vertex v : side) {
    Distance best = kInfinity;
    for (Vertex u : o1) best = std::min(best, t.dist(v, u));
    for (Vertex u : o2) best = std::min(best, t.dist(v, u));
    worst = std::max(worst, best);
  }
  return worst;
}

Distance triangle_slimness(const GeodesicTable& t, Vertex a, Vertex b, Vertex c) {
  auto side = [&](Vertex u, Vertex v) { return u < v ? t.geodesic(u, v) : t.geodesic(v, u); };
  std::vector<Vertex> ab = side(a, b), bc = side(b, c), ac = side(a, c);
  return std::max({side_gap(t, ab, bc, ac), side_gap(t, bc, ab, ac), side_gap(t, ac, ab, bc)});
}

}  // namespace

Rational delta_fourpoint(const GeodesicTable& t, const DeltaOptions& opts, bool* exhaustive) {
  require_connected(t);
  const Vertex n = Vertex(t.size());
  Distance best = 0;
  if (n <= opts.exhaustive_cap) {
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y)
        for (Vertex z = y + 1; z < n; ++z)
          for (Vertex w = z + 1; w < n; ++w) best = std::max(best, defect2(t, x, y, z, w));
    if (exhaustive) *exhaustive = true;
  } else {
    std::mt19937_64 rng(opts.seed);
    for (std::size_t k = 0; k < opts.samples; ++k)
      best = std::max(best, defect2(t, Vertex(rng() % n), Vertex(rng() % n), Vertex(rng() % n), Vertex(rng() % n)));
    if (exhaustive) *exhaustive = false;
  }
  return ratio(long(best), 2);
}

Distance delta_slim(const GeodesicTable& t, const DeltaOptions& opts, bool* exhaustive) {
  require_connected(t);
  const Vertex n = Vertex(t.size());
  Distance best = 0;
  if (n <= opts.exhaustive_cap) {
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        for (Vertex c = b + 1; c < n; ++c) best = std::max(best, triangle_slimness(t, a, b, c));
    if (exhaustive) *exhaustive = true;
  } else {
    std::mt19937_64 rng(opts.seed);
    std::size_t budget = std::max<std::size_t>(1, opts.samples / 20);
    for (std::size_t k = 0; k < budget; ++k)
      best = std::max(best, triangle_slimness(t, Vertex(rng() % n), Vertex(rng() % n), Vertex(rng() % n)));
    if (exhaustive) *exhaustive = false;
  }
  return best;
}

DeltaReport delta_report(const GeodesicTable& t, const DeltaOptions& opts) {
  DeltaReport r;
  r.slim = delta_slim(t, opts, &r.slim_exhaustive);
  r.fourpoint = delta_fourpoint(t, opts, &r.fourpoint_exhaustive);
  return r;
}

HyperbolicFillingReport verify_hyperbolic_filling(const Graph& g, const GeodesicTable& t, unsigned R,
                                                  const std::vector<Chain>& cycles, const FillingOptions& opts) {
  if (R < 1) throw Error(Errc::InvalidArgument, "R must be >= 1");
  HyperbolicFillingReport rep;
  for (const Chain& b : cycles) {
    if (b.is_zero()) continue;
    ++rep.examined;
    if (!boundary(b).is_zero() || diameter(b, t) > R) {
      rep.violations.push_back(b);
      continue;
    }
    FillingResult f = filling_norm(g, t, b, R, opts);
    if (!f.feasible) {
      rep.violations.push_back(b);
      continue;
    }
    Rational q = f.value / (l1_norm(b) * long(R));
    if (!rep.c_measured || q > *rep.c_measured) rep.c_measured = q;
  }
  return rep;
}

}  // namespace hypcoh
