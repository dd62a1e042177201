#include "hypcoh/pipeline.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "hypcoh/cochain.hpp"
#include "hypcoh/cusped.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/filling.hpp"
#include "hypcoh/projections.hpp"
#include "hypcoh/relative.hpp"

namespace hypcoh {

void Report::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Report::add(const std::string& key, const Rational& value) { add(key, to_string(value)); }
void Report::add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

bool Report::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

const std::string& Report::at(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.first == key) return e.second;
  throw Error(Errc::InvalidArgument, "report has no key " + key);
}

std::string Report::machine() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

std::string Report::human() const {
  std::size_t w = 0;
  for (const auto& e : entries_) w = std::max(w, e.first.size());
  std::string out;
  for (const auto& [k, v] : entries_) out += k + std::string(w + 2 - k.size(), ' ') + v + "\n";
  return out;
}

namespace {

void delta_entries(Report& r, const std::string& prefix, const GeodesicTable& t, const DeltaOptions& opts) {
  DeltaReport d = delta_report(t, opts);
  r.add(prefix + "slim", std::to_string(d.slim));
  r.add(prefix + "fourpoint", d.fourpoint);
  r.add(prefix + "exhaustive", d.slim_exhaustive && d.fourpoint_exhaustive);
}

void ipi_entries(Report& r, const std::string& prefix, const Graph& g, const GeodesicTable& t,
                 const PipelineConfig& c) {
  CycleSource src;
  auto paths = closed_paths(g, c.ipi_max_len, {0});
  if (c.ipi_max_paths && paths.size() > c.ipi_max_paths) {
    for (std::size_t i = 0; i < c.ipi_max_paths; ++i) src.paths.push_back(paths[i * paths.size() / c.ipi_max_paths]);
  } else {
    src.paths = std::move(paths);
  }
  r.add(prefix + "ipi_paths", src.paths.size());
  for (unsigned R : c.ipi_radii) {
    IpiReport ipi = linear_ipi_constant(g, t, R, src);
    std::string key = prefix + "ipi_R" + std::to_string(R);
    r.add(key, ipi.constant ? to_string(*ipi.constant) : std::string("none"));
    r.add(key + "_examined", ipi.examined);
    r.add(key + "_unfillable", ipi.unfillable);
  }
}

}  // namespace

Report run_pipeline(const PipelineConfig& c) {
  Report r;
  r.add("note", std::string("comparative measurements on a finite ball; no certification of infinite-object properties"));
  r.add("group", c.group);
  std::string sub;
  for (const auto& s : c.subgroup) sub += (sub.empty() ? "" : ",") + s;
  r.add("subgroup", sub);
  r.add("radius", std::size_t(c.radius));
  r.add("seed", std::to_string(c.seed));

  CayleyBall ball = cayley_ball(GroupOracle::by_name(c.group), c.radius);
  SubgraphFamily fam = coset_family(ball, c.subgroup);
  CuspedSpace cs = cusp(ball.graph, fam, c.depth);
  r.add("ball_vertices", ball.graph.size());
  r.add("members", fam.size());
  r.add("truncated_members", std::size_t(std::count(fam.truncated.begin(), fam.truncated.end(), true)));
  r.add("cusp_vertices", cs.graph.size());
  r.add("max_depth", std::size_t(cs.depths.empty() ? 0 : *std::max_element(cs.depths.begin(), cs.depths.end())));

  GeodesicTable tb(ball.graph), tc(cs.graph);
  delta_entries(r, "base_delta_", tb, c.delta);
  delta_entries(r, "cusp_delta_", tc, c.delta);
  ipi_entries(r, "base_", ball.graph, tb, c);
  ipi_entries(r, "cusp_", cs.graph, tc, c);

  ProjectionSystem sys = nearest_point_system(cs.graph, cs.horoballs);
  AxiomReport ax = check_axioms(sys.with_singletons());
  r.add("axiom_bounded_projection", ax.bounded_projection);
  r.add("axiom_coarse_lipschitz", ax.coarse_lipschitz);
  r.add("axiom_behrstock", ax.behrstock);
  r.add("axiom_strong_behrstock", ax.strong_behrstock);
  r.add("axiom_B", ax.B);
  r.add("axiom_strong_holds_at_B", ax.strong_holds_at_B);
  r.add("axiom_max_large_projections", ax.max_large_projection_count);

  // f = d g0 on the cusped space, made relative to the horoballs.
  Cochain f0 = coboundary(random_cochain(c.seed, tc, 1, kInfinity));
  RelativeResult rel = make_relative(cs.graph, f0, cs.horoballs);
  const Cochain f = rel.relative.cochain.memoized();
  r.add("relative_vanishes_on_horoballs", !member_violation(f, cs.horoballs));

  // phi: a primitive of f on the whole space; its restrictions are cocycles.
  Cochain phi = Cochain::from_function(1, cs.graph.size(), 1, [f](const Tuple& p) { return f(Tuple{0, p[0], p[1]}); });
  std::vector<Cochain> locals;
  for (const auto& m : cs.horoballs.members) locals.push_back(restrict_to(phi, m).memoized());
  CocycleExtension ext = extend_cocycle(sys, locals, 0);
  r.add("extension_B", ext.B);
  r.add("extension_lipschitz", ext.lipschitz);
  r.add("extension_max_rho", std::size_t(*std::max_element(ext.rho.begin(), ext.rho.end())));
  r.add("prefix_checked", ext.prefix_checked);
  r.add("prefix_failures", ext.prefix_failures);

  bool restricts = true, vanishes = true, coboundary_ok = true;
  Cochain diff = phi - ext.phi;
  for (std::size_t k = 0; k < cs.horoballs.size(); ++k) {
    const auto& m = cs.horoballs.members[k];
    for (Vertex i = 0; i < m.size(); ++i)
      for (Vertex j = 0; j < m.size(); ++j) {
        Tuple p{m[i], m[j]};
        if (ext.phi(p) != locals[k](Tuple{i, j})) restricts = false;
        if (!is_zero(diff(p))) vanishes = false;
      }
  }
  Cochain d = coboundary(diff);
  auto check = [&](const Tuple& t) {
    if (d(t) != f(t)) coboundary_ok = false;
  };
  for (const auto& m : cs.horoballs.members)
    for (Vertex a : m)
      for (Vertex b : m)
        for (Vertex e : m) check(Tuple{a, b, e});
  std::mt19937_64 rng(c.seed);
  const std::size_t n = cs.graph.size();
  for (std::size_t s = 0; s < c.sampled_triples; ++s) check(Tuple{Vertex(rng() % n), Vertex(rng() % n), Vertex(rng() % n)});
  r.add("extension_restricts", restricts);
  r.add("phi_minus_psi_vanishes_on_horoballs", vanishes);
  r.add("phi_minus_psi_coboundary_matches", coboundary_ok);
  r.add("coboundary_triples_sampled", c.sampled_triples);
  return r;
}

}  // namespace hypcoh
