#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypcoh/cochain.hpp"
#include "hypcoh/cusped.hpp"
#include "hypcoh/decomposition.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/filling.hpp"
#include "hypcoh/hyperbolicity.hpp"
#include "hypcoh/io.hpp"
#include "hypcoh/pipeline.hpp"
#include "hypcoh/projections.hpp"
#include "hypcoh/relative.hpp"

using namespace hypcoh;

namespace {

struct Common {
  std::string graph, family, chain, cochain, out, format = "machine";
  std::uint64_t seed = 1;
};

std::string path_string(const std::vector<Vertex>& p) {
  std::string s;
  for (Vertex v : p) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

std::string table_string(const ControlTable& c) {
  std::string s;
  for (Distance d : c) s += (s.empty() ? "" : ",") + distance_string(d);
  return s;
}

std::vector<Vertex> parse_ids(const std::string& text) {
  std::vector<Vertex> out;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(Vertex(v));
    } catch (const std::logic_error&) {
      throw Error(Errc::ParseError, "bad vertex list '" + text + "'");
    }
  }
  return out;
}

void print(const Report& r, const Common& c) { std::cout << (c.format == "human" ? r.human() : r.machine()); }

Graph load_graph(const Common& c) { return parse_graph(read_file(c.graph)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypcoh: diameter-graded chains, filling norms, cusped spaces and cocycle constructions"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool family, bool chain, bool cochain) {
    s->add_option("--graph,-g", c.graph, "graph file")->required()->check(CLI::ExistingFile);
    if (family) s->add_option("--family", c.family, "family file")->required()->check(CLI::ExistingFile);
    if (chain) s->add_option("--chain", c.chain, "chain file")->check(CLI::ExistingFile);
    if (cochain) s->add_option("--cochain", c.cochain, "cochain file")->required()->check(CLI::ExistingFile);
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"machine", "human"}));
    s->add_option("--seed", c.seed, "random seed");
  };

  unsigned R = 1;
  std::string path;
  auto* fill = app.add_subcommand("fill", "exact filling norm of a 1-cycle");
  common(fill, false, true, false);
  fill->add_option("-R", R, "filling radius")->required()->check(CLI::Range(1u, 64u));
  fill->add_option("--path", path, "closed path as comma-separated ids (instead of --chain)");
  fill->add_option("--witness", c.out, "write the optimal 2-chain here");

  std::size_t exhaustive = 6, samples = 0, max_len = 6;
  auto* profile = app.add_subcommand("profile", "isoperimetric profile");
  common(profile, false, false, false);
  profile->add_option("-R", R, "filling radius")->required()->check(CLI::Range(1u, 64u));
  profile->add_option("--exhaustive", exhaustive, "enumerate closed paths up to this length");
  profile->add_option("--samples", samples, "random closed walks");

  std::string base;
  auto* ipi = app.add_subcommand("ipi", "linear isoperimetric constant over closed paths");
  common(ipi, false, false, false);
  ipi->add_option("-R", R, "filling radius")->required()->check(CLI::Range(1u, 64u));
  ipi->add_option("--max-len", max_len, "longest closed path");
  ipi->add_option("--base", base, "basepoints (comma-separated); all vertices if absent");

  std::string method = "both";
  auto* delta = app.add_subcommand("delta", "hyperbolicity constants");
  common(delta, false, false, false);
  delta->add_option("--method", method)->check(CLI::IsMember({"slim", "fourpoint", "both"}));

  std::optional<unsigned> depth;
  std::string out_family;
  auto* cuspcmd = app.add_subcommand("cusp", "glue combinatorial horoballs along a family");
  common(cuspcmd, true, false, false);
  cuspcmd->add_option("--depth", depth, "horoball depth (default per member)")->check(CLI::Range(0u, 30u));
  cuspcmd->add_option("--out", c.out, "cusped graph file");
  cuspcmd->add_option("--out-family", out_family, "horoball family file");

  std::string boundary_set;
  auto* decomp = app.add_subcommand("decompose", "path decomposition of a C_1^1 chain");
  common(decomp, false, true, false);
  decomp->add_option("--boundary-set", boundary_set, "allowed boundary vertices (default: support of the boundary)");

  bool check = false;
  auto* project = app.add_subcommand("project", "nearest-point projections onto a family");
  common(project, true, false, false);
  project->add_flag("--check-axioms", check, "report the smallest axiom constants");

  std::vector<std::string> cocycles;
  std::size_t W0 = 0;
  auto* extend = app.add_subcommand("extend", "extend per-member 1-cocycles to the whole graph");
  common(extend, true, false, false);
  extend->add_option("--cocycles", cocycles, "one cochain file per member, local ids")->required()->check(
      CLI::ExistingFile);
  extend->add_option("--base-member", W0, "W0");
  extend->add_option("--out", c.out, "write f as a degree-0 cochain");

  unsigned R0 = 1;
  std::string prim_method = "auto";
  auto* prim = app.add_subcommand("primitive", "primitive of a 2-cocycle");
  common(prim, false, false, true);
  prim->add_option("--R0", R0, "saturation radius (0: smallest found)")->check(CLI::Range(0u, 16u));
  prim->add_option("--method", prim_method)->check(CLI::IsMember({"auto", "extension", "cone"}));
  prim->add_option("--out", c.out, "write the primitive (pairs of diameter <= R0)");

  auto* relative = app.add_subcommand("relative", "make a 2-cocycle vanish on a family");
  common(relative, true, false, true);
  relative->add_option("--out", c.out, "write the relative cocycle (tuples inside the diameter bound)");
  unsigned out_radius = 2;
  relative->add_option("--out-radius", out_radius, "diameter bound for --out");

  auto* excise = app.add_subcommand("excise", "excision inverse of the truncated-pair inclusion");
  common(excise, true, false, false);
  excise->add_option("--depth", depth, "horoball depth")->check(CLI::Range(0u, 30u));

  PipelineConfig pc;
  std::string subgroup = "a";
  auto* pipe = app.add_subcommand("pipeline", "Cayley ball to cusped space to relative cocycles");
  pipe->add_option("--group", pc.group, "Z, Zk, Fk or Cn");
  pipe->add_option("--subgroup", subgroup, "comma-separated generator names");
  pipe->add_option("--radius", pc.radius)->check(CLI::Range(1u, 12u));
  pipe->add_option("--depth", pc.depth)->check(CLI::Range(0u, 30u));
  pipe->add_option("--ipi-radii", pc.ipi_radii);
  pipe->add_option("--ipi-max-len", pc.ipi_max_len);
  pipe->add_option("--ipi-max-paths", pc.ipi_max_paths, "0 keeps every closed path");
  pipe->add_option("--seed", pc.seed);
  pipe->add_option("--format", c.format)->check(CLI::IsMember({"machine", "human"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Report r;
    if (*fill) {
      Graph g = load_graph(c);
      GeodesicTable t(g);
      Chain b(1);
      if (!path.empty())
        b = path_chain(parse_ids(path));
      else if (!c.chain.empty())
        b = parse_chain(read_file(c.chain), g.size());
      else
        throw Error(Errc::InvalidArgument, "fill needs --chain or --path");
      FillingResult f = filling_norm(g, t, b, R);
      r.add("feasible", f.feasible);
      if (f.feasible) r.add("value", f.value);
      r.add("certificate_verified", verify_filling(t, b, R, f));
      r.add("columns", f.columns);
      r.add("lp_rounds", f.lp_rounds);
      if (f.feasible && !c.out.empty()) {
        write_file(c.out, format_chain(f.witness));
        r.add("witness", c.out);
      }
    } else if (*profile) {
      Graph g = load_graph(c);
      GeodesicTable t(g);
      IsoperimetricProfile p = isoperimetric_profile(g, t, R, exhaustive, samples, c.seed);
      r.add("R", std::size_t(R));
      r.add("paths_examined", p.paths_examined);
      for (const auto& [len, v] : p.entries) r.add("length_" + std::to_string(len), v);
      for (const auto& [len, k] : p.unfillable) r.add("unfillable_" + std::to_string(len), k);
    } else if (*ipi) {
      Graph g = load_graph(c);
      GeodesicTable t(g);
      CycleSource src;
      src.paths = closed_paths(g, max_len, base.empty() ? std::vector<Vertex>{} : parse_ids(base));
      IpiReport rep = linear_ipi_constant(g, t, R, src);
      r.add("constant", rep.constant ? to_string(*rep.constant) : std::string("none"));
      r.add("examined", rep.examined);
      r.add("unfillable", rep.unfillable);
    } else if (*delta) {
      GeodesicTable t(load_graph(c));
      DeltaOptions opts;
      opts.seed = c.seed;
      if (method != "fourpoint") {
        bool ex = true;
        r.add("slim", std::to_string(delta_slim(t, opts, &ex)));
        r.add("slim_exhaustive", ex);
      }
      if (method != "slim") {
        bool ex = true;
        r.add("fourpoint", delta_fourpoint(t, opts, &ex));
        r.add("fourpoint_exhaustive", ex);
      }
    } else if (*cuspcmd) {
      Graph g = load_graph(c);
      CuspedSpace cs = cusp(g, parse_family(read_file(c.family), g.size()), depth);
      r.add("vertices", cs.graph.size());
      r.add("edges", cs.graph.edge_count());
      r.add("members", cs.horoballs.size());
      for (std::size_t k = 0; k < cs.depths.size(); ++k) r.add("depth_" + std::to_string(k), std::size_t(cs.depths[k]));
      if (!c.out.empty()) write_file(c.out, format_graph(cs.graph));
      if (!out_family.empty()) write_file(out_family, format_family(cs.horoballs));
    } else if (*decomp) {
      Graph g = load_graph(c);
      GeodesicTable t(g);
      if (c.chain.empty()) throw Error(Errc::InvalidArgument, "decompose needs --chain");
      Chain ch = parse_chain(read_file(c.chain), g.size());
      std::vector<Vertex> T = boundary_set.empty() ? boundary(ch).support_vertices() : parse_ids(boundary_set);
      PathDecomposition d = decompose(ch, T, &t);
      std::size_t i = 0;
      for (const auto& [a, p] : d.open_paths) r.add("open_" + std::to_string(i++), to_string(a) + " " + path_string(p));
      i = 0;
      for (const auto& [a, p] : d.closed_paths) r.add("closed_" + std::to_string(i++), to_string(a) + " " + path_string(p));
      i = 0;
      for (const auto& [a, v] : d.diagonal_terms)
        r.add("diagonal_" + std::to_string(i++), to_string(a) + " " + std::to_string(v));
      i = 0;
      for (const auto& [a, e] : d.reversal_pairs)
        r.add("reversal_" + std::to_string(i++), to_string(a) + " " + std::to_string(e.first) + "," +
                                                     std::to_string(e.second));
      r.add("path_mass", d.path_mass());
      r.add("reversal_mass", d.reversal_mass());
      r.add("l1_norm", l1_norm(ch));
      r.add("recombines", d.recombine() == ch);
    } else if (*project) {
      Graph g = load_graph(c);
      ProjectionSystem sys = nearest_point_system(g, parse_family(read_file(c.family), g.size()));
      r.add("members", sys.members());
      if (check) {
        AxiomReport a = check_axioms(sys);
        r.add("bounded_projection", a.bounded_projection);
        r.add("bounded_projection_at", a.bounded_projection_witness);
        r.add("coarse_lipschitz", a.coarse_lipschitz);
        r.add("coarse_lipschitz_at", a.coarse_lipschitz_witness);
        r.add("behrstock", a.behrstock);
        r.add("behrstock_at", a.behrstock_witness);
        r.add("large_projections", a.large_projections);
        r.add("B", a.B);
        r.add("strong_behrstock", a.strong_behrstock);
        r.add("strong_behrstock_at", a.strong_behrstock_witness);
        r.add("strong_holds_at_B", a.strong_holds_at_B);
        r.add("max_large_projections", a.max_large_projection_count);
        for (const auto& [wy, zs] : a.large_projection_sets) {
          std::string s;
          for (std::size_t z : zs) s += (s.empty() ? "" : ",") + std::to_string(z);
          r.add("large_" + std::to_string(wy.first) + "_" + std::to_string(wy.second), s);
        }
      } else {
        for (std::size_t k = 0; k < sys.members(); ++k)
          for (Vertex v = 0; v < g.size(); ++v)
            r.add("pi_" + std::to_string(k) + "_" + std::to_string(v), path_string(sys.project(k, v)));
      }
    } else if (*extend) {
      Graph g = load_graph(c);
      ProjectionSystem sys = nearest_point_system(g, parse_family(read_file(c.family), g.size()));
      if (cocycles.size() != sys.members()) throw Error(Errc::InvalidArgument, "one cocycle file per member expected");
      std::vector<Cochain> locals;
      for (std::size_t k = 0; k < cocycles.size(); ++k)
        locals.push_back(parse_cochain(read_file(cocycles[k]), sys.family().members[k].size()));
      CocycleExtension ext = extend_cocycle(sys, locals, W0);
      r.add("B", ext.B);
      r.add("lipschitz", ext.lipschitz);
      r.add("prefix_checked", ext.prefix_checked);
      r.add("prefix_failures", ext.prefix_failures);
      for (std::size_t k = 0; k < ext.family.size(); ++k)
        if (k < sys.members()) r.add("parent_" + std::to_string(k), ext.parent[k]);
      if (!c.out.empty()) {
        Cochain::Table tab;
        for (Vertex v = 0; v < g.size(); ++v) tab[Tuple{v}] = ext.f[v];
        GeodesicTable t(g);
        write_file(c.out, format_cochain(Cochain::from_table(0, g.size(), ext.f[0].size(), tab), t));
      }
    } else if (*prim) {
      Graph g = load_graph(c);
      GeodesicTable t(g);
      Cochain f = parse_cochain(read_file(c.cochain), g.size());
      if (R0 == 0) {
        auto s = smallest_saturating_radius(t, std::max<unsigned>(1, t.diameter()));
        R0 = s ? *s : std::max<unsigned>(1, t.diameter());
      }
      PrimitiveOptions opts;
      opts.seed = c.seed;
      opts.method = prim_method == "cone" ? PrimitiveMethod::Cone
                    : prim_method == "extension" ? PrimitiveMethod::Extension
                                                 : PrimitiveMethod::Auto;
      Primitive p = construct_primitive(g, t, f, R0, opts);
      r.add("R0", std::size_t(R0));
      r.add("method", std::string(p.method == PrimitiveMethod::Cone ? "cone" : "extension"));
      for (std::size_t i = 0; i < p.extension_norm.size(); ++i)
        r.add("extension_norm_" + std::to_string(i), p.extension_norm[i]);
      r.add("norm_R0", graded_norm(p.g, t, R0));
      r.add("coboundary_matches", !first_difference(coboundary(p.g), f, t, R0));
      if (!c.out.empty()) write_file(c.out, format_cochain(p.g, t, R0));
    } else if (*relative) {
      Graph g = load_graph(c);
      GeodesicTable t(g);
      SubgraphFamily fam = parse_family(read_file(c.family), g.size());
      Cochain f = parse_cochain(read_file(c.cochain), g.size());
      RelativeResult rr = make_relative(g, f, fam);
      r.add("members", fam.size());
      for (std::size_t k = 0; k < rr.primitives.size(); ++k)
        r.add("method_" + std::to_string(k),
              std::string(rr.primitives[k].method == PrimitiveMethod::Cone ? "cone" : "extension"));
      r.add("vanishes_on_members", !member_violation(rr.relative.cochain, fam));
      if (!c.out.empty()) write_file(c.out, format_cochain(rr.relative.cochain, t, out_radius));
    } else if (*excise) {
      Graph g = load_graph(c);
      PairMap inc = truncated_inclusion(g, parse_family(read_file(c.family), g.size()), depth);
      ExcisionInverse ex = excision_inverse(inc);
      r.add("source_vertices", inc.source->size());
      r.add("target_vertices", inc.target->size());
      r.add("rho_plus", table_string(inc.rho_plus));
      r.add("rho_minus", table_string(inc.rho_minus));
      r.add("member_approximation", table_string(ex.member_approximation));
      r.add("target_closeness", table_string(ex.target_closeness));
      r.add("source_closeness", table_string(ex.source_closeness));
      r.add("target_ok", ex.target_ok);
      r.add("source_ok", ex.source_ok);
    } else if (*pipe) {
      pc.subgroup.clear();
      std::istringstream in(subgroup);
      for (std::string s; std::getline(in, s, ',');) pc.subgroup.push_back(s);
      r = run_pipeline(pc);
    }
    print(r, c);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
