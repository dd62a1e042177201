#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypcoh/cochain.hpp"
#include "hypcoh/cusped.hpp"
#include "hypcoh/decomposition.hpp"
#include "hypcoh/error.hpp"
#include "hypcoh/filling.hpp"
#include "hypcoh/hyperbolicity.hpp"
#include "hypcoh/io.hpp"
#include "hypcoh/pipeline.hpp"
#include "hypcoh/projections.hpp"

namespace py = pybind11;
using namespace hypcoh;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(q));
}

Rational rational(const py::handle& h) {
  if (py::isinstance<py::float_>(h)) throw Error(Errc::InvalidArgument, "floats are not exact; pass Fraction, int or str");
  return parse_rational(std::string(py::str(h)));
}

Tuple tuple_of(const py::handle& h) {
  auto vs = h.cast<std::vector<Vertex>>();
  if (vs.empty() || vs.size() > 4) throw Error(Errc::InvalidArgument, "tuples have 1 to 4 vertices");
  return Tuple::from(vs.data(), vs.size());
}

// {(v0, .., vk): coefficient}
Chain chain_of(const py::dict& d, int degree) {
  if (degree < 0 && d.empty()) throw Error(Errc::InvalidArgument, "empty chain needs an explicit degree");
  Chain c{degree};
  bool first = true;
  for (auto [k, v] : d) {
    Tuple t = tuple_of(k);
    if (first && degree < 0) c = Chain{int(t.size) - 1};
    first = false;
    if (int(t.size) != c.degree() + 1) throw Error(Errc::InvalidArgument, "mixed tuple lengths in chain");
    c.add(t, rational(v));
  }
  return c;
}

py::dict dict_of(const Chain& c) {
  py::dict d;
  for (const auto& [t, q] : c.terms()) {
    py::tuple key(t.size);
    for (std::size_t i = 0; i < t.size; ++i) key[i] = t[i];
    d[key] = fraction(q);
  }
  return d;
}

py::object maybe_fraction(const std::optional<Rational>& q) { return q ? fraction(*q) : py::none(); }

py::dict filling_dict(const GeodesicTable& t, const Chain& b, unsigned R, const FillingResult& r) {
  py::dict d;
  d["feasible"] = r.feasible;
  d["value"] = r.feasible ? fraction(r.value) : py::none();
  d["witness"] = dict_of(r.witness);
  d["certificate_verified"] = verify_filling(t, b, R, r);
  d["columns"] = r.columns;
  d["lp_rounds"] = r.lp_rounds;
  return d;
}

SubgraphFamily family_of(std::size_t n, std::vector<std::vector<Vertex>> members) {
  bool disjoint = pairwise_disjoint(members);
  return make_family(n, std::move(members), disjoint);
}

py::list weighted_paths(const std::vector<std::pair<Rational, std::vector<Vertex>>>& ps) {
  py::list out;
  for (const auto& [q, p] : ps) out.append(py::make_tuple(fraction(q), p));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact filling norms, hyperbolicity measurements and cusped spaces on finite graphs";

  static py::handle exc = py::exception<Error>(m, "HypcohError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc(e.what());
      PyObject_SetAttrString(err.ptr(), "code", py::str(std::string(errc_name(e.code()))).ptr());
      PyErr_SetObject(exc.ptr(), err.ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); }),
           py::arg("n"), py::arg("edges") = std::vector<Edge>{})
      .def("__len__", &Graph::size)
      .def_property_readonly("size", &Graph::size)
      .def("edge_count", &Graph::edge_count)
      .def("edges", &Graph::edges)
      .def("neighbors", &Graph::neighbors)
      .def("adjacent", &Graph::adjacent)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) {
        return "Graph(" + std::to_string(g.size()) + " vertices, " + std::to_string(g.edge_count()) + " edges)";
      });

  py::class_<GeodesicTable>(m, "Metric")
      .def(py::init(&metric))
      .def("dist", [](const GeodesicTable& t, Vertex u, Vertex v) -> py::object {
        Distance d = t.dist(u, v);
        return d == kInfinity ? py::object(py::float_(INFINITY)) : py::object(py::int_(d));
      })
      .def("geodesic", [](const GeodesicTable& t, Vertex u, Vertex v) { return geodesic(t, u, v); })
      .def("connected", &GeodesicTable::connected);

  m.def("parse_graph", &parse_graph);
  m.def("format_graph", &format_graph);

  m.def(
      "filling_norm",
      [](const Graph& g, const py::dict& chain, unsigned R, bool integer, std::size_t max_columns) {
        GeodesicTable t = metric(g);
        Chain b = chain_of(chain, 1);
        FillingOptions opts;
        opts.integer = integer;
        opts.max_columns = max_columns;
        return filling_dict(t, b, R, filling_norm(g, t, b, R, opts));
      },
      py::arg("graph"), py::arg("chain"), py::arg("R"), py::arg("integer") = false, py::arg("max_columns") = 60000,
      "Minimal l1 norm of a 2-chain of diameter <= R with boundary `chain`.");

  m.def(
      "homological_area",
      [](const Graph& g, const std::vector<Vertex>& path, unsigned R) {
        GeodesicTable t = metric(g);
        FillingResult r = homological_area(g, t, path, R);
        Chain b{1};
        for (std::size_t i = 0; i + 1 < path.size(); ++i) b.add(Tuple{path[i], path[i + 1]}, 1);
        return filling_dict(t, b, R, r);
      },
      py::arg("graph"), py::arg("path"), py::arg("R"));

  m.def(
      "delta",
      [](const Graph& g, std::uint64_t seed) {
        DeltaOptions opts;
        opts.seed = seed;
        DeltaReport r = delta_report(metric(g), opts);
        py::dict d;
        d["slim"] = r.slim;
        d["fourpoint"] = fraction(r.fourpoint);
        d["exhaustive"] = r.slim_exhaustive && r.fourpoint_exhaustive;
        return d;
      },
      py::arg("graph"), py::arg("seed") = 1);

  m.def(
      "ipi_constant",
      [](const Graph& g, unsigned R, std::size_t max_len, std::vector<Vertex> basepoints) {
        CycleSource src;
        src.paths = closed_paths(g, max_len, basepoints);
        IpiReport r = linear_ipi_constant(g, metric(g), R, src);
        py::dict d;
        d["constant"] = maybe_fraction(r.constant);
        d["examined"] = r.examined;
        d["unfillable"] = r.unfillable;
        return d;
      },
      py::arg("graph"), py::arg("R"), py::arg("max_len"), py::arg("basepoints") = std::vector<Vertex>{});

  m.def(
      "decompose",
      [](const py::dict& chain, const std::vector<Vertex>& T) {
        PathDecomposition p = decompose(chain_of(chain, 1), T);
        py::dict d;
        d["open_paths"] = weighted_paths(p.open_paths);
        d["closed_paths"] = weighted_paths(p.closed_paths);
        py::list diag, rev;
        for (const auto& [q, v] : p.diagonal_terms) diag.append(py::make_tuple(fraction(q), v));
        for (const auto& [q, e] : p.reversal_pairs) rev.append(py::make_tuple(fraction(q), e));
        d["diagonal_terms"] = diag;
        d["reversal_pairs"] = rev;
        d["path_mass"] = fraction(p.path_mass());
        d["reversal_mass"] = fraction(p.reversal_mass());
        d["recombined"] = dict_of(p.recombine());
        return d;
      },
      py::arg("chain"), py::arg("T"));

  m.def(
      "cusp",
      [](const Graph& g, std::vector<std::vector<Vertex>> members, std::optional<unsigned> depth) {
        CuspedSpace cs = cusp(g, family_of(g.size(), std::move(members)), depth);
        py::dict d;
        d["graph"] = cs.graph;
        d["base_size"] = cs.base_size;
        d["horoballs"] = cs.horoballs.members;
        d["depths"] = cs.depths;
        py::list origin;
        for (const CuspOrigin& o : cs.origin) origin.append(py::make_tuple(o.member, o.base, o.level));
        d["origin"] = origin;
        return d;
      },
      py::arg("graph"), py::arg("members"), py::arg("depth") = std::nullopt);

  m.def(
      "cayley_ball",
      [](const std::string& group, unsigned radius, const std::vector<std::string>& subgroup) {
        CayleyBall ball = cayley_ball(GroupOracle::by_name(group), radius);
        py::dict d;
        d["graph"] = ball.graph;
        d["labels"] = ball.labels;
        if (!subgroup.empty()) d["cosets"] = coset_family(ball, subgroup).members;
        return d;
      },
      py::arg("group"), py::arg("radius"), py::arg("subgroup") = std::vector<std::string>{});

  m.def(
      "check_axioms",
      [](const Graph& g, std::vector<std::vector<Vertex>> members) {
        AxiomReport a = check_axioms(nearest_point_system(g, family_of(g.size(), std::move(members))));
        py::dict d;
        d["bounded_projection"] = fraction(a.bounded_projection);
        d["coarse_lipschitz"] = fraction(a.coarse_lipschitz);
        d["behrstock"] = fraction(a.behrstock);
        d["B"] = fraction(a.B);
        d["strong_behrstock"] = fraction(a.strong_behrstock);
        d["strong_holds_at_B"] = a.strong_holds_at_B;
        d["max_large_projections"] = a.max_large_projection_count;
        return d;
      },
      py::arg("graph"), py::arg("members"));

  m.def(
      "smallest_saturating_radius",
      [](const Graph& g, unsigned max_radius) { return smallest_saturating_radius(metric(g), max_radius); },
      py::arg("graph"), py::arg("max_radius"));

  m.def(
      "run_pipeline",
      [](const std::string& group, const std::vector<std::string>& subgroup, unsigned radius,
         std::optional<unsigned> depth, const std::vector<unsigned>& ipi_radii, std::size_t ipi_max_len,
         std::size_t ipi_max_paths, std::uint64_t seed) {
        PipelineConfig c;
        c.group = group;
        c.subgroup = subgroup;
        c.radius = radius;
        c.depth = depth;
        c.ipi_radii = ipi_radii;
        c.ipi_max_len = ipi_max_len;
        c.ipi_max_paths = ipi_max_paths;
        c.seed = seed;
        Report r;
        {
          py::gil_scoped_release nogil;
          r = run_pipeline(c);
        }
        py::dict d;
        for (const auto& [k, v] : r.entries()) d[py::str(k)] = v;
        return d;
      },
      py::arg("group") = "F2", py::arg("subgroup") = std::vector<std::string>{"a"}, py::arg("radius") = 4,
      py::arg("depth") = std::nullopt, py::arg("ipi_radii") = std::vector<unsigned>{2}, py::arg("ipi_max_len") = 4,
      py::arg("ipi_max_paths") = 24, py::arg("seed") = 1,
      "Report entries as strings; rationals are num/den.");
}
