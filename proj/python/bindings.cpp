#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gbt/report.hpp"

namespace py = pybind11;
using namespace gbt;

namespace {

Box to_box(const std::vector<double>& flat) {
  if (flat.size() != 4) throw std::invalid_argument("box must be [a, b, c, d] for [a,b] x [c,d]");
  Box b;
  b.lo = {flat[0], flat[2]};
  b.hi = {flat[1], flat[3]};
  if (!(b.lo[0] < b.hi[0] && b.lo[1] < b.hi[1])) throw std::invalid_argument("empty box");
  return b;
}

CurvatureConvention to_convention(const std::string& c) {
  if (c == "paper") return CurvatureConvention::paper;
  if (c == "standard") return CurvatureConvention::standard;
  throw std::invalid_argument("convention must be 'paper' or 'standard'");
}

std::map<std::string, BigRational> to_bindings(const std::map<std::string, std::string>& params) {
  std::map<std::string, BigRational> out;
  for (const auto& [k, v] : params) out[k] = parse_rational(v);
  return out;
}

ScalarCurvature planar_curvature(const VectorField& vf, CurvatureConvention c) {
  ScalarCurvature r = curvature_of(gbt_metric(vf), c);
  r.value = r.value.with_variables(vf.symbols());
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature-based limit-cycle analysis of planar polynomial systems";
  m.attr("__version__") = tool_version();

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<FileError>(m, "FileError", PyExc_FileNotFoundError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BoundaryContactError>(m, "BoundaryContactError", PyExc_RuntimeError);

  py::class_<VectorField>(m, "System")
      .def_readonly("name", &VectorField::name)
      .def_readonly("states", &VectorField::states)
      .def_readonly("params", &VectorField::params)
      .def_property_readonly("components",
                             [](const VectorField& vf) {
                               std::vector<std::string> out;
                               for (const auto& c : vf.components) out.push_back(c.to_string());
                               return out;
                             })
      .def_property_readonly("degree", &VectorField::degree)
      .def("specialize",
           [](const VectorField& vf, const std::map<std::string, std::string>& params) {
             return specialize(vf, to_bindings(params));
           })
      .def("render", [](const VectorField& vf) { return render(vf); })
      .def("__repr__", [](const VectorField& vf) { return "<System " + vf.name + ">"; });

  m.def("parse_system", [](const std::string& text) { return parse_system(text); });
  m.def("load_system", &load_system);

  m.def(
      "metric",
      [](const VectorField& vf) { return metric_json(gbt_metric(vf)).dump(); },
      "Metric components as JSON text");
  m.def(
      "curvature", [](const VectorField& vf, const std::string& convention) {
        return curvature_of(gbt_metric(vf), to_convention(convention)).value.to_string();
      },
      py::arg("system"), py::arg("convention") = "paper");
  m.def(
      "curvature_at",
      [](const VectorField& vf, const std::vector<std::string>& point, const std::string& convention) {
        ScalarCurvature r = planar_curvature(vf, to_convention(convention));
        std::vector<BigRational> p;
        for (const auto& s : point) p.push_back(parse_rational(s));
        if (p.size() != r.value.variables().size()) throw std::invalid_argument("point has the wrong dimension");
        return to_string(r.value.evaluate(p));
      },
      py::arg("system"), py::arg("point"), py::arg("convention") = "paper",
      "Exact value at a point given as rational strings; raises on a pole");
  m.def(
      "equilibria",
      [](const VectorField& vf, const std::vector<double>& box) {
        return topology_json(euler_characteristic(find_equilibria(vf, to_box(box)))).dump();
      },
      py::arg("system"), py::arg("box") = std::vector<double>{-3, 3, -3, 3});
  m.def(
      "singular_locus",
      [](const VectorField& vf, const std::vector<double>& box) {
        MetricTensor g = gbt_metric(vf);
        std::vector<Polynomial> hints;
        for (std::size_t i = 0; i < g.dim(); ++i) hints.push_back(g.g[i][i].numerator());
        ScalarCurvature r = curvature_of(g);
        r.value = r.value.with_variables(vf.states);
        return locus_json(singular_locus(r, to_box(box), {}, hints)).dump();
      },
      py::arg("system"), py::arg("box") = std::vector<double>{-3, 3, -3, 3});
  m.def(
      "find_limit_cycles",
      [](const VectorField& vf, const std::vector<double>& box, std::optional<std::vector<double>> direction) {
        const Box b = to_box(box);
        Section s = default_section(b);
        if (direction) {
          s.direction = *direction;
          s.r_lo = s.r_hi = 0;
        }
        return oracle_json(find_limit_cycles(vf, b, s), radial_reduction(vf)).dump();
      },
      py::arg("system"), py::arg("box") = std::vector<double>{-3, 3, -3, 3}, py::arg("direction") = py::none());
  m.def("integrate", [](const VectorField& vf, const std::vector<double>& x0, double t0, double t1, double tol) {
    IntegrateOptions o;
    o.tol = tol;
    Trajectory tr = integrate(vf, x0, t0, t1, o);
    return py::make_tuple(tr.t, tr.x, tr.escaped, tr.reason);
  }, py::arg("system"), py::arg("x0"), py::arg("t0"), py::arg("t1"), py::arg("tol") = 1e-10);
  m.def(
      "analyze",
      [](const std::string& path, const std::map<std::string, std::string>& params, const std::vector<double>& box,
         const std::string& stages, const std::string& convention) {
        AnalysisOptions o;
        o.params = to_bindings(params);
        o.box = to_box(box);
        o.stages = parse_stages(stages);
        o.convention = to_convention(convention);
        AnalysisResult r;
        {
          py::gil_scoped_release release;
          r = analyze_file(path, o);
        }
        return py::make_tuple(dump_report(r.report), r.exit_code);
      },
      py::arg("path"), py::arg("params") = std::map<std::string, std::string>{},
      py::arg("box") = std::vector<double>{-3, 3, -3, 3}, py::arg("stages") = "all",
      py::arg("convention") = "paper");
  m.def("hilbert_number", [](long n) { return hilbert_number(n).get_str(); });
  m.def("christopher_lloyd_bound", [](long k) { return to_string(christopher_lloyd_bound(k)); });
  m.def("bezout_bound", [](long a, long b) { return bezout_bound(a, b).get_str(); });
  m.def(
      "hilbert_table_csv", [](long n_max, long k_max) { return hilbert_csv(growth_table(n_max, k_max)); },
      py::arg("n_max"), py::arg("k_max") = 0);
}
