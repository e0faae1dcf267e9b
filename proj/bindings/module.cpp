#include "pprc/consistency.hpp"
#include "pprc/discrete.hpp"
#include "pprc/errors.hpp"
#include "pprc/presets.hpp"
#include "pprc/projector.hpp"
#include "pprc/solver.hpp"

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pprc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double> &v) {
  Array a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

std::vector<double> from_array(const Array &a) {
  return {a.data(), a.data() + a.size()};
}

Vec2 vec(const std::pair<double, double> &p) { return {p.first, p.second}; }
std::pair<double, double> tup(Vec2 v) { return {v.x, v.y}; }

ProjectionData data(const DetectorGrid &g, const Array &v) {
  return ProjectionData(g, from_array(v));
}

} // namespace

PYBIND11_MODULE(_pprc, m) {
  m.doc() = "Projection pair range conditions: geometry, projectors, consistency tests, CGNE";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", base.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<DegenerateKernelError>(m, "DegenerateKernelError", base.ptr());

  py::class_<ImageDomain>(m, "ImageDomain")
      .def_static("rectangle",
                  [](std::pair<double, double> lo, std::pair<double, double> hi) {
                    return ImageDomain::rectangle(vec(lo), vec(hi));
                  })
      .def_static("disc", [](std::pair<double, double> c, double r) {
        return ImageDomain::disc(vec(c), r);
      })
      .def_static("polygon",
                  [](const std::vector<std::pair<double, double>> &v) {
                    std::vector<Vec2> pts;
                    for (const auto &p : v)
                      pts.push_back(vec(p));
                    return ImageDomain::polygon(std::move(pts));
                  })
      .def("contains", [](const ImageDomain &d, std::pair<double, double> x) { return d.contains(vec(x)); })
      .def_property_readonly("area", &ImageDomain::area)
      .def_property_readonly("centroid", [](const ImageDomain &d) { return tup(d.centroid()); })
      .def_property_readonly("kind", [](const ImageDomain &d) { return to_string(d.kind()); });

  py::class_<ParGeometry>(m, "ParGeometry")
      .def(py::init([](double theta) { return ParGeometry{theta}; }), py::arg("theta"))
      .def_readwrite("theta", &ParGeometry::theta);
  py::class_<FanGeometry>(m, "FanGeometry")
      .def(py::init([](std::pair<double, double> v, double theta0, double mu) {
             return FanGeometry{vec(v), theta0, mu};
           }),
           py::arg("vertex"), py::arg("theta0") = -kPi, py::arg("mu") = 0.0)
      .def_property_readonly("vertex", [](const FanGeometry &f) { return tup(f.vertex); })
      .def_readwrite("theta0", &FanGeometry::theta0)
      .def_readwrite("mu", &FanGeometry::mu);

  py::class_<PairGeometry>(m, "PairGeometry")
      .def(py::init([](ViewGeometry a, ViewGeometry b, ImageDomain d) {
             return PairGeometry{std::move(a), std::move(b), std::move(d)};
           }),
           py::arg("first"), py::arg("second"), py::arg("domain"))
      .def_readonly("first", &PairGeometry::first)
      .def_readonly("second", &PairGeometry::second)
      .def_readonly("domain", &PairGeometry::domain)
      .def_property_readonly("kind", [](const PairGeometry &p) { return to_string(p.kind()); })
      .def("intersection", [](const PairGeometry &p, double r1, double r2) {
        return tup(p.intersection(r1, r2));
      });

  py::class_<AdmissibilityReport>(m, "AdmissibilityReport")
      .def_readonly("admissible", &AdmissibilityReport::admissible)
      .def_readonly("margin", &AdmissibilityReport::margin)
      .def_readonly("orientation", &AdmissibilityReport::orientation)
      .def_readonly("failures", &AdmissibilityReport::failures);
  m.def("check_pair_admissible", &check_pair_admissible, py::arg("pair"),
        py::arg("boundary_samples") = 1024, py::arg("threshold") = 1e-6);
  m.def("ray_range", [](const ViewGeometry &g, const ImageDomain &d) {
    const Interval i = ray_range(g, d);
    return std::pair{i.lo, i.hi};
  });
  m.def("central_parameter", &central_parameter);

  py::class_<DetectorGrid>(m, "DetectorGrid")
      .def(py::init<double, double, int>(), py::arg("lo"), py::arg("hi"), py::arg("n_bins"))
      .def_readonly("lo", &DetectorGrid::lo)
      .def_readonly("hi", &DetectorGrid::hi)
      .def_readonly("n_bins", &DetectorGrid::n_bins)
      .def_property_readonly("step", &DetectorGrid::step)
      .def("samples", [](const DetectorGrid &g) { return to_array(g.samples()); });

  py::class_<Bump>(m, "Bump")
      .def(py::init([](std::pair<double, double> c, double r, double a) { return Bump{vec(c), r, a}; }),
           py::arg("center"), py::arg("radius"), py::arg("amplitude") = 1.0)
      .def_property_readonly("center", [](const Bump &b) { return tup(b.center); })
      .def_readonly("radius", &Bump::radius)
      .def_readonly("amplitude", &Bump::amplitude);
  py::class_<Phantom>(m, "Phantom")
      .def(py::init<std::vector<Bump>>(), py::arg("bumps") = std::vector<Bump>{})
      .def_property_readonly("bumps", &Phantom::bumps)
      .def("__call__", [](const Phantom &f, double x, double y) { return f({x, y}); })
      .def("mass", &Phantom::mass)
      .def("l2_norm", &Phantom::l2_norm);
  m.def("random_phantom", &random_phantom, py::arg("domain"), py::arg("count"), py::arg("seed"),
        py::arg("margin") = 1.0);
  m.def("unit_bump_mass", &unit_bump_mass);
  m.def("inconceivable_target",
        [](const DetectorGrid &g1, const DetectorGrid &g2, double center2) {
          const DataPair d = inconceivable_target(g1, g2, center2);
          return std::pair{to_array(d.first.values), to_array(d.second.values)};
        });

  m.def("project_ray", [](const ViewGeometry &g, const Phantom &f, double r) {
    return project_ray(g, f, r);
  });
  m.def(
      "project_view",
      [](const ViewGeometry &g, const Phantom &f, const DetectorGrid &grid, int threads) {
        return to_array(project_view(g, f, grid, {}, threads).values);
      },
      py::arg("view"), py::arg("phantom"), py::arg("grid"), py::arg("threads") = 1);

  py::class_<KernelPair>(m, "KernelPair")
      .def_readonly("name", &KernelPair::name)
      .def_readonly("sign", &KernelPair::sign)
      .def("first", [](const KernelPair &k, double r) { return k.first(r); })
      .def("second", [](const KernelPair &k, double r) { return k.second(r); });
  m.def("known_kernels", &known_kernels);
  m.def("pprc_terms", [](const DetectorGrid &g1, const Array &v1, const DetectorGrid &g2,
                         const Array &v2, const KernelPair &k) {
    const PprcTerms t = pprc_terms({data(g1, v1), data(g2, v2)}, k);
    return std::pair{t.first, t.second};
  });
  m.def("kernel_condition_lhs", &kernel_condition_lhs);
  m.def("eval_G", [](double a, double b, double c, double d, double mu, std::pair<double, double> dl) {
    return eval_G(a, b, c, d, mu, vec(dl));
  });
  m.def("expo_lhs_log", [](double r1, double r2, double mu, std::pair<double, double> l1,
                           std::pair<double, double> l2) {
    return expo_lhs_log(r1, r2, mu, vec(l1), vec(l2));
  });
  m.def("counterexample_tuple", &counterexample_tuple);
  m.def("quoted_G_constant", &quoted_G_constant);

  py::class_<ImageGrid>(m, "ImageGrid")
      .def(py::init<int, int, double>(), py::arg("nx"), py::arg("ny"), py::arg("extent") = 70.0)
      .def(py::init<int, int, double, const ImageDomain &>(), py::arg("nx"), py::arg("ny"),
           py::arg("extent"), py::arg("domain"))
      .def_readonly("nx", &ImageGrid::nx)
      .def_readonly("ny", &ImageGrid::ny)
      .def_readonly("extent", &ImageGrid::extent)
      .def("active_pixels", &ImageGrid::active_pixels)
      .def("rasterize", [](const ImageGrid &g, const Phantom &f) { return to_array(rasterize(g, f)); });

  py::class_<PairOperator>(m, "PairOperator")
      .def(py::init<const PairGeometry &, ImageGrid, DetectorGrid, DetectorGrid, int>(),
           py::arg("pair"), py::arg("image"), py::arg("first"), py::arg("second"),
           py::arg("threads") = 1)
      .def_property_readonly("rows", &PairOperator::rows)
      .def_property_readonly("cols", &PairOperator::cols)
      .def("apply",
           [](const PairOperator &A, const Array &f) {
             if (static_cast<std::size_t>(f.size()) != A.cols())
               throw ConfigurationError("apply: image size mismatch");
             std::vector<double> g(A.rows());
             A.apply(from_array(f), g);
             return to_array(g);
           })
      .def("apply_adjoint", [](const PairOperator &A, const Array &g) {
        if (static_cast<std::size_t>(g.size()) != A.rows())
          throw ConfigurationError("apply_adjoint: data size mismatch");
        std::vector<double> f(A.cols());
        A.apply_adjoint(from_array(g), f);
        return to_array(f);
      });

  m.def(
      "cgne_solve",
      [](const PairOperator &A, const Array &g, int max_iter, double tol) {
        const auto st = cgne_solve(A, from_array(g), {.max_iter = max_iter, .tol = tol});
        py::dict out;
        out["iterate"] = to_array(st.iterate);
        out["residual_history"] = to_array(st.residual_history);
        out["iterations"] = st.iterations;
        out["reason"] = to_string(st.reason);
        return out;
      },
      py::arg("operator"), py::arg("g"), py::arg("max_iter") = 2000, py::arg("tol") = 1e-3);
  m.def("predicted_residual_floor", [](const DetectorGrid &g1, const Array &v1,
                                       const DetectorGrid &g2, const Array &v2,
                                       const KernelPair &k) {
    return predicted_residual_floor({data(g1, v1), data(g2, v2)}, k);
  });

  auto presets = m.def_submodule("presets", "built-in geometries");
  presets.attr("LAMBDA1") = tup(presets::kLambda1);
  presets.attr("LAMBDA2") = tup(presets::kLambda2);
  presets.attr("MU") = presets::kMu;
  presets.def("experiment_domain", &presets::experiment_domain);
  presets.def("experiment_pair", &presets::experiment_pair, py::arg("mu") = presets::kMu);
  presets.def("counterexample_pair", &presets::counterexample_pair, py::arg("mu") = presets::kMu);
  presets.def("view_grid", &presets::view_grid, py::arg("pair"), py::arg("view"),
              py::arg("n_bins"));
}
