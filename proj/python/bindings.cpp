#include <optional>

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bochner/criteria.hpp"
#include "bochner/curvature.hpp"
#include "bochner/forms.hpp"
#include "bochner/holonomy.hpp"
#include "bochner/json_io.hpp"
#include "bochner/random.hpp"
#include "bochner/verify.hpp"
#include "bochner/weitzenbock.hpp"

namespace py = pybind11;
using namespace bochner;

namespace {

std::pair<long long, long long> frac(const Rational& r) { return {r.numerator(), r.denominator()}; }

EuclideanSpace make_space(std::optional<int> n, std::optional<int> m, std::optional<int> d) {
  const int given = (n ? 1 : 0) + (m ? 1 : 0) + (d ? 1 : 0);
  if (given != 1) throw DomainError("give exactly one of n (complex), m (quaternionic), d (real)");
  if (n) return EuclideanSpace::complex(*n);
  if (m) return EuclideanSpace::quaternionic(*m);
  return EuclideanSpace(*d);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "bochnerkit native core";

  py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<DimensionError>(mod, "DimensionError", PyExc_ValueError);
  py::register_exception<StructureError>(mod, "StructureError", PyExc_ValueError);
  py::register_exception<SymmetryError>(mod, "SymmetryError", PyExc_ValueError);
  py::register_exception<LeakageError>(mod, "LeakageError", PyExc_ValueError);

  py::class_<EuclideanSpace>(mod, "Space")
      .def(py::init([](std::optional<int> n, std::optional<int> m, std::optional<int> d) { return make_space(n, m, d); }),
           py::kw_only(), py::arg("n") = py::none(), py::arg("m") = py::none(), py::arg("d") = py::none())
      .def_property_readonly("dim", &EuclideanSpace::dim)
      .def_property_readonly("complex", &EuclideanSpace::has_complex_structure)
      .def_property_readonly("quaternionic", &EuclideanSpace::has_quaternionic_structure);

  py::class_<AlgebraicCurvatureTensor>(mod, "CurvatureTensor")
      .def_property_readonly("dim", &AlgebraicCurvatureTensor::dim)
      .def_property_readonly("kahler", &AlgebraicCurvatureTensor::kahler)
      .def_property_readonly("quaternion", &AlgebraicCurvatureTensor::quaternion)
      .def("norm_squared", &AlgebraicCurvatureTensor::norm_squared)
      .def("operator_matrix", [](const AlgebraicCurvatureTensor& r) { return to_operator(r).matrix(); })
      .def("ricci", [](const AlgebraicCurvatureTensor& r) { return ricci(r); })
      .def("scalar_curvature", [](const AlgebraicCurvatureTensor& r) { return scalar_curvature(r); })
      .def("to_json", [](const AlgebraicCurvatureTensor& r) { return curvature_to_json(r).dump(); })
      .def_static("from_json", [](const std::string& s) { return curvature_from_json(Json::parse(s)); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * double());

  mod.def("model", [](const std::string& kind, const EuclideanSpace& space, double c) {
    return model(parse_model_kind(kind), space, c);
  }, py::arg("kind"), py::arg("space"), py::arg("c") = 1.0);

  mod.def("random_curvature", [](const EuclideanSpace& s, std::uint64_t seed) { Rng r(seed); return random_curvature(s, r); });
  mod.def("random_kahler_curvature", [](const EuclideanSpace& s, std::uint64_t seed) {
    Rng r(seed);
    return random_kahler_curvature(s, r);
  });
  mod.def("random_hyperkahler_curvature", [](const EuclideanSpace& s, std::uint64_t seed) {
    Rng r(seed);
    return random_hyperkahler_curvature(s, r);
  });

  mod.def("algebra_basis", [](const EuclideanSpace& s, const std::string& kind) {
    return HolonomySubalgebra::build(s, parse_algebra_kind(kind)).coefficient_matrix();
  }, "Rows are orthonormal coefficient vectors in the e_i^e_j basis.");

  mod.def("spectrum", [](const AlgebraicCurvatureTensor& rm, const std::string& kind) {
    const auto s = restricted_spectrum(to_operator(rm), HolonomySubalgebra::build(rm.space(), parse_algebra_kind(kind)));
    return py::make_tuple(s.eigenvalues, s.leakage);
  }, py::arg("rm"), py::arg("algebra"), "Ascending eigenvalues and the complement leakage.");

  mod.def("kahler_sharp_identity", [](const AlgebraicCurvatureTensor& rm) {
    const auto k = kahler_sharp_identity(rm);
    return py::make_tuple(k.sharp_norm_sq, k.rhs, k.deviation);
  });
  mod.def("quaternion_sharp_identity", [](const AlgebraicCurvatureTensor& rm) {
    const auto q = quaternion_sharp_identity(rm);
    return py::make_tuple(q.sharp_norm_sq, q.rhs, q.observed_coefficient, q.coefficient);
  });

  mod.def("const_Cpqk", [](int n, int p, int q, int k) { return frac(const_Cpqk(n, p, q, k).value); });
  mod.def("const_Cpq", [](int n, int p, int q) { return frac(const_Cpq(n, p, q).value); });
  mod.def("kato_D", [](int n, int p, int q) { return frac(kato_D(n, p, q)); });
  mod.def("kappa_max", [](double Q, double c, double a) { return kappa_max(Q, c, a); });

  mod.def("check_pq", [](const Eigen::VectorXd& mu, int n, int p, int q, double kappa, double rho, double Q,
                         std::optional<int> k) {
    return verdict_to_json(check_pq(mu, n, p, q, kappa, rho, Q, PQCheckOptions{k})).dump();
  }, py::arg("spectrum"), py::arg("n"), py::arg("p"), py::arg("q"), py::arg("kappa") = 0.0, py::arg("rho") = 1.0,
     py::arg("Q") = 2.0, py::arg("k") = py::none());
  mod.def("check_bochner", [](const Eigen::VectorXd& mu, int n, double k, double rho, double Q) {
    return verdict_to_json(check_bochner(mu, n, k, rho, Q)).dump();
  }, py::arg("spectrum"), py::arg("n"), py::arg("k") = 0.0, py::arg("rho") = 1.0, py::arg("Q") = 2.0);
  mod.def("check_einstein_flat", [](const Eigen::VectorXd& mu, int n, double k, double rho, double Q) {
    return verdict_to_json(check_einstein_flat(mu, n, k, rho, Q)).dump();
  }, py::arg("spectrum"), py::arg("n"), py::arg("k") = 0.0, py::arg("rho") = 1.0, py::arg("Q") = 2.0);
  mod.def("check_quaternion", [](const Eigen::VectorXd& mu, int m, double k, double rho, double Q, bool flat) {
    return verdict_to_json(check_quaternion(mu, m, k, rho, Q, flat)).dump();
  }, py::arg("spectrum"), py::arg("m"), py::arg("k") = 0.0, py::arg("rho") = 1.0, py::arg("Q") = 2.0,
     py::arg("scalar_flat") = false);
  mod.def("check_lq_nonneg", [](const Eigen::VectorXd& mu, int n) {
    return verdict_to_json(check_lq_nonneg(mu, n)).dump();
  });

  mod.def("run_suite", [](const std::string& suite, std::uint64_t seed, std::optional<int> samples) {
    VerifySettings s;
    s.seed = seed;
    s.samples = samples;
    py::gil_scoped_release release;
    return report_to_json(run_suite(suite, s)).dump();
  }, py::arg("suite"), py::arg("seed") = 42, py::arg("samples") = py::none());
  mod.attr("suites") = verification_suites();
}
