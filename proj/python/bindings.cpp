// Python module exposing the core operations: triangle geometry, Lagrange
// interpolation on a triangle, Sobolev seminorms, and the lower-bound
// estimators for the interpolation constant.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triterp/bconst.hpp"
#include "triterp/experiments.hpp"
#include "triterp/geometry.hpp"
#include "triterp/interpolation.hpp"
#include "triterp/norms.hpp"
#include "triterp/polynomial.hpp"

namespace py = pybind11;
using namespace triterp;

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Lagrange interpolation on triangles with circumradius-scaled "
                "error constants";

    py::class_<geom::Point2>(mod, "Point2")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &geom::Point2::x)
        .def_readwrite("y", &geom::Point2::y)
        .def("__repr__", [](const geom::Point2& p) {
            return "Point2(" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                   ")";
        });

    py::class_<geom::Triangle>(mod, "Triangle")
        .def(py::init<double, double, double, double, double, double>(),
             py::arg("x1"), py::arg("y1"), py::arg("x2"), py::arg("y2"),
             py::arg("x3"), py::arg("y3"))
        .def("vertex", &geom::Triangle::v, py::arg("i"),
             py::return_value_policy::copy)
        .def("signed_area", &geom::Triangle::signed_area);

    py::class_<geom::TriangleMetrics>(mod, "TriangleMetrics")
        .def_readonly("h1", &geom::TriangleMetrics::h1)
        .def_readonly("h2", &geom::TriangleMetrics::h2)
        .def_readonly("hK", &geom::TriangleMetrics::hK)
        .def_readonly("S", &geom::TriangleMetrics::S)
        .def_readonly("R", &geom::TriangleMetrics::R)
        .def_readonly("rho", &geom::TriangleMetrics::rho)
        .def_readonly("theta_min", &geom::TriangleMetrics::theta_min)
        .def_readonly("theta_max", &geom::TriangleMetrics::theta_max)
        .def_readonly("chunkiness", &geom::TriangleMetrics::chunkiness)
        .def_readonly("semiregularity", &geom::TriangleMetrics::semiregularity);

    mod.def("metrics", &geom::metrics, py::arg("triangle"));

    py::class_<geom::StandardForm>(mod, "StandardForm")
        .def_readonly("alpha", &geom::StandardForm::alpha)
        .def_readonly("s", &geom::StandardForm::s)
        .def_readonly("t", &geom::StandardForm::t)
        .def("standardized", &geom::StandardForm::standardized);

    mod.def("standard_form", &geom::standard_form, py::arg("triangle"));

    py::class_<poly::Poly2>(mod, "Poly2")
        .def(py::init<>())
        .def_static("constant", &poly::Poly2::constant, py::arg("value"))
        .def_static("monomial", &poly::Poly2::monomial, py::arg("i"),
                    py::arg("j"), py::arg("coeff") = 1.0)
        .def("degree", &poly::Poly2::degree)
        .def("coeff", &poly::Poly2::coeff, py::arg("i"), py::arg("j"))
        .def("set_coeff", &poly::Poly2::set_coeff, py::arg("i"), py::arg("j"),
             py::arg("value"))
        .def(
            "eval",
            [](const poly::Poly2& p, double x, double y) {
                return p.eval({x, y});
            },
            py::arg("x"), py::arg("y"))
        .def("derivative", &poly::Poly2::derivative, py::arg("dx"),
             py::arg("dy"))
        .def("__add__", [](const poly::Poly2& a,
                           const poly::Poly2& b) { return a + b; })
        .def("__sub__", [](const poly::Poly2& a,
                           const poly::Poly2& b) { return a - b; })
        .def("__mul__", [](const poly::Poly2& a,
                           const poly::Poly2& b) { return a * b; })
        .def("__mul__",
             [](const poly::Poly2& a, double s) { return a * s; })
        .def("__rmul__",
             [](const poly::Poly2& a, double s) { return a * s; })
        .def("__repr__", &poly::Poly2::to_string);

    mod.def("node_count", &interp::node_count, py::arg("k"));
    mod.def(
        "nodes",
        [](int k, const geom::Triangle& t) {
            std::vector<std::pair<double, double>> out;
            for (const auto& n : interp::nodes(k, t).nodes)
                out.emplace_back(n.p.x, n.p.y);
            return out;
        },
        py::arg("k"), py::arg("triangle"),
        "Interpolation nodes of order k as (x, y) pairs.");
    mod.def(
        "interpolate",
        [](const std::vector<double>& values, int k, const geom::Triangle& t) {
            return interp::interpolate(values, k, t);
        },
        py::arg("values"), py::arg("k"), py::arg("triangle"),
        "Polynomial of degree k matching the given nodal values.");
    mod.def("error_poly", &interp::error_poly, py::arg("p"), py::arg("k"),
            py::arg("triangle"), "p minus its degree-k interpolant.");

    mod.def(
        "seminorm",
        [](const poly::Poly2& q, int m, double p, const geom::Triangle& t) {
            return norms::sobolev_seminorm(norms::field_from_poly(q), m, p, t,
                                           std::max(0, q.degree() - m));
        },
        py::arg("poly"), py::arg("m"), py::arg("p"), py::arg("triangle"),
        "Order-m Sobolev seminorm of a polynomial with exponent p.");

    py::class_<bconst::BEstimate>(mod, "BEstimate")
        .def_readonly("value", &bconst::BEstimate::value)
        .def_readonly("maximizer", &bconst::BEstimate::maximizer)
        .def_readonly("method", &bconst::BEstimate::method);

    mod.def("b_poly_lower", &bconst::b_poly_lower, py::arg("m"), py::arg("k"),
            py::arg("triangle"),
            "p = 2 lower bound for the interpolation constant via the "
            "generalized eigenproblem.");
    mod.def("b_sample_lower", &bconst::b_sample_lower, py::arg("m"),
            py::arg("k"), py::arg("p"), py::arg("triangle"),
            py::arg("samples") = 400, py::arg("seed") = 1,
            "General-p sampled lower bound with golden-section refinement.");
    mod.def("bound_ratio", &bconst::bound_ratio, py::arg("estimate"),
            py::arg("metrics"), py::arg("m"), py::arg("k"),
            "Estimate divided by R^m h^(k+1-2m).");
}
