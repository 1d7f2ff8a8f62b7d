#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "carpetlab/crosswire.hpp"
#include "carpetlab/harnack.hpp"
#include "carpetlab/heatkernel.hpp"
#include "carpetlab/io.hpp"
#include "carpetlab/measure.hpp"
#include "carpetlab/resistance.hpp"
#include "carpetlab/scaling.hpp"
#include "carpetlab/walk.hpp"

namespace py = pybind11;
using namespace carpetlab;

namespace {

py::dict json_to_py(const nlohmann::json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

}  // namespace

PYBIND11_MODULE(_carpetlab, m) {
    m.doc() = "Numerical laboratory for a weighted diffusion on the Sierpinski carpet";

    m.def("parse_rho", &parse_rho, py::arg("s"));

    m.def(
        "cell_measure",
        [](const std::vector<int>& word, double rho) {
            return cell_measure(word, WeightConfig(rho));
        },
        py::arg("word"), py::arg("rho") = 1.0);

    m.def(
        "ball_measure",
        [](double x, double y, double r, double rho, double tol) {
            auto v = ball_measure(Point{x, y}, r, WeightConfig(rho), tol);
            return py::make_tuple(v.mass, v.error_bound);
        },
        py::arg("x"), py::arg("y"), py::arg("r"), py::arg("rho") = 1.0, py::arg("tol") = 1e-6);

    m.def(
        "grid_resistance",
        [](int n, double rho, int mesh, double tol) {
            return grid_resistance(n, WeightConfig(rho), mesh, tol).resistance;
        },
        py::arg("n"), py::arg("rho") = 1.0, py::arg("mesh") = 9, py::arg("tol") = 1e-10);

    m.def(
        "cross_graph_resistance",
        [](int n, double rho, double tol) {
            return cross_graph_resistance(n, WeightConfig(rho), tol).resistance;
        },
        py::arg("n"), py::arg("rho") = 1.0, py::arg("tol") = 1e-10);

    m.def(
        "diag_graph_resistance",
        [](int n, double rho, double tol) {
            return diag_graph_resistance(n, WeightConfig(rho), tol).resistance;
        },
        py::arg("n"), py::arg("rho") = 1.0, py::arg("tol") = 1e-10);

    m.def(
        "scaling_report",
        [](double rho, int nmax, int mesh_coarse, int mesh_fine, double tol) {
            return json_to_py(to_json(scaling_report(WeightConfig(rho), nmax, mesh_coarse,
                                                     mesh_fine, tol)));
        },
        py::arg("rho") = 1.0, py::arg("nmax") = 3, py::arg("mesh_coarse") = 9,
        py::arg("mesh_fine") = 27, py::arg("tol") = 1e-10);

    m.def("psi", &psi, py::arg("r"), py::arg("beta"));
    m.def("beta_exponent", &beta_exponent, py::arg("rho"), py::arg("lambda_"));

    m.def(
        "corner_move",
        [](char pattern, double rho, int m, const std::vector<double>& xs, int mesh) {
            auto sq = make_square_config(pattern, m, WeightConfig(rho));
            return json_to_py(to_json(corner_move_check(sq, xs, mesh)));
        },
        py::arg("pattern"), py::arg("rho"), py::arg("m"), py::arg("xs"), py::arg("mesh") = 9);

    m.def(
        "y_chain",
        [](char pattern, double rho, int m, long transitions, std::uint64_t seed, int mesh) {
            auto sq = make_square_config(pattern, m, WeightConfig(rho));
            return json_to_py(to_json(y_chain_simulate(sq, transitions, seed, mesh)));
        },
        py::arg("pattern"), py::arg("rho"), py::arg("m") = 0, py::arg("transitions") = 10000,
        py::arg("seed") = 1, py::arg("mesh") = 3);

    m.def(
        "mean_exit_time",
        [](double x, double y, const std::vector<double>& rs, double rho, int mesh,
           long samples, std::uint64_t seed) {
            return json_to_py(to_json(
                mean_exit_time(Point{x, y}, rs, WeightConfig(rho), mesh, samples, seed)));
        },
        py::arg("x"), py::arg("y"), py::arg("rs"), py::arg("rho") = 1.0, py::arg("mesh") = 3,
        py::arg("samples") = 0, py::arg("seed") = 1);

    m.def(
        "harnack_constant",
        [](std::int64_t ci, std::int64_t cj, int m, double rho, int mesh) {
            return json_to_py(to_json(harnack_constant(ci, cj, m, WeightConfig(rho), mesh)));
        },
        py::arg("ci"), py::arg("cj"), py::arg("m"), py::arg("rho") = 1.0, py::arg("mesh") = 3);

    m.def(
        "diagonal_profile",
        [](int level, double rho, double beta, double x, double y,
           const std::vector<double>& ts) {
            auto ch = make_kernel_chain(level, WeightConfig(rho), beta);
            return json_to_py(to_json(diagonal_profile(ch, Point{x, y}, ts)));
        },
        py::arg("level"), py::arg("rho"), py::arg("beta"), py::arg("x"), py::arg("y"),
        py::arg("ts"));

    m.def(
        "crosswire_resistance",
        [](int n, double rho, int mesh) {
            return make_crosswire_context(n, WeightConfig(rho), mesh).resistance;
        },
        py::arg("n"), py::arg("rho") = 1.0, py::arg("mesh") = 3);
}
