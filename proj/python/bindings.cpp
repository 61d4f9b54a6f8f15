#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "burgerlab/analysis.hpp"
#include "burgerlab/cell.hpp"
#include "burgerlab/config.hpp"
#include "burgerlab/experiment.hpp"
#include "burgerlab/forcing.hpp"
#include "burgerlab/grid.hpp"
#include "burgerlab/resonance.hpp"
#include "burgerlab/solver.hpp"
#include "burgerlab/spectrum.hpp"

namespace py = pybind11;
using namespace burgerlab;

namespace {

TorusField field_from(std::vector<double> values) {
    const std::size_t n = values.size();
    return make_field(make_grid(n), std::move(values));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "forced Burgers laboratory: entropy solver, cell problems, resonance";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<TorusGrid>(m, "TorusGrid")
        .def_property_readonly("n", [](const TorusGrid& g) { return g.n; })
        .def("dx", &TorusGrid::dx)
        .def("center", &TorusGrid::center);

    py::class_<TorusField>(m, "TorusField")
        .def_property_readonly("grid", [](const TorusField& f) { return f.grid; })
        .def_property_readonly("values", [](const TorusField& f) { return f.values; });

    py::class_<CellSolution>(m, "CellSolution")
        .def_readonly("p", &CellSolution::p)
        .def_readonly("lam", &CellSolution::lambda)
        .def_property_readonly("branch",
                               [](const CellSolution& s) {
                                   return s.branch == Branch::Subcritical ? "subcritical"
                                                                          : "supercritical";
                               })
        .def_readonly("x0", &CellSolution::x0)
        .def_readonly("xbar", &CellSolution::xbar)
        .def_readonly("kinks", &CellSolution::kinks)
        .def_readonly("phi", &CellSolution::phi)
        .def_readonly("ubar", &CellSolution::ubar);

    py::class_<FrameDiagnostics>(m, "FrameDiagnostics")
        .def_readonly("mean", &FrameDiagnostics::mean)
        .def_readonly("l2_energy", &FrameDiagnostics::l2_energy)
        .def_readonly("power_input", &FrameDiagnostics::power_input)
        .def_readonly("shock_indicator", &FrameDiagnostics::shock_indicator)
        .def_readonly("work_integral", &FrameDiagnostics::work_integral);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("diagnostics", &Trajectory::diagnostics)
        .def_readonly("steps", &Trajectory::steps);

    m.def("make_field", &field_from, py::arg("values"),
          "Torus field from cell values (count a power of two >= 8)");

    m.def(
        "critical_momentum",
        [](int kappa0) { return critical_momentum(make_cosine_forcing(kappa0)); },
        py::arg("kappa0") = 1);

    m.def(
        "effective_hamiltonian",
        [](double p, int kappa0) { return effective_hamiltonian(p, make_cosine_forcing(kappa0)); },
        py::arg("p"), py::arg("kappa0") = 1);

    m.def(
        "solve_cell_problem",
        [](double p, int kappa0, std::size_t n) {
            return solve_cell_problem(p, make_cosine_forcing(kappa0), make_grid(n));
        },
        py::arg("p"), py::arg("kappa0") = 1, py::arg("n") = 1024);

    m.def(
        "evolve",
        [](std::vector<double> u0, int kappa0, double omega, double t_end, double cfl,
           double record_every) {
            SolverConfig cfg;
            cfg.cfl = cfl;
            cfg.t_end = t_end;
            cfg.record_every = record_every;
            return evolve(field_from(std::move(u0)), make_cosine_forcing(kappa0, omega), cfg);
        },
        py::arg("u0"), py::arg("kappa0") = 1, py::arg("omega") = 0.0, py::arg("t_end") = 1.0,
        py::arg("cfl") = 0.5, py::arg("record_every") = 0.1);

    m.def(
        "dft_magnitudes",
        [](std::vector<double> values) { return dft_magnitudes(field_from(std::move(values))).magnitude; },
        py::arg("values"), "One-sided spectrum |u_hat(k)| for k = 1 .. n/2");

    m.def(
        "decay_exponent",
        [](std::vector<double> values, std::size_t kmin, std::size_t kmax) {
            return decay_exponent(dft_magnitudes(field_from(std::move(values))), kmin, kmax);
        },
        py::arg("values"), py::arg("kmin") = 4, py::arg("kmax") = 64);

    m.def(
        "resonance_window",
        [](double p, int kappa0) { return resonance_window(make_cosine_forcing(kappa0), p); },
        py::arg("p"), py::arg("kappa0") = 1);

    m.def(
        "run_config",
        [](const std::string& text, const std::string& out_dir) {
            ExperimentConfig config = parse_config(text);
            if (!out_dir.empty()) config.out_dir = out_dir;
            const RunRecord record = run_experiment(config);
            py::dict d;
            d["experiment"] = record.experiment;
            d["out_dir"] = record.out_dir;
            d["files"] = record.files;
            py::dict metrics;
            for (const auto& [name, value] : record.metrics) metrics[name.c_str()] = value;
            d["metrics"] = metrics;
            return d;
        },
        py::arg("text"), py::arg("out_dir") = std::string(),
        "Parse config text, run the experiment, return the run record");
}
