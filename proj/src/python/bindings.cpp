#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "radeuler/config.hpp"
#include "radeuler/driver.hpp"
#include "radeuler/eos.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/io.hpp"

namespace py = pybind11;
using namespace radeuler;

namespace {

// Stacks one field of every snapshot into a (slices, nodes) array.
py::array_t<double> stack(const std::vector<Snapshot>& traj, Field Snapshot::*field) {
    const std::size_t rows = traj.size();
    const std::size_t cols = rows == 0 ? 0 : (traj.front().*field).size();
    py::array_t<double> out({rows, cols});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t k = 0; k < rows; ++k) {
        const Field& f = traj[k].*field;
        for (std::size_t i = 0; i < cols; ++i) {
            view(k, i) = f[i];
        }
    }
    return out;
}

template <typename Get>
py::array_t<double> column(const std::vector<DiagnosticRecord>& recs, Get get) {
    py::array_t<double> out(recs.size());
    auto view = out.mutable_unchecked<1>();
    for (std::size_t k = 0; k < recs.size(); ++k) {
        view(k) = get(recs[k]);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lagrangian radiation-hydrodynamics solver on a spherical annulus";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<GasParams>(m, "GasParams")
        .def(py::init<>())
        .def(py::init([](double cv, double A) { return GasParams{cv, A}; }), py::arg("cv"),
             py::arg("A") = 1.0)
        .def_readwrite("cv", &GasParams::cv)
        .def_readwrite("A", &GasParams::A);

    m.def("rho_from_P_s", &rho_from_P_s, py::arg("P"), py::arg("s"), py::arg("gas") = GasParams{});
    m.def("theta_from_P_s", &theta_from_P_s, py::arg("P"), py::arg("s"),
          py::arg("gas") = GasParams{});
    m.def(
        "equilibrium_constants",
        [](const GasParams& gas) {
            const auto e = equilibrium_constants(gas);
            return py::make_tuple(e.rho, e.theta);
        },
        py::arg("gas") = GasParams{}, "Returns (c_rho, c_theta).");

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_static("from_text", &parse_config_text, py::arg("text"))
        .def_static("from_file", &parse_config_file, py::arg("path"))
        .def("set", &apply_override, py::arg("key"), py::arg("value"))
        .def("validate", &RunConfig::validate)
        .def("to_text", &write_config)
        .def_readwrite("n", &RunConfig::n)
        .def_readwrite("output_dir", &RunConfig::output_dir)
        .def_property_readonly("mode", [](const RunConfig& c) { return to_string(c.mode); })
        .def("__eq__", [](const RunConfig& a, const RunConfig& b) { return a == b; })
        .def_static("keys", &config_keys);

    py::class_<RunResult>(m, "RunResult")
        .def_property_readonly("status", [](const RunResult& r) { return to_string(r.status); })
        .def_readonly("failure", &RunResult::failure)
        .def_readonly("steps", &RunResult::steps)
        .def_readonly("wall_seconds", &RunResult::wall_seconds)
        .def_property_readonly("total_mass", [](const RunResult& r) { return r.grid.total_mass; })
        .def_property_readonly("x", [](const RunResult& r) { return r.grid.nodes(); })
        .def_property_readonly("times",
                               [](const RunResult& r) {
                                   std::vector<double> t;
                                   for (const auto& s : r.trajectory) t.push_back(s.t);
                                   return t;
                               })
        .def_property_readonly("P", [](const RunResult& r) { return stack(r.trajectory, &Snapshot::P); })
        .def_property_readonly("u", [](const RunResult& r) { return stack(r.trajectory, &Snapshot::u); })
        .def_property_readonly("s", [](const RunResult& r) { return stack(r.trajectory, &Snapshot::s); })
        .def_property_readonly("q", [](const RunResult& r) { return stack(r.trajectory, &Snapshot::q); })
        .def_property_readonly("r", [](const RunResult& r) { return stack(r.trajectory, &Snapshot::r); })
        .def_property_readonly("rho", [](const RunResult& r) { return stack(r.trajectory, &Snapshot::rho); })
        .def_property_readonly("theta",
                               [](const RunResult& r) { return stack(r.trajectory, &Snapshot::theta); })
        .def_property_readonly("diagnostics",
                               [](const RunResult& r) {
                                   const auto& d = r.diagnostics;
                                   py::dict out;
                                   out["t"] = column(d, [](const auto& x) { return x.t; });
                                   out["E0"] = column(d, [](const auto& x) { return x.E0; });
                                   out["D0"] = column(d, [](const auto& x) { return x.D0; });
                                   out["apriori_lhs"] = column(d, [](const auto& x) { return x.apriori_lhs; });
                                   out["C0"] = column(d, [](const auto& x) { return x.C0; });
                                   return out;
                               })
        .def_property_readonly("C0", [](const RunResult& r) { return r.apriori.C0; })
        .def_property_readonly("picard_deltas", [](const RunResult& r) { return r.picard.deltas; })
        .def_property_readonly("picard_ratios", [](const RunResult& r) { return r.picard.ratios; });

    m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>(),
          "Runs the configured mode and returns the trajectory and reports.");
    m.def("write_outputs", &write_outputs, py::arg("result"), py::arg("directory"),
          py::call_guard<py::gil_scoped_release>());
}
