// Python bindings for the fmoent core. Matrices cross the boundary as
// complex128 numpy arrays.

#include <bit>
#include <filesystem>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fmoent/entanglement.hpp"
#include "fmoent/fidelity.hpp"
#include "fmoent/fmo_model.hpp"
#include "fmoent/reservoir.hpp"
#include "fmoent/scan.hpp"
#include "fmoent/version.hpp"

namespace py = pybind11;
using namespace fmoent;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

ComplexArray to_numpy(const CMatrix& m) {
    ComplexArray out({m.rows(), m.cols()});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

CMatrix from_numpy(const ComplexArray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    return CMatrix(rows, cols, std::vector<cplx>(a.data(), a.data() + rows * cols));
}

StateVector state_from_numpy(const ComplexArray& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D state vector");
    const auto dim = static_cast<std::size_t>(a.shape(0));
    if (dim < 2 || (dim & (dim - 1)) != 0)
        throw std::invalid_argument("state length must be a power of two >= 2");
    return StateVector(static_cast<std::size_t>(std::countr_zero(dim)),
                       std::vector<cplx>(a.data(), a.data() + dim));
}

ComplexArray state_to_numpy(const StateVector& s) {
    ComplexArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(s.amplitudes.size())});
    std::copy(s.amplitudes.begin(), s.amplitudes.end(), out.mutable_data());
    return out;
}

ReservoirParams reservoir(double gamma0, double half_width, double delta) {
    auto p = ReservoirParams::from_half_width(gamma0, half_width, delta);
    p.validate();
    return p;
}

SiteDataset dataset_named(const std::string& name) {
    for (auto& d : builtin_datasets())
        if (d.name == name) return d;
    return load_site_dataset(std::filesystem::path(name));
}

std::vector<double> to_vector(const RealArray& a) {
    if (a.ndim() > 1) throw std::invalid_argument("expected a scalar or 1-D array of times");
    return std::vector<double>(a.data(), a.data() + a.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Entanglement and fidelity dynamics of FMO excitonic qubits";
    m.attr("__version__") = kVersion;
    m.attr("UNIT_CONVERSION") = UnitSystem::kDefaultAngularConversion;

    m.def(
        "amplitude",
        [](RealArray t, double gamma0, double half_width, double delta, double unit_conversion) {
            const auto p = reservoir(gamma0, half_width, delta);
            const UnitSystem units{unit_conversion};
            ComplexArray out(std::vector<py::ssize_t>(t.shape(), t.shape() + t.ndim()));
            for (py::ssize_t k = 0; k < t.size(); ++k)
                out.mutable_data()[k] = amplitude(p, t.data()[k], units);
            return out;
        },
        py::arg("t"), py::arg("gamma0"), py::arg("half_width"), py::arg("delta") = 0.0,
        py::arg("unit_conversion") = UnitSystem::kDefaultAngularConversion,
        "Survival amplitude u(t); t in ps, rates in cm^-1.");

    m.def(
        "amplitude_ode_oracle",
        [](RealArray t, double gamma0, double half_width, double delta, double max_step,
           const std::string& kernel) {
            OracleOptions options;
            options.max_step_ps = max_step;
            if (kernel == "gamma_b")
                options.kernel = OracleKernel::gamma_b;
            else if (kernel != "consistent")
                throw std::invalid_argument("kernel must be 'consistent' or 'gamma_b'");
            const auto grid = to_vector(t);
            const auto u = amplitude_ode_oracle(reservoir(gamma0, half_width, delta), grid, options);
            ComplexArray out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(u.size())});
            std::copy(u.begin(), u.end(), out.mutable_data());
            return out;
        },
        py::arg("t"), py::arg("gamma0"), py::arg("half_width"), py::arg("delta") = 0.0,
        py::arg("max_step") = 1e-4, py::arg("kernel") = "consistent",
        "RK4 integration of the memory-kernel equation on an ascending grid from 0.");

    m.def(
        "damping",
        [](double t, double gamma0, double half_width, double delta) {
            return damping(reservoir(gamma0, half_width, delta), t);
        },
        py::arg("t"), py::arg("gamma0"), py::arg("half_width"), py::arg("delta") = 0.0);
    m.def(
        "population_difference",
        [](double t, double gamma0, double half_width, double delta) {
            return population_difference(reservoir(gamma0, half_width, delta), t);
        },
        py::arg("t"), py::arg("gamma0"), py::arg("half_width"), py::arg("delta") = 0.0);

    m.def("f_ghz_teleport", &f_ghz_teleport, py::arg("p"), py::arg("n"));
    m.def("f_w_teleport", &f_w_teleport, py::arg("p"));
    m.def("f_ghz_split", &f_ghz_split, py::arg("p"), py::arg("n"));
    m.def("f_w_split", &f_w_split, py::arg("p"));
    m.def(
        "fidelity",
        [](const std::string& protocol, double p, unsigned n) {
            return fidelity(parse_protocol(protocol), p, n);
        },
        py::arg("protocol"), py::arg("p"), py::arg("n") = 4,
        "protocol: ghz_teleport, w_teleport, ghz_split or w_split.");

    m.def(
        "hamiltonian",
        [](const std::string& dataset, double coupling_scale) {
            return to_numpy(build_hamiltonian(dataset_named(dataset), coupling_scale));
        },
        py::arg("dataset") = "reng", py::arg("coupling_scale") = 1.0);
    m.def(
        "exciton_table",
        [](const std::string& dataset) {
            const auto t = exciton_table(build_hamiltonian(dataset_named(dataset)));
            RealArray energies(std::vector<py::ssize_t>{kSites});
            RealArray amps({kSites, kSites});
            for (std::size_t k = 0; k < kSites; ++k) {
                energies.mutable_data()[k] = t.energies[k];
                for (std::size_t s = 0; s < kSites; ++s) amps.mutable_at(s, k) = t.amplitudes[s][k];
            }
            return py::make_tuple(energies, amps);
        },
        py::arg("dataset") = "reng",
        "(energies, amplitudes[site, exciton]) with energies ascending in cm^-1.");

    m.def(
        "normalized_negativity",
        [](ComplexArray rho, std::size_t n, QubitSubset subset) {
            return normalized_negativity(from_numpy(rho), n, subset);
        },
        py::arg("rho"), py::arg("n_qubits"), py::arg("subset"));
    m.def(
        "global_entanglement",
        [](ComplexArray rho, std::size_t n) { return global_entanglement(from_numpy(rho), n); },
        py::arg("rho"), py::arg("n_qubits"));
    m.def(
        "w_state", [](std::size_t n) { return state_to_numpy(w_state(n)); }, py::arg("n_qubits"));
    m.def(
        "w_state_exciton_rho",
        [](cplx u, std::size_t n) { return to_numpy(w_state_exciton_rho({n, u})); }, py::arg("u"),
        py::arg("n_qubits") = 4);
    m.def(
        "w_state_reservoir_rho",
        [](cplx u, std::size_t n) { return to_numpy(w_state_reservoir_rho({n, u})); }, py::arg("u"),
        py::arg("n_qubits") = 4);
    m.def(
        "x_state_rho",
        [](double a, double b, cplx u1, cplx u2) { return to_numpy(x_state_rho({a, b, u1, u2})); },
        py::arg("a"), py::arg("b"), py::arg("u1"), py::arg("u2"));
    m.def(
        "x_state_global",
        [](double a, double b, cplx u1, cplx u2) {
            return state_to_numpy(x_state_global({a, b, u1, u2}));
        },
        py::arg("a"), py::arg("b"), py::arg("u1"), py::arg("u2"));
    m.def(
        "meyer_wallach_numeric",
        [](ComplexArray psi) { return meyer_wallach_numeric(state_from_numpy(psi)); },
        py::arg("psi"));
    m.def("meyer_wallach_closed", &meyer_wallach_closed, py::arg("a"), py::arg("b"), py::arg("u"));
    m.def("meyer_wallach_direct", &meyer_wallach_direct, py::arg("a"), py::arg("b"), py::arg("u"));

    m.def(
        "run_scan",
        [](const std::map<std::string, std::string>& settings, unsigned workers) {
            ScanResult r;
            {
                py::gil_scoped_release release;
                r = run_scan(make_scan_spec(settings), workers);
            }
            const std::size_t cols = r.header.size();
            RealArray rows({r.rows.size(), cols});
            for (std::size_t i = 0; i < r.rows.size(); ++i)
                for (std::size_t j = 0; j < cols; ++j) rows.mutable_at(i, j) = r.rows[i][j];
            return py::make_tuple(r.header, rows);
        },
        py::arg("settings"), py::arg("workers") = 1,
        "Scan from config-style settings (all values as strings). Returns (header, rows).");
}
