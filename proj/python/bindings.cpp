#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dicke/eigensolve.hpp"
#include "dicke/errors.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/observables.hpp"
#include "dicke/scaling.hpp"
#include "dicke/thermolimit.hpp"

namespace py = pybind11;
using namespace dicke;

namespace {

CutoffPolicy make_policy(double tol, int ceiling, const std::string& sector) {
    CutoffPolicy policy;
    policy.tol = tol;
    policy.ceiling = ceiling;
    policy.sector = parity_from_string(sector);
    return policy;
}

py::dict ground_state(const ModelParams& params, const std::string& sector, bool converge, double tol, int ceiling) {
    const CutoffResult r = converge ? converge_cutoff(params, make_policy(tol, ceiling, sector))
                                    : solve_at_cutoff(params, parity_from_string(sector));
    py::list states;
    for (const auto& s : r.basis.entries()) states.append(py::make_tuple(s.n, s.m()));
    py::dict out;
    out["energy"] = r.state.energy;
    out["amplitudes"] = r.state.amplitudes;
    out["residual"] = r.state.residual;
    out["n_max"] = r.n_max;
    out["basis"] = states;
    out["field_entropy"] = r.field_entropy;
    out["photon_number"] = r.photon_number;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ground-state entanglement of the Dicke model";

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
    py::register_exception<BoundaryMaximumError>(m, "BoundaryMaximumError", PyExc_RuntimeError);
    (void)validation;
    (void)numerical;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double omega, double omega0, double lambda, int n_atoms, int boson_cutoff) {
                 ModelParams p{omega, omega0, lambda, n_atoms, boson_cutoff};
                 p.validate();
                 return p;
             }),
             py::arg("omega") = 1.0, py::arg("omega0") = 1.0, py::arg("lambda_") = 0.0, py::arg("n_atoms") = 1,
             py::arg("boson_cutoff") = 16)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("omega0", &ModelParams::omega0)
        .def_readwrite("lambda_", &ModelParams::lambda)
        .def_readwrite("n_atoms", &ModelParams::n_atoms)
        .def_readwrite("boson_cutoff", &ModelParams::boson_cutoff)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(omega=" + std::to_string(p.omega) + ", omega0=" + std::to_string(p.omega0) +
                   ", lambda_=" + std::to_string(p.lambda) + ", n_atoms=" + std::to_string(p.n_atoms) +
                   ", boson_cutoff=" + std::to_string(p.boson_cutoff) + ")";
        });

    m.def("critical_coupling", py::overload_cast<double, double>(&critical_coupling), py::arg("omega"),
          py::arg("omega0"));

    m.def("hamiltonian", [](const ModelParams& p, const std::string& sector) {
        return hamiltonian_matrix(p, build_basis(p, parity_from_string(sector))).to_dense();
    }, py::arg("params"), py::arg("sector") = "even", "Dense Hamiltonian in the given parity sector.");

    m.def("ground_state", &ground_state, py::arg("params"), py::arg("sector") = "even", py::arg("converge") = true,
          py::arg("tol") = 1e-8, py::arg("ceiling") = 1024,
          "Ground state, optionally at a certified boson cutoff starting from params.boson_cutoff.");

    py::class_<CollectiveExpectations>(m, "CollectiveExpectations")
        .def(py::init<>())
        .def_readwrite("jz", &CollectiveExpectations::jz)
        .def_readwrite("jz2", &CollectiveExpectations::jz2)
        .def_readwrite("jp2", &CollectiveExpectations::jp2)
        .def_readwrite("nbar", &CollectiveExpectations::nbar);

    py::class_<ObservableRecord>(m, "ObservableRecord")
        .def_readonly("params", &ObservableRecord::params)
        .def_readonly("energy", &ObservableRecord::energy)
        .def_readonly("entropy", &ObservableRecord::entropy)
        .def_readonly("concurrence", &ObservableRecord::concurrence)
        .def_readonly("scaled_concurrence", &ObservableRecord::scaled_concurrence)
        .def_readonly("expectations", &ObservableRecord::expectations);

    m.def("observables", [](const ModelParams& p, double tol, int ceiling, const std::string& sector) {
        return measure(p, converge_cutoff(p, make_policy(tol, ceiling, sector)));
    }, py::arg("params"), py::arg("tol") = 1e-8, py::arg("ceiling") = 1024, py::arg("sector") = "even");

    m.def("two_atom_rdm", [](const CollectiveExpectations& e, int n_atoms) {
        return Eigen::MatrixXd(two_atom_rdm(e, n_atoms).elements());
    }, py::arg("expectations"), py::arg("n_atoms"));

    m.def("concurrence", [](const Eigen::MatrixXd& rho) {
        return wootters_concurrence(DensityMatrix(rho), 2).concurrence;
    }, py::arg("rho"), "Wootters concurrence of a real two-qubit density matrix.");

    m.def("von_neumann_entropy", [](const Eigen::MatrixXd& rho) {
        return von_neumann_entropy(DensityMatrix(rho));
    }, py::arg("rho"));

    m.def("sweep", [](double omega, double omega0, std::vector<double> lambdas, std::vector<int> n_atoms,
                      int initial_cutoff, double tol, int ceiling, unsigned threads) {
        SweepConfig c;
        c.omega = omega;
        c.omega0 = omega0;
        c.lambdas = std::move(lambdas);
        c.n_atoms = std::move(n_atoms);
        c.initial_cutoff = initial_cutoff;
        c.policy = make_policy(tol, ceiling, "even");
        c.threads = threads;
        const auto result = [&] {
            py::gil_scoped_release release;
            return sweep(c);
        }();
        py::list rows;
        for (const auto& r : result.rows) {
            py::dict row;
            row["n_atoms"] = r.n_atoms;
            row["lambda_"] = r.lambda;
            row["ok"] = r.ok;
            row["error"] = r.error;
            row["record"] = r.ok ? py::cast(r.record) : py::none();
            rows.append(row);
        }
        return rows;
    }, py::arg("omega"), py::arg("omega0"), py::arg("lambdas"), py::arg("n_atoms"), py::arg("initial_cutoff") = 16,
       py::arg("tol") = 1e-8, py::arg("ceiling") = 1024, py::arg("threads") = 1);

    py::class_<Extremum>(m, "Extremum")
        .def_readonly("lambda_", &Extremum::lambda)
        .def_readonly("value", &Extremum::value);
    m.def("find_maximum", [](const std::vector<double>& x, const std::vector<double>& y) { return find_maximum(x, y); },
          py::arg("x"), py::arg("y"));

    py::class_<PowerLawFit>(m, "PowerLawFit")
        .def_readonly("exponent", &PowerLawFit::exponent)
        .def_readonly("prefactor", &PowerLawFit::prefactor)
        .def_readonly("exponent_stderr", &PowerLawFit::exponent_stderr)
        .def_readonly("samples", &PowerLawFit::samples);
    m.def("fit_power_law", [](const std::vector<double>& n, const std::vector<double>& v) { return fit_power_law(n, v); },
          py::arg("n"), py::arg("values"));

    py::class_<LogFit>(m, "LogFit")
        .def_readonly("slope", &LogFit::slope)
        .def_readonly("intercept", &LogFit::intercept)
        .def_readonly("slope_stderr", &LogFit::slope_stderr)
        .def_readonly("samples", &LogFit::samples);
    m.def("fit_log_scaling", [](const std::vector<double>& n, const std::vector<double>& v) { return fit_log_scaling(n, v); },
          py::arg("n"), py::arg("values"));

    auto thermo_m = m.def_submodule("thermo", "N -> infinity closed forms");
    py::enum_<thermo::Phase>(thermo_m, "Phase")
        .value("normal", thermo::Phase::normal)
        .value("superradiant", thermo::Phase::superradiant);
    py::class_<thermo::PhaseParams>(thermo_m, "PhaseParams")
        .def_readonly("omega", &thermo::PhaseParams::omega)
        .def_readonly("omega0", &thermo::PhaseParams::omega0)
        .def_readonly("lambda_", &thermo::PhaseParams::lambda)
        .def_readonly("phase", &thermo::PhaseParams::phase)
        .def_readonly("mu", &thermo::PhaseParams::mu)
        .def_readonly("eps_minus", &thermo::PhaseParams::eps_minus)
        .def_readonly("eps_plus", &thermo::PhaseParams::eps_plus)
        .def_readonly("gamma", &thermo::PhaseParams::gamma)
        .def_readonly("x", &thermo::PhaseParams::x);
    thermo_m.def("phase_params", &thermo::phase_params, py::arg("omega"), py::arg("omega0"), py::arg("lambda_"));
    thermo_m.def("potential_matrix", [](const thermo::PhaseParams& pp) { return Eigen::MatrixXd(thermo::potential_matrix(pp)); });
    thermo_m.def("characteristic_length", &thermo::characteristic_length);
    thermo_m.def("entropy_infinite", &thermo::entropy_infinite, py::arg("pp"), py::arg("cat") = false);
    thermo_m.def("entropy_finite_cutoff", &thermo::entropy_finite_cutoff, py::arg("pp"), py::arg("cutoff_length"));
    thermo_m.def("thermal_entropy", &thermo::thermal_entropy, py::arg("zeta"));
    thermo_m.def("concurrence_infinite", &thermo::concurrence_infinite, py::arg("pp"));
    thermo_m.def("concurrence_resonance", &thermo::concurrence_resonance, py::arg("x"));
    thermo_m.def("momentum_squeezing", &thermo::momentum_squeezing, py::arg("pp"));
    thermo_m.def("concurrence_smalllambda", &thermo::concurrence_smalllambda, py::arg("omega"), py::arg("omega0"),
                 py::arg("lambda_"));
    thermo_m.def("wavefunction", &thermo::wavefunction, py::arg("pp"), py::arg("x"), py::arg("y"));
}
