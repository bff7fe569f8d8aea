#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dicke/hilbert.hpp"
#include "dicke/oracle/gaussian.hpp"
#include "dicke/oracle/qubit_space.hpp"
#include "dicke/thermolimit.hpp"

namespace dicke::cli {

SuiteResult rdm_oracle_suite(const TwoAtomRdmFn& two_atom) {
    SuiteResult r{"two-atom RDM vs qubit-space oracle", 0.0, 1e-9, 0, ""};
    for (int n_atoms : {2, 3, 4}) {
        for (double lambda : {0.1, 0.3, 0.5, 0.7}) {
            const ModelParams params{1.0, 1.0, lambda, n_atoms, 40};
            const auto solved = solve_at_cutoff(params, Parity::even, SolverOptions{});
            const auto expectations = collective_expectations(solved.state, solved.basis);
            const DensityMatrix rho = two_atom(expectations, n_atoms);
            const auto reference = oracle::solve_qubit_space(params);
            const Eigen::Matrix4d direct = oracle::two_atom_partial_trace(reference);

            const double rdm_dev = (rho.elements() - Eigen::MatrixXd(direct)).cwiseAbs().maxCoeff();
            const double c_dev = std::abs(wootters_concurrence(rho, n_atoms).concurrence -
                                          wootters_concurrence(DensityMatrix(direct), n_atoms).concurrence);
            const double e_dev = std::abs(solved.state.energy - reference.energy);
            r.max_deviation = std::max({r.max_deviation, rdm_dev, c_dev, e_dev});
            r.checks += 3;
        }
    }
    return r;
}

SuiteResult gaussian_entropy_suite() {
    SuiteResult r{"closed-form entropy vs Gaussian Schmidt spectrum", 0.0, 1e-8, 0, ""};
    const double grids[][3] = {
        {1.0, 1.0, 0.1}, {1.0, 1.0, 0.3}, {1.0, 1.0, 0.4}, {1.0, 1.0, 0.45},
        {1.0, 1.0, 0.6}, {1.0, 1.0, 0.8}, {1.0, 2.0, 0.5}, {2.0, 0.5, 0.8},
    };
    for (const auto& g : grids) {
        const auto pp = thermo::phase_params(g[0], g[1], g[2]);
        const double closed = thermo::entropy_infinite(pp);
        r.max_deviation = std::max(r.max_deviation, std::abs(closed - oracle::gaussian_field_entropy(pp)));
        const double zeta = thermo::thermal_oscillator(pp).zeta;
        r.max_deviation = std::max(r.max_deviation, std::abs(closed - oracle::geometric_spectrum_entropy(zeta)));
        r.checks += 2;
        for (double length : {1.0, 3.0}) {
            const double cut = thermo::entropy_finite_cutoff(pp, length);
            r.max_deviation = std::max(r.max_deviation, std::abs(cut - oracle::gaussian_field_entropy(pp, length)));
            ++r.checks;
        }
    }
    return r;
}

SuiteResult concurrence_identity_suite() {
    SuiteResult r{"C_inf general formula vs resonance closed form", 0.0, 1e-10, 0, ""};
    for (int i = 0; i <= 3000; ++i) {
        const double x = 1e-3 * i;
        const auto pp = thermo::phase_params(1.0, 1.0, 0.5 * x);
        r.max_deviation = std::max(r.max_deviation,
                                   std::abs(thermo::concurrence_infinite(pp) - thermo::concurrence_resonance(x)));
        ++r.checks;
    }
    return r;
}

SuiteResult squeezing_identity_suite() {
    SuiteResult r{"squeezing inversion and moment route vs covariance", 0.0, 1e-10, 0, ""};
    for (double ratio : {0.5, 1.0, 2.0}) {
        const double lambda_c = critical_coupling(1.0, ratio);
        for (int i = 0; i <= 300; ++i) {
            const auto pp = thermo::phase_params(1.0, ratio, 0.01 * i * lambda_c);
            const double dev_sq = std::abs(thermo::momentum_squeezing(pp) - thermo::momentum_squeezing_direct(pp));
            const double dev_c = std::abs(thermo::concurrence_infinite(pp) - thermo::concurrence_from_moments(pp));
            r.max_deviation = std::max({r.max_deviation, dev_sq, dev_c});
            r.checks += 2;
        }
    }
    return r;
}

std::vector<SuiteResult> run_validation(const TwoAtomRdmFn& two_atom) {
    return {rdm_oracle_suite(two_atom), gaussian_entropy_suite(), concurrence_identity_suite(),
            squeezing_identity_suite()};
}

void print_validation_table(const std::vector<SuiteResult>& results, std::ostream& out) {
    out << std::left << std::setw(52) << "suite" << std::setw(14) << "max_dev" << std::setw(12) << "threshold"
        << std::setw(8) << "checks" << "status\n";
    for (const auto& r : results) {
        std::ostringstream dev, thr;
        dev << std::scientific << std::setprecision(3) << r.max_deviation;
        thr << std::scientific << std::setprecision(1) << r.threshold;
        out << std::left << std::setw(52) << r.name << std::setw(14) << dev.str() << std::setw(12) << thr.str()
            << std::setw(8) << r.checks << (r.passed() ? "PASS" : "FAIL") << '\n';
    }
}

}  // namespace dicke::cli
