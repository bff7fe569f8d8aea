#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dicke/observables.hpp"

namespace dicke::cli {

struct SuiteResult {
    std::string name;
    double max_deviation{0.0};
    double threshold{0.0};
    std::size_t checks{0};
    std::string detail;
    bool passed() const noexcept { return max_deviation <= threshold; }
};

using TwoAtomRdmFn = std::function<DensityMatrix(const CollectiveExpectations&, int)>;

/// Symmetric-prescription two-atom state and concurrence against the
/// partial trace of the full qubit-space ground state, N in {2, 3, 4}.
SuiteResult rdm_oracle_suite(const TwoAtomRdmFn& two_atom = two_atom_rdm);
/// Closed-form field entropy against the sampled Gaussian Schmidt spectrum
/// and against the summed geometric spectrum.
SuiteResult gaussian_entropy_suite();
/// General C_inf formula against the resonance closed form.
SuiteResult concurrence_identity_suite();
/// Squeezing inversion and moment route against the direct covariance.
SuiteResult squeezing_identity_suite();

std::vector<SuiteResult> run_validation(const TwoAtomRdmFn& two_atom = two_atom_rdm);

void print_validation_table(const std::vector<SuiteResult>& results, std::ostream& out);

}  // namespace dicke::cli
