#pragma once

#include "dicke/thermolimit.hpp"

namespace dicke::oracle {

/// Field-mode entropy (bits) of the two-oscillator Gaussian ground state,
/// computed by sampling Psi(x, y) ~ exp(-q^T sqrt(V) q / 2) on a grid and
/// taking its Schmidt spectrum. With a finite tracing length the atomic
/// coordinate is weighted by exp(-4 y^2 / L^2) before tracing.
double gaussian_field_entropy(const thermo::PhaseParams& pp, double cutoff_length = thermo::kNoCutoff,
                              int grid_points = 400);

/// Entropy of the geometric spectrum p_k = (1 - q) q^k, q = exp(-2 zeta), summed term by term.
double geometric_spectrum_entropy(double zeta);

}  // namespace dicke::oracle
