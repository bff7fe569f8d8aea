#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dicke::thermo {

enum class Phase { normal, superradiant };

std::string_view to_string(Phase p) noexcept;

/// Two-oscillator description of the N -> infinity ground state.
///
/// In the superradiant phase the atomic oscillator coordinate is the one of
/// the displaced mode with frequency omega0 (1 + mu) / (2 mu), so that both
/// phases share the unit-mass potential matrix returned by potential_matrix().
struct PhaseParams {
    double omega{1.0};
    double omega0{1.0};
    double lambda{0.0};
    Phase phase{Phase::normal};
    double mu{1.0};          // 1 in the normal phase, (lambda_c / lambda)^2 above
    double eps_minus{1.0};
    double eps_plus{1.0};
    double gamma{0.0};       // squeezing angle
    double x{0.0};           // lambda / lambda_c
};

PhaseParams phase_params(double omega, double omega0, double lambda);

/// Potential matrix V of H = (p^T p + q^T V q) / 2 over (field, atom)
/// coordinates. Its eigenvalues are eps_minus^2 and eps_plus^2.
Eigen::Matrix2d potential_matrix(const PhaseParams& pp);

/// xi = eps_minus^(-1/2). Throws DivergenceError at the critical point.
double characteristic_length(const PhaseParams& pp);

/// Fictitious thermal oscillator equivalent to the field reduced density matrix.
struct ThermalOscillator {
    double zeta;             // beta Omega / 2; +inf for a product state
};

inline constexpr double kNoCutoff = std::numeric_limits<double>::infinity();

/// cosh(beta Omega_L) - 1 for tracing length L (kNoCutoff for a full trace).
double cosh_beta_omega_minus_one(const PhaseParams& pp, double cutoff_length = kNoCutoff);

ThermalOscillator thermal_oscillator(const PhaseParams& pp, double cutoff_length = kNoCutoff);

/// S(zeta) = [zeta coth zeta - ln(2 sinh zeta)] / ln 2, in bits.
double thermal_entropy(double zeta);

/// Field-mode entropy for a full trace over the atoms. With cat = true the
/// superradiant value gains one bit (even superposition of the two
/// displaced ground states); in the normal phase the flag has no effect.
/// Throws DivergenceError at lambda = lambda_c.
double entropy_infinite(const PhaseParams& pp, bool cat = false);

/// Entropy when the atomic coordinate is traced with a Gaussian window of
/// size L. Finite at the critical point.
double entropy_finite_cutoff(const PhaseParams& pp, double cutoff_length);

/// Scaled concurrence 1 - mu (eps_minus s^2 + eps_plus c^2) / omega0.
double concurrence_infinite(const PhaseParams& pp);

/// Resonant (omega = omega0) closed form as a function of x = lambda / lambda_c.
double concurrence_resonance(double x);

/// Scaled concurrence from the Gaussian second moments of the atomic mode,
/// (1 + mu)[<d^dag^2> - <d^dag d>] + (1 - mu)/2.
double concurrence_from_moments(const PhaseParams& pp);

/// (Delta p_y)^2 obtained by inverting
/// C = (1 + mu)[1/2 - (Delta p_y)^2 / omega0] + (1 - mu)/2.
double momentum_squeezing(const PhaseParams& pp);

/// (Delta p_y)^2 read off the ground-state covariance directly.
double momentum_squeezing_direct(const PhaseParams& pp);

/// Small-coupling limit 2 a^2 / (1 + a^2), a = lambda / (omega + omega0).
double concurrence_smalllambda(double omega, double omega0, double lambda);

/// Ground-state wavefunction Psi(x, y) of the bilinear Hamiltonian.
double wavefunction(const PhaseParams& pp, double x, double y);

struct AnalyticRow {
    PhaseParams pp;
    std::optional<double> entropy;         // empty at lambda_c (divergent)
    std::optional<double> entropy_cutoff;  // set when a tracing length is given
    double concurrence{0.0};
    double squeezing{0.0};
};

AnalyticRow analytic_row(double omega, double omega0, double lambda, bool cat,
                         std::optional<double> cutoff_length = std::nullopt);

}  // namespace dicke::thermo
