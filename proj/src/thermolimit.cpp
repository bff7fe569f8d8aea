#include "dicke/thermolimit.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "dicke/errors.hpp"
#include "dicke/params.hpp"

namespace dicke::thermo {

std::string_view to_string(Phase p) noexcept { return p == Phase::normal ? "normal" : "superradiant"; }

namespace {

struct Potential {
    double v11, v12, v22, det;
};

// det is evaluated in factored form so eps_minus keeps full relative precision near lambda_c.
Potential potential(double omega, double omega0, double lambda, double lambda_c) {
    Potential p{};
    p.v11 = omega * omega;
    if (lambda <= lambda_c) {
        p.v12 = 2.0 * lambda * std::sqrt(omega * omega0);
        p.v22 = omega0 * omega0;
        p.det = 4.0 * omega * omega0 * (lambda_c - lambda) * (lambda_c + lambda);
    } else {
        const double x = lambda / lambda_c;
        const double inv_mu = x * x;
        p.v12 = omega * omega0;
        p.v22 = omega0 * omega0 * inv_mu * inv_mu;
        p.det = omega * omega * omega0 * omega0 * ((lambda - lambda_c) / lambda_c) * (x + 1.0) * (x * x + 1.0);
    }
    return p;
}

void require_positive_frequencies(double omega, double omega0, double lambda) {
    if (!(omega > 0.0) || !(omega0 > 0.0)) throw ValidationError("frequencies must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("coupling must be non-negative and finite");
}

// Frequency of the displaced atomic mode relative to omega0.
double atomic_frequency(const PhaseParams& pp) { return pp.omega0 * (1.0 + pp.mu) / (2.0 * pp.mu); }

}  // namespace

PhaseParams phase_params(double omega, double omega0, double lambda) {
    require_positive_frequencies(omega, omega0, lambda);
    const double lambda_c = critical_coupling(omega, omega0);

    PhaseParams pp;
    pp.omega = omega;
    pp.omega0 = omega0;
    pp.lambda = lambda;
    pp.x = lambda / lambda_c;
    pp.phase = lambda <= lambda_c ? Phase::normal : Phase::superradiant;
    pp.mu = pp.phase == Phase::normal ? 1.0 : 1.0 / (pp.x * pp.x);

    const Potential v = potential(omega, omega0, lambda, lambda_c);
    const double split = std::hypot(v.v22 - v.v11, 2.0 * v.v12);
    const double eps_plus_sq = 0.5 * (v.v11 + v.v22 + split);
    pp.eps_plus = std::sqrt(eps_plus_sq);
    pp.eps_minus = std::sqrt(std::max(0.0, v.det) / eps_plus_sq);

    // Branch chosen so that (c, -s) is the soft-mode axis for any omega, omega0.
    if (v.v12 == 0.0 && v.v11 == v.v22) {
        pp.gamma = 0.25 * std::numbers::pi;
    } else {
        pp.gamma = 0.5 * std::atan2(2.0 * v.v12, v.v22 - v.v11);
    }
    return pp;
}

Eigen::Matrix2d potential_matrix(const PhaseParams& pp) {
    const Potential v = potential(pp.omega, pp.omega0, pp.lambda, critical_coupling(pp.omega, pp.omega0));
    Eigen::Matrix2d m;
    m << v.v11, v.v12, v.v12, v.v22;
    return m;
}

double characteristic_length(const PhaseParams& pp) {
    if (!(pp.eps_minus > 0.0)) throw DivergenceError("characteristic length diverges at the critical coupling");
    return 1.0 / std::sqrt(pp.eps_minus);
}

double cosh_beta_omega_minus_one(const PhaseParams& pp, double cutoff_length) {
    if (!(cutoff_length > 0.0)) throw ValidationError("tracing length must be positive");
    const double c = std::cos(pp.gamma);
    const double s = std::sin(pp.gamma);
    const double gap = pp.eps_minus - pp.eps_plus;
    const double denom = gap * gap * c * c * s * s;
    double numer = pp.eps_minus * pp.eps_plus;
    if (std::isfinite(cutoff_length)) {
        numer += 4.0 * (pp.eps_minus * c * c + pp.eps_plus * s * s) / (cutoff_length * cutoff_length);
    }
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * numer / denom;
}

ThermalOscillator thermal_oscillator(const PhaseParams& pp, double cutoff_length) {
    const double t = cosh_beta_omega_minus_one(pp, cutoff_length);
    if (std::isinf(t)) return {std::numeric_limits<double>::infinity()};
    // acosh(1 + t) without cancellation for small t.
    return {0.5 * std::log1p(t + std::sqrt(t * (t + 2.0)))};
}

double thermal_entropy(double zeta) {
    if (std::isinf(zeta)) return 0.0;
    if (!(zeta > 0.0)) throw DivergenceError("thermal entropy diverges at zeta = 0");
    const double two_zeta = 2.0 * zeta;
    return (two_zeta / std::expm1(two_zeta) - std::log(-std::expm1(-two_zeta))) / std::numbers::ln2;
}

double entropy_infinite(const PhaseParams& pp, bool cat) {
    if (pp.eps_minus == 0.0) {
        throw DivergenceError("entropy diverges at lambda = lambda_c; use entropy_finite_cutoff with a tracing length");
    }
    const double s = thermal_entropy(thermal_oscillator(pp).zeta);
    return (cat && pp.phase == Phase::superradiant) ? s + 1.0 : s;
}

double entropy_finite_cutoff(const PhaseParams& pp, double cutoff_length) {
    return thermal_entropy(thermal_oscillator(pp, cutoff_length).zeta);
}

double concurrence_infinite(const PhaseParams& pp) {
    const double c = std::cos(pp.gamma);
    const double s = std::sin(pp.gamma);
    double value = 1.0 - pp.mu * (pp.eps_minus * s * s + pp.eps_plus * c * c) / pp.omega0;
    if (value < 0.0 && value > -1e-12) value = 0.0;
    return value;
}

double concurrence_resonance(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("reduced coupling must be non-negative and finite");
    if (x <= 1.0) return 1.0 - 0.5 * (std::sqrt(1.0 + x) + std::sqrt(1.0 - x));
    const double x2 = x * x;
    const double x4 = x2 * x2;
    const double gamma = 0.5 * std::atan2(2.0, x4 - 1.0);
    const double s = std::sin(gamma);
    const double c = std::cos(gamma);
    const double root = std::sqrt((1.0 - x4) * (1.0 - x4) + 4.0);
    const double upper = 1.0 + x4 + root;
    const double lower = 4.0 * (x4 - 1.0) / upper;  // 1 + x^4 - root
    return 1.0 - (s * s * std::sqrt(lower) + c * c * std::sqrt(upper)) / (std::numbers::sqrt2 * x2);
}

namespace {

struct AtomicMoments {
    double p2;  // <P^2>, unit-mass momentum of the atomic mode
    double y2;  // <Y^2>; +inf at the critical point
};

AtomicMoments atomic_moments(const PhaseParams& pp) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(potential_matrix(pp));
    const Eigen::Vector2d freq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix2d& u = es.eigenvectors();
    AtomicMoments m{};
    m.p2 = 0.5 * (u(1, 0) * u(1, 0) * freq(0) + u(1, 1) * u(1, 1) * freq(1));
    m.y2 = freq(0) > 0.0 ? 0.5 * (u(1, 0) * u(1, 0) / freq(0) + u(1, 1) * u(1, 1) / freq(1))
                         : std::numeric_limits<double>::infinity();
    return m;
}

}  // namespace

double concurrence_from_moments(const PhaseParams& pp) {
    const AtomicMoments m = atomic_moments(pp);
    const double w = atomic_frequency(pp);
    double anomalous_minus_number = 0.5 - m.p2 / w;  // limit of the expression below when <Y^2> diverges
    if (std::isfinite(m.y2)) {
        const double anomalous = 0.5 * (w * m.y2 - m.p2 / w);
        const double number = 0.5 * (w * m.y2 + m.p2 / w) - 0.5;
        anomalous_minus_number = anomalous - number;
    }
    return (1.0 + pp.mu) * anomalous_minus_number + 0.5 * (1.0 - pp.mu);
}

double momentum_squeezing(const PhaseParams& pp) {
    const double c_inf = concurrence_infinite(pp);
    return pp.omega0 * (0.5 - (c_inf - 0.5 * (1.0 - pp.mu)) / (1.0 + pp.mu));
}

double momentum_squeezing_direct(const PhaseParams& pp) {
    // p_y is referenced to omega0; rescale from the displaced-mode frequency.
    return pp.omega0 * atomic_moments(pp).p2 / atomic_frequency(pp);
}

double concurrence_smalllambda(double omega, double omega0, double lambda) {
    require_positive_frequencies(omega, omega0, lambda);
    const double a = lambda / (omega + omega0);
    return 2.0 * a * a / (1.0 + a * a);
}

double wavefunction(const PhaseParams& pp, double x, double y) {
    const double c = std::cos(pp.gamma);
    const double s = std::sin(pp.gamma);
    const double soft = c * x - s * y;
    const double stiff = s * x + c * y;
    const double norm = std::pow(pp.eps_plus * pp.eps_minus / (std::numbers::pi * std::numbers::pi), 0.25);
    return norm * std::exp(-0.5 * pp.eps_minus * soft * soft - 0.5 * pp.eps_plus * stiff * stiff);
}

AnalyticRow analytic_row(double omega, double omega0, double lambda, bool cat, std::optional<double> cutoff_length) {
    AnalyticRow row;
    row.pp = phase_params(omega, omega0, lambda);
    if (row.pp.eps_minus > 0.0) row.entropy = entropy_infinite(row.pp, cat);
    if (cutoff_length) row.entropy_cutoff = entropy_finite_cutoff(row.pp, *cutoff_length);
    row.concurrence = concurrence_infinite(row.pp);
    row.squeezing = momentum_squeezing(row.pp);
    return row;
}

}  // namespace dicke::thermo
