#include "dicke/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "dicke/errors.hpp"

namespace dicke {

DensityMatrix::DensityMatrix(Eigen::MatrixXd elements) : elements_(std::move(elements)) {
    if (elements_.rows() != elements_.cols() || elements_.rows() == 0) {
        throw InvalidDensityMatrix("density matrix must be square and non-empty");
    }
    if (!elements_.allFinite()) throw InvalidDensityMatrix("density matrix has non-finite elements");
    const double asym = (elements_ - elements_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, elements_.cwiseAbs().maxCoeff())) {
        throw InvalidDensityMatrix("density matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
    }
    const double trace = elements_.trace();
    if (std::abs(trace - 1.0) > kTraceTol) {
        throw InvalidDensityMatrix("density matrix trace " + std::to_string(trace) + " differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(elements_, Eigen::EigenvaluesOnly);
    spectrum_ = es.eigenvalues();
    if (spectrum_(0) < -kNegativeTol) {
        throw InvalidDensityMatrix("density matrix has negative eigenvalue " + std::to_string(spectrum_(0)));
    }
    spectrum_ = spectrum_.cwiseMax(0.0);
}

namespace {

// psi(n, k) with k = m + j, zero outside the basis.
Eigen::MatrixXd amplitude_grid(const GroundState& state, const BasisIndex& basis) {
    if (static_cast<std::size_t>(state.amplitudes.size()) != basis.size()) {
        throw ValidationError("state dimension does not match basis");
    }
    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(basis.n_max() + 1, basis.n_atoms() + 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& s = basis[i];
        psi(s.n, (s.two_m + basis.n_atoms()) / 2) = state.amplitudes(static_cast<Eigen::Index>(i));
    }
    return psi;
}

double expectation(const SparseOperator& op, const Eigen::VectorXd& v) { return v.dot(op * v); }

}  // namespace

DensityMatrix field_rdm(const GroundState& state, const BasisIndex& basis) {
    const Eigen::MatrixXd psi = amplitude_grid(state, basis);
    Eigen::MatrixXd rho = psi * psi.transpose();
    rho = 0.5 * (rho + rho.transpose()).eval();
    return DensityMatrix(std::move(rho));
}

DensityMatrix atomic_rdm(const GroundState& state, const BasisIndex& basis) {
    const Eigen::MatrixXd psi = amplitude_grid(state, basis);
    Eigen::MatrixXd rho = psi.transpose() * psi;
    rho = 0.5 * (rho + rho.transpose()).eval();
    return DensityMatrix(std::move(rho));
}

double shannon_entropy_bits(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < -DensityMatrix::kNegativeTol) {
            throw InvalidDensityMatrix("negative probability " + std::to_string(p(i)));
        }
        if (p(i) > 0.0) s -= p(i) * std::log2(p(i));
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return shannon_entropy_bits(rho.spectrum()); }

EntropyResult field_entropy(const GroundState& state, const BasisIndex& basis) {
    return {von_neumann_entropy(field_rdm(state, basis)), std::min(basis.n_max() + 1, basis.n_atoms() + 1)};
}

CollectiveExpectations collective_expectations(const GroundState& state, const BasisIndex& basis) {
    const auto& v = state.amplitudes;
    if (static_cast<std::size_t>(v.size()) != basis.size()) throw ValidationError("state dimension does not match basis");

    const double jplus = expectation(collective_operator(CollectiveKind::jplus, basis), v);
    const double jplus_jz = expectation(collective_operator(CollectiveKind::jplus_jz, basis), v);
    if (std::abs(jplus) > 1e-10 || std::abs(jplus_jz) > 1e-10) {
        throw NumericalError("state is not a parity eigenstate: <J+> = " + std::to_string(jplus) +
                             ", <J+ Jz> = " + std::to_string(jplus_jz));
    }

    CollectiveExpectations e;
    e.jz = expectation(collective_operator(CollectiveKind::jz, basis), v);
    e.jz2 = expectation(collective_operator(CollectiveKind::jz_squared, basis), v);
    e.jp2 = expectation(collective_operator(CollectiveKind::jplus_squared, basis), v);
    e.nbar = expectation(collective_operator(CollectiveKind::photon_number, basis), v);
    return e;
}

DensityMatrix two_atom_rdm(const CollectiveExpectations& e, int n_atoms) {
    if (n_atoms < 2) throw ValidationError("two-atom reduced state needs at least two atoms");
    const double n = n_atoms;
    const double norm = 4.0 * n * (n - 1.0);
    const double v_plus = (n * n - 2.0 * n + 4.0 * e.jz2 + 4.0 * e.jz * (n - 1.0)) / norm;
    const double v_minus = (n * n - 2.0 * n + 4.0 * e.jz2 - 4.0 * e.jz * (n - 1.0)) / norm;
    const double w = (n * n - 4.0 * e.jz2) / norm;
    const double u = e.jp2 / (n * (n - 1.0));

    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(4, 4);
    rho(0, 0) = v_plus;
    rho(3, 3) = v_minus;
    rho(1, 1) = rho(2, 2) = w;
    rho(1, 2) = rho(2, 1) = w;
    rho(0, 3) = rho(3, 0) = u;
    return DensityMatrix(std::move(rho));
}

namespace {

Eigen::Matrix4d spin_flip() {
    // sigma_y (x) sigma_y is real: -|uu><dd| - |dd><uu| + |ud><du| + |du><ud|
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 3) = s(3, 0) = -1.0;
    s(1, 2) = s(2, 1) = 1.0;
    return s;
}

Eigen::Matrix4d as_4x4(const DensityMatrix& rho) {
    if (rho.dimension() != 4) throw ValidationError("two-qubit density matrix must be 4x4");
    return rho.elements();
}

// Eigenvalues of R below its rounding floor are set to zero before the square
// root, which would otherwise turn 1e-17 noise into 1e-9 roots.
Eigen::Vector4d sorted_roots(Eigen::Vector4d eig) {
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * eig.cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i) eig(i) = eig(i) > floor ? std::sqrt(eig(i)) : 0.0;
    std::sort(eig.data(), eig.data() + 4, std::greater<>());
    return eig;
}

bool direct_route_ok(const Eigen::Vector4cd& eig) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(eig(i).imag()) > 1e-10 || eig(i).real() < -1e-10) return false;
    }
    return true;
}

}  // namespace

Eigen::Vector4d spin_flip_roots_direct(const DensityMatrix& rho12) {
    const Eigen::Matrix4d rho = as_4x4(rho12);
    const Eigen::Matrix4d s = spin_flip();
    const Eigen::Matrix4d product = rho * s * rho * s;  // rho is real, so rho* = rho
    Eigen::EigenSolver<Eigen::Matrix4d> es(product, false);
    return sorted_roots(es.eigenvalues().real());
}

Eigen::Vector4d spin_flip_roots_symmetric(const DensityMatrix& rho12) {
    const Eigen::Matrix4d rho = as_4x4(rho12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
    const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4d sqrt_rho = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
    const Eigen::Matrix4d s = spin_flip();
    Eigen::Matrix4d product = sqrt_rho * s * rho * s * sqrt_rho;
    product = 0.5 * (product + product.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> ps(product, Eigen::EigenvaluesOnly);
    return sorted_roots(ps.eigenvalues());
}

ConcurrenceResult wootters_concurrence(const DensityMatrix& rho12, int n_atoms) {
    const Eigen::Matrix4d rho = as_4x4(rho12);
    const Eigen::Matrix4d s = spin_flip();
    Eigen::EigenSolver<Eigen::Matrix4d> es(Eigen::Matrix4d(rho * s * rho * s), false);
    const Eigen::Vector4d roots = direct_route_ok(es.eigenvalues()) ? sorted_roots(es.eigenvalues().real())
                                                                   : spin_flip_roots_symmetric(rho12);
    ConcurrenceResult out;
    out.concurrence = std::max(0.0, roots(0) - roots(1) - roots(2) - roots(3));
    out.scaled = n_atoms * out.concurrence;
    return out;
}

ObservableRecord measure(const ModelParams& params, const BasisIndex& basis, const GroundState& state) {
    ObservableRecord r;
    r.params = params;
    r.params.boson_cutoff = basis.n_max();
    r.energy = state.energy;
    r.entropy = field_entropy(state, basis).entropy;
    r.expectations = collective_expectations(state, basis);
    if (params.n_atoms >= 2) {
        const auto c = wootters_concurrence(two_atom_rdm(r.expectations, params.n_atoms), params.n_atoms);
        r.concurrence = c.concurrence;
        r.scaled_concurrence = c.scaled;
    }
    return r;
}

ObservableRecord measure(const ModelParams& params, const CutoffResult& solved) {
    return measure(params, solved.basis, solved.state);
}

const std::vector<std::string>& observable_csv_columns() {
    static const std::vector<std::string> columns{"N",       "omega",       "omega0",
                                                  "lambda",  "n_max",       "energy",
                                                  "entropy", "concurrence", "scaled_concurrence",
                                                  "jz",      "jz2",         "jp2",
                                                  "nbar"};
    return columns;
}

std::vector<double> observable_csv_values(const ObservableRecord& r) {
    return {static_cast<double>(r.params.n_atoms),
            r.params.omega,
            r.params.omega0,
            r.params.lambda,
            static_cast<double>(r.params.boson_cutoff),
            r.energy,
            r.entropy,
            r.concurrence,
            r.scaled_concurrence,
            r.expectations.jz,
            r.expectations.jz2,
            r.expectations.jp2,
            r.expectations.nbar};
}

}  // namespace dicke
