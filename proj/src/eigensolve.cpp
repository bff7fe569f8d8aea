#include "dicke/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dicke/errors.hpp"
#include "dicke/observables.hpp"

namespace dicke {
namespace {

Eigen::VectorXd start_vector(Eigen::Index n) {
    return Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

void fix_sign(Eigen::VectorXd& v) {
    const double overlap = v.sum();
    if (std::abs(overlap) > 1e-12 * std::sqrt(static_cast<double>(v.size()))) {
        if (overlap < 0.0) v = -v;
        return;
    }
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-12) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
}

double residual_norm(const SymmetricMatrix& a, const Eigen::VectorXd& v, double energy) {
    Eigen::VectorXd r = a * v;
    r -= energy * v;
    return r.norm();
}

GroundState solve_dense(const SymmetricMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.to_dense());
    if (es.info() != Eigen::Success) throw NonConvergenceError("dense eigensolver failed", std::numeric_limits<double>::infinity());
    GroundState gs;
    gs.energy = es.eigenvalues()(0);
    gs.amplitudes = es.eigenvectors().col(0);
    gs.amplitudes.normalize();
    fix_sign(gs.amplitudes);
    gs.residual = residual_norm(a, gs.amplitudes, gs.energy);
    gs.matvecs = 1;
    return gs;
}

// Orthogonalize w against the first k columns of basis, two classical Gram-Schmidt passes.
void orthogonalize(Eigen::Ref<Eigen::VectorXd> w, const Eigen::MatrixXd& basis, Eigen::Index k) {
    for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd coeffs = basis.leftCols(k).transpose() * w;
        w.noalias() -= basis.leftCols(k) * coeffs;
    }
}

GroundState solve_lanczos(const SymmetricMatrix& a, const SolverOptions& opt) {
    const Eigen::Index n = a.dimension();
    const Eigen::Index m = std::min<Eigen::Index>(n, std::max<Eigen::Index>(opt.krylov_dim, 2));
    const std::size_t budget = 10 * static_cast<std::size_t>(n);

    Eigen::MatrixXd v(n, m + 1);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd w(n);
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    Eigen::VectorXd current = start_vector(n);
    std::size_t matvecs = 0;
    double best_residual = std::numeric_limits<double>::infinity();

    for (;;) {
        v.col(0) = current;
        Eigen::Index steps = 0;
        for (Eigen::Index k = 0; k < m; ++k) {
            a.multiply(v.col(k), w);
            ++matvecs;
            alpha(k) = v.col(k).dot(w);
            orthogonalize(w, v, k + 1);
            beta(k) = w.norm();
            steps = k + 1;
            if (k + 1 == m || matvecs >= budget) break;
            const double scale = std::max(1.0, std::abs(alpha(k)));
            if (beta(k) <= 1e-12 * scale) {
                // Invariant subspace: continue with a fresh deterministic direction so a start
                // vector orthogonal to the ground state cannot trap the iteration.
                beta(k) = 0.0;
                for (Eigen::Index i = 0; i < n; ++i) w(i) = uniform(rng);
                orthogonalize(w, v, k + 1);
                const double norm = w.norm();
                if (norm < 1e-12) break;
                v.col(k + 1) = w / norm;
                continue;
            }
            v.col(k + 1) = w / beta(k);
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        const Eigen::VectorXd sub = steps > 1 ? Eigen::VectorXd(beta.head(steps - 1)) : Eigen::VectorXd();
        tri.computeFromTridiagonal(alpha.head(steps), sub, Eigen::ComputeEigenvectors);
        if (tri.info() != Eigen::Success) throw NonConvergenceError("tridiagonal eigensolver failed", best_residual);

        Eigen::VectorXd ritz = v.leftCols(steps) * tri.eigenvectors().col(0);
        ritz.normalize();
        a.multiply(ritz, w);
        ++matvecs;
        const double theta = ritz.dot(w);
        const double residual = (w - theta * ritz).norm();
        best_residual = std::min(best_residual, residual);

        if (residual <= opt.tol) {
            GroundState gs;
            gs.energy = theta;
            gs.amplitudes = std::move(ritz);
            fix_sign(gs.amplitudes);
            gs.residual = residual;
            gs.matvecs = matvecs;
            return gs;
        }
        if (matvecs >= budget) {
            throw NonConvergenceError("Lanczos did not converge within " + std::to_string(budget) +
                                          " matrix-vector products (best residual " + std::to_string(best_residual) + ")",
                                      best_residual);
        }
        current = std::move(ritz);
    }
}

}  // namespace

GroundState lowest_eigenpair(const SymmetricMatrix& matrix, const SolverOptions& options) {
    if (matrix.dimension() < 1) throw ValidationError("eigensolver needs a non-empty matrix");
    if (!(options.tol > 0.0)) throw ValidationError("eigensolver tolerance must be positive");
    bool dense = false;
    switch (options.method) {
        case SolverMethod::dense: dense = true; break;
        case SolverMethod::lanczos: dense = false; break;
        case SolverMethod::automatic: dense = matrix.dimension() <= options.dense_threshold; break;
    }
    GroundState gs = dense ? solve_dense(matrix) : solve_lanczos(matrix, options);
    if (dense && gs.residual > options.tol) {
        throw NonConvergenceError("dense eigenpair residual " + std::to_string(gs.residual) + " above tolerance",
                                  gs.residual);
    }
    return gs;
}

GroundState lowest_eigenpair(const SymmetricMatrix& matrix, double tol) {
    SolverOptions opt;
    opt.tol = tol;
    return lowest_eigenpair(matrix, opt);
}

CutoffResult solve_at_cutoff(const ModelParams& params, Parity sector, const SolverOptions& solver) {
    CutoffResult out;
    out.n_max = params.boson_cutoff;
    out.basis = build_basis(params, sector);
    out.state = lowest_eigenpair(hamiltonian_matrix(params, out.basis), solver);
    out.field_entropy = field_entropy(out.state, out.basis).entropy;
    const auto number = collective_operator(CollectiveKind::photon_number, out.basis);
    out.photon_number = out.state.amplitudes.dot(number * out.state.amplitudes);
    out.solves = 1;
    return out;
}

CutoffResult converge_cutoff(ModelParams params, const CutoffPolicy& policy) {
    params.validate();
    if (!(policy.tol > 0.0)) throw ValidationError("cutoff tolerance must be positive");
    if (params.boson_cutoff > policy.ceiling) throw ValidationError("initial boson cutoff exceeds the ceiling");

    auto changed = [&](double a, double b) { return std::abs(a - b) > policy.tol * std::max(1.0, std::abs(b)); };

    CutoffResult previous = solve_at_cutoff(params, policy.sector, policy.solver);
    int solves = 1;
    std::string unconverged = "energy, photon_number, field_entropy";
    for (;;) {
        const int next = 2 * params.boson_cutoff;
        if (next > policy.ceiling) {
            throw CutoffCeilingError("boson cutoff would exceed ceiling " + std::to_string(policy.ceiling) +
                                         " at N=" + std::to_string(params.n_atoms) +
                                         ", lambda=" + std::to_string(params.lambda) + "; unconverged: " + unconverged,
                                     unconverged);
        }
        params.boson_cutoff = next;
        CutoffResult current = solve_at_cutoff(params, policy.sector, policy.solver);
        ++solves;

        std::vector<std::string> bad;
        if (changed(previous.state.energy, current.state.energy)) bad.emplace_back("energy");
        if (changed(previous.photon_number, current.photon_number)) bad.emplace_back("photon_number");
        if (changed(previous.field_entropy, current.field_entropy)) bad.emplace_back("field_entropy");
        if (bad.empty()) {
            previous.solves = solves;
            return previous;
        }
        unconverged.clear();
        for (const auto& b : bad) unconverged += (unconverged.empty() ? "" : ", ") + b;
        previous = std::move(current);
    }
}

}  // namespace dicke
