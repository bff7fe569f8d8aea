#include "dicke/oracle/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dicke::oracle {

double gaussian_field_entropy(const thermo::PhaseParams& pp, double cutoff_length, int grid_points) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(thermo::potential_matrix(pp));
    const Eigen::Vector2d freq = es.eigenvalues().cwiseSqrt();
    const Eigen::Matrix2d root = es.eigenvectors() * freq.asDiagonal() * es.eigenvectors().transpose();

    // Widest and narrowest Gaussian widths set the window and the spacing.
    const double wide = std::sqrt(0.5 / freq(0));
    const double extent = 12.0 * wide;
    const double h = 2.0 * extent / (grid_points - 1);

    Eigen::MatrixXd sampled(grid_points, grid_points);
    for (int i = 0; i < grid_points; ++i) {
        const double x = -extent + i * h;
        for (int k = 0; k < grid_points; ++k) {
            const double y = -extent + k * h;
            double weight = 1.0;
            if (std::isfinite(cutoff_length)) weight = std::exp(-4.0 * y * y / (cutoff_length * cutoff_length));
            const double quad = root(0, 0) * x * x + 2.0 * root(0, 1) * x * y + root(1, 1) * y * y;
            sampled(i, k) = std::exp(-0.5 * quad) * std::sqrt(weight);
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(sampled);
    Eigen::VectorXd p = svd.singularValues().array().square();
    p /= p.sum();
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) > 0.0) s -= p(i) * std::log2(p(i));
    }
    return s;
}

double geometric_spectrum_entropy(double zeta) {
    const double q = std::exp(-2.0 * zeta);
    double s = 0.0;
    double pk = 1.0 - q;
    for (int k = 0; k < 100000 && pk > 1e-300; ++k) {
        s -= pk * std::log2(pk);
        pk *= q;
    }
    return s;
}

}  // namespace dicke::oracle
