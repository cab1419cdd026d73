#include "qillum/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qillum {

Eigen::MatrixXd symplectic_form(int dim_modes) {
    if (dim_modes < 1) throw InvalidParameter("dim_modes must be >= 1");
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * dim_modes, 2 * dim_modes);
    for (int k = 0; k < dim_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) {
    const Eigen::Index rows = entries.rows();
    if (rows < 2 || entries.cols() != rows || rows % 2 != 0)
        throw DimensionMismatch(
            "covariance matrix must be square with even dimension >= 2");
    if (!entries.allFinite())
        throw InvalidParameter("covariance matrix entries must be finite");
    const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    const double asymmetry =
        (entries - Eigen::MatrixXd(entries.transpose())).cwiseAbs().maxCoeff();
    if (asymmetry > 1e-12 * scale)
        throw InvalidParameter("covariance matrix is not symmetric");
    entries_ = 0.5 * (entries + Eigen::MatrixXd(entries.transpose()));
    modes_ = static_cast<int>(rows / 2);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_,
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("covariance eigenvalue computation failed");
    if (!(solver.eigenvalues().minCoeff() > 0.0))
        throw NonPositiveDefinite("covariance matrix is not positive definite");
}

SymplecticDecomposition williamson(const CovarianceMatrix& cov) {
    const int k_modes = cov.dim_modes();
    const int n = 2 * k_modes;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov.entries());
    if (solver.info() != Eigen::Success)
        throw Error("covariance eigendecomposition failed");
    if (!(solver.eigenvalues().minCoeff() > 0.0))
        throw NonPositiveDefinite("covariance matrix is not positive definite");
    const Eigen::MatrixXd root = solver.operatorSqrt();

    // Skew-symmetric kernel sharing the symplectic spectrum with Omega*V.
    const Eigen::MatrixXd kernel_raw = root * symplectic_form(k_modes) * root;
    const Eigen::MatrixXd kernel =
        0.5 * (kernel_raw - Eigen::MatrixXd(kernel_raw.transpose()));

    Eigen::RealSchur<Eigen::MatrixXd> schur(kernel);
    if (schur.info() != Eigen::Success)
        throw Error("real Schur decomposition failed");
    const Eigen::MatrixXd& t = schur.matrixT();
    Eigen::MatrixXd q = schur.matrixU();

    // The Schur form of a nonsingular skew-symmetric matrix is block
    // diagonal with 2x2 blocks [[0, nu], [-nu, 0]]; orient each block so
    // nu > 0 by swapping its two basis columns when needed.
    std::vector<double> nu(k_modes);
    for (int k = 0; k < k_modes; ++k) {
        const int i = 2 * k;
        if (t(i + 1, i) == 0.0 && t(i, i + 1) == 0.0)
            throw Error("Schur form has a singular block; covariance too close "
                        "to the boundary of positive definiteness");
        double value = 0.5 * (t(i, i + 1) - t(i + 1, i));
        if (value < 0.0) {
            q.col(i).swap(q.col(i + 1));
            value = -value;
        }
        nu[k] = value;
    }

    // Descending spectrum; ties broken by q-quadrature weight of the block.
    const double nu_max = *std::max_element(nu.begin(), nu.end());
    const double tie = 1e-12 * std::max(1.0, nu_max);
    std::vector<double> q_weight(k_modes);
    for (int k = 0; k < k_modes; ++k) {
        double w = 0.0;
        for (int j = 0; j < n; j += 2)
            w += q(j, 2 * k) * q(j, 2 * k) + q(j, 2 * k + 1) * q(j, 2 * k + 1);
        q_weight[k] = w;
    }
    std::vector<int> order(k_modes);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (nu[a] - nu[b] > tie) return true;
        if (nu[b] - nu[a] > tie) return false;
        return q_weight[a] > q_weight[b];
    });

    Eigen::MatrixXd q_sorted(n, n);
    Eigen::VectorXd spectrum(k_modes);
    Eigen::VectorXd inv_root_nu(n);
    for (int newk = 0; newk < k_modes; ++newk) {
        const int oldk = order[newk];
        q_sorted.col(2 * newk) = q.col(2 * oldk);
        q_sorted.col(2 * newk + 1) = q.col(2 * oldk + 1);
        spectrum(newk) = nu[oldk];
        inv_root_nu(2 * newk) = inv_root_nu(2 * newk + 1) =
            1.0 / std::sqrt(nu[oldk]);
    }
    if (spectrum.minCoeff() < 0.25 - 1e-9)
        throw UncertaintyViolation(
            "symplectic eigenvalue below the vacuum limit 1/4");

    SymplecticDecomposition out;
    out.s_matrix = root * q_sorted * inv_root_nu.asDiagonal();
    out.spectrum = std::move(spectrum);
    return out;
}

SymplecticDecomposition qi_h1_closed_form(const ScenarioParams& params) {
    const double s = 2.0 * params.n_s + 1.0;
    const double b = 2.0 * params.n_b + 1.0;
    const double a = 2.0 * params.kappa * params.n_s + b;
    const double c_q = 2.0 * std::sqrt(params.n_s * (params.n_s + 1.0));

    const double disc = (a + s) * (a + s) - 4.0 * params.kappa * c_q * c_q;
    if (disc < 0.0)
        throw DomainError("negative discriminant in the closed-form spectrum");
    const double r = std::sqrt(disc);
    const double x_plus = std::sqrt((a + s + r) / (2.0 * r));
    const double x_minus = std::sqrt((a + s - r) / (2.0 * r));

    Eigen::MatrixXd s_mat = Eigen::MatrixXd::Zero(4, 4);
    // [[X+, X-], [X-, X+]] with X± = diag(x±, ±x±)
    s_mat(0, 0) = s_mat(1, 1) = s_mat(2, 2) = s_mat(3, 3) = x_plus;
    s_mat(0, 2) = s_mat(2, 0) = x_minus;
    s_mat(1, 3) = s_mat(3, 1) = -x_minus;

    Eigen::VectorXd spectrum(2);
    spectrum << (a - s + r) / 8.0, (s - a + r) / 8.0;
    if (spectrum(0) < spectrum(1)) {
        std::swap(spectrum(0), spectrum(1));
        s_mat.col(0).swap(s_mat.col(2));
        s_mat.col(1).swap(s_mat.col(3));
    }

    SymplecticDecomposition out;
    out.s_matrix = std::move(s_mat);
    out.spectrum = std::move(spectrum);
    return out;
}

}  // namespace qillum
