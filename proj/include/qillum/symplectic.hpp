#pragma once

#include <Eigen/Dense>

#include "qillum/errors.hpp"
#include "qillum/scenario.hpp"

namespace qillum {

/// Symplectic form for dim_modes modes: block diagonal with K copies of
/// [[0, 1], [-1, 0]] for quadrature ordering (q1, p1, q2, p2, ...).
/// Antisymmetric and squares to -identity.
///
/// Throws InvalidParameter if dim_modes < 1.
Eigen::MatrixXd symplectic_form(int dim_modes);

/// Validated Wigner covariance matrix of a K-mode Gaussian state, in the
/// convention where the vacuum covariance is diag(1/4, ..., 1/4) and
/// quadratures are ordered (q1, p1, q2, p2, ...).
///
/// Construction verifies that the matrix is square with even dimension,
/// finite, symmetric to 1e-12 relative tolerance, and positive definite;
/// the stored matrix is exactly symmetrized. The remaining physicality
/// condition -- every symplectic eigenvalue nu_k >= 1/4 - 1e-9 -- is
/// enforced by williamson(), through which all downstream consumers pass.
class CovarianceMatrix {
public:
    /// Throws DimensionMismatch, InvalidParameter or NonPositiveDefinite.
    explicit CovarianceMatrix(Eigen::MatrixXd entries);

    int dim_modes() const { return modes_; }
    const Eigen::MatrixXd& entries() const { return entries_; }

private:
    Eigen::MatrixXd entries_;
    int modes_ = 0;
};

/// Result of a symplectic (Williamson) diagonalization:
///
///   cov = s_matrix * diag(nu_1, nu_1, ..., nu_K, nu_K) * s_matrix^T
///   s_matrix * Omega * s_matrix^T = Omega
///
/// spectrum holds the symplectic eigenvalues nu_k, sorted descending
/// (ties broken by the q-quadrature weight of the associated basis pair).
struct SymplecticDecomposition {
    Eigen::MatrixXd s_matrix;
    Eigen::VectorXd spectrum;
};

/// Williamson decomposition of a covariance matrix.
///
/// The symplectic eigenvalues equal the absolute values of the (purely
/// imaginary) eigenvalues of i * Omega * cov, each pair reported once.
/// Implementation: real Schur decomposition of the skew-symmetric kernel
/// V^(1/2) * Omega * V^(1/2), whose orthogonal Schur basis is rescaled to
/// the symplectic matrix S = V^(1/2) * Q * D^(-1/2).
///
/// Throws NonPositiveDefinite if cov is not positive definite and
/// UncertaintyViolation if any nu_k < 1/4 - 1e-9.
SymplecticDecomposition williamson(const CovarianceMatrix& cov);

/// Closed-form symplectic diagonalization of the entangled transmitter's
/// target-present return/idler covariance, built directly from the scenario
/// parameters:
///
///   S = [[X+, X-], [X-, X+]],  X± = diag(x±, ±x±),
///   x± = sqrt((A + S ± R) / (2R)),  R = sqrt((A+S)^2 - 4 kappa Cq^2),
///   nu = { (A - S + R)/8 , (S - A + R)/8 }
///
/// with S = 2 n_s + 1, B = 2 n_b + 1, A = 2 kappa n_s + B and
/// Cq = 2 sqrt(n_s (n_s + 1)). Mode order is swapped if needed so the
/// spectrum is descending. Agrees with williamson() on the same covariance.
///
/// Throws DomainError if the discriminant R^2 is negative (cannot happen
/// for valid parameters; guarded anyway).
SymplecticDecomposition qi_h1_closed_form(const ScenarioParams& params);

}  // namespace qillum
