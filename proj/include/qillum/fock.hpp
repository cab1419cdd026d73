#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qillum/errors.hpp"
#include "qillum/scenario.hpp"

namespace qillum {

enum class Hypothesis { TargetAbsent, TargetPresent };

/// Density matrix in a truncated number basis. Multi-mode basis states are
/// indexed mode-0-major: flat index = n_0 * c_1 * ... + ... + n_{K-1}.
///
/// Construction symmetrizes and renormalizes the matrix to unit trace and
/// validates: Hermitian to 1e-10, eigenvalues >= -1e-10, and the recorded
/// truncation deficit (probability mass lost to the cutoffs, accounted
/// before renormalization) at most deficit_threshold.
class FockDensityMatrix {
public:
    /// Throws DimensionMismatch, InvalidParameter or TruncationError.
    FockDensityMatrix(std::vector<int> cutoffs, Eigen::MatrixXcd matrix,
                      double truncation_deficit, double deficit_threshold);

    const std::vector<int>& cutoffs() const { return cutoffs_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    double truncation_deficit() const { return deficit_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

private:
    std::vector<int> cutoffs_;
    Eigen::MatrixXcd matrix_;
    double deficit_ = 0.0;
};

/// Pure two-mode squeezed vacuum on |n, n> with amplitudes
/// c_n = sqrt(n_s^n / (n_s + 1)^(n+1)), truncated at the given per-mode
/// cutoff. The truncation deficit is the exact geometric tail
/// (n_s / (n_s + 1))^cutoff.
///
/// Throws InvalidParameter (n_s <= 0 or cutoff < 2) or TruncationError.
FockDensityMatrix build_tmsv_fock(double n_s, int cutoff,
                                  double deficit_threshold = 1e-9);

/// Push a two-mode (signal, idler) input state through the target channel.
///
/// TargetAbsent: the signal is lost; the output is thermal(n_b) on the
/// return mode tensored with the input's idler marginal.
///
/// TargetPresent: a bath mode in a thermal state with mean n_b / (1 - kappa)
/// is adjoined, the beamsplitter unitary exp(theta (aS+ aB - aS aB+)) with
/// cos(theta) = sqrt(kappa) is applied (dense exponentiation of the
/// truncated generator), and the leak mode is traced out. The mixture over
/// bath number states is applied level by level so the three-mode state is
/// never materialized.
///
/// The output return-mode dimension is max(input signal cutoff, bath_cutoff)
/// under both hypotheses, so the two outputs are directly comparable.
///
/// Throws InfeasibleError for n_b > 2: the truncated-basis dimension needed
/// for an honest answer blows up, so bright backgrounds are validated
/// through the Gaussian path instead. Also throws DimensionMismatch,
/// InvalidParameter or TruncationError.
FockDensityMatrix apply_target_channel(const FockDensityMatrix& input,
                                       const ScenarioParams& params,
                                       Hypothesis hypothesis, int bath_cutoff,
                                       double deficit_threshold = 1e-6);

/// Minimum discrimination error between two equally likely states:
/// (1 - sum of positive eigenvalues of (rho1 - rho0)) / 2, clamped to
/// [0, 1/2]. Throws DimensionMismatch.
double helstrom_error(const FockDensityMatrix& rho0,
                      const FockDensityMatrix& rho1);

/// tr(rho0^s rho1^(1-s)) by dense Hermitian eigendecomposition; eigenvalues
/// are floored at 0 before the fractional powers (truncation can produce
/// -1e-14 strays). Throws DimensionMismatch or SOutOfRange.
double q_s_oracle(const FockDensityMatrix& rho0, const FockDensityMatrix& rho1,
                  double s);

/// Smallest cutoff c >= 2 with Bose-Einstein tail mass
/// (mean / (mean + 1))^c <= tail_mass.
int thermal_cutoff(double mean_photons, double tail_mass = 1e-8);

/// Marginal density matrix of one mode, tracing out all others.
Eigen::MatrixXcd mode_marginal(const FockDensityMatrix& state, int mode);

/// First and second quadrature moments of a Fock-basis state, in the same
/// convention as the Gaussian modules (q = (a + a+)/2, vacuum variance 1/4),
/// for direct comparison against analytic means and covariances.
struct QuadratureMoments {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

QuadratureMoments quadrature_moments(const FockDensityMatrix& state);

/// Both hypothesis outputs for a scenario, at cutoffs chosen from the
/// standard tail rule: TMSV cutoff from a 1e-9 tail on n_s, bath/return
/// cutoff from a 1e-8 tail on the brightest thermal component.
struct OracleScenario {
    FockDensityMatrix rho0;
    FockDensityMatrix rho1;
    int tmsv_cutoff;
    int bath_cutoff;
};

OracleScenario build_oracle_scenario(const ScenarioParams& params);

}  // namespace qillum
