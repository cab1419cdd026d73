#pragma once

#include <Eigen/Dense>

#include "qillum/scenario.hpp"
#include "qillum/symplectic.hpp"

namespace qillum {

enum class Transmitter { QuantumIllumination, CoherentState };

/// Gaussian state given by its quadrature mean vector and covariance.
/// Mean convention: for each mode, mean(q) = Re<a> and mean(p) = Im<a>,
/// matching the vacuum = diag(1/4) covariance convention.
struct GaussianState {
    Eigen::VectorXd mean;
    CovarianceMatrix cov;

    /// Throws DimensionMismatch if mean length != 2 * cov.dim_modes().
    GaussianState(Eigen::VectorXd mean_, CovarianceMatrix cov_);
};

/// Target-absent (rho0) and target-present (rho1) receiver states for one
/// transmitter choice. Both states always have the same mode count.
struct HypothesisPair {
    GaussianState rho0;
    GaussianState rho1;
    Transmitter transmitter;
};

/// Covariance of the two-mode squeezed vacuum (signal, idler) with n_s mean
/// photons per mode:
///
///   (1/4) [[S, 0, Cq,  0], [0, S, 0, -Cq], [Cq, 0, S, 0], [0, -Cq, 0, S]]
///
/// with S = 2 n_s + 1 and Cq = 2 sqrt(n_s (n_s + 1)). Pure for every n_s,
/// so its symplectic spectrum is {1/4, 1/4}.
///
/// Throws InvalidParameter if n_s <= 0 (the zero-photon limit is rejected:
/// downstream formulas divide by Cq).
CovarianceMatrix tmsv_covariance(double n_s);

/// Receiver states under both hypotheses.
///
/// QuantumIllumination: two zero-mean two-mode (return, idler) states.
/// Target absent: diag(B, B, S, S)/4. Target present: diagonal (A, A, S, S)/4
/// with cross blocks ±sqrt(kappa) Cq / 4, A = 2 kappa n_s + B.
///
/// CoherentState: two single-mode states with covariance diag(B, B)/4,
/// means (0, 0) and (sqrt(kappa n_s), 0).
HypothesisPair scenario_states(const ScenarioParams& params,
                               Transmitter transmitter);

/// Margins of the phase-sensitive cross correlation against the best
/// classical (proper-P-representation) transmitter:
///
///   input_margin  = Cq - Cc = 2 sqrt(n_s (n_s+1)) - 2 n_s
///   output_margin = sqrt(kappa) Cq - 2 sqrt(n_s (kappa n_s + n_b))
///
/// A positive margin means the corresponding state is entangled. The sign
/// of output_margin equals the sign of (kappa - n_b): the received pair
/// stays entangled only while the background is weaker than the return.
struct ClassicalityMargin {
    double input_margin;
    double output_margin;
};

ClassicalityMargin classicality_margin(const ScenarioParams& params);

}  // namespace qillum
