#pragma once

#include "qillum/scenario.hpp"
#include "qillum/states.hpp"

namespace qillum {

/// Error-probability bounds for discriminating two equally likely
/// hypotheses from m independent copies. All probabilities are carried as
/// natural logs so that exponents around 1e-6 survive m up to 1e7 and
/// beyond without underflow.
struct BoundSet {
    double ln_upper_chernoff;        ///< ln of the Chernoff upper bound
    double ln_upper_bhattacharyya;   ///< ln of the s = 1/2 upper bound
    double ln_lower;                 ///< ln of the companion lower bound
    double s_star;                   ///< minimizing s in [0, 1]
    double exponent_per_mode;        ///< -ln Q_{s*} per transmitted mode
};

/// Coherent-state bounds plus the two bright-background (n_b >> 1)
/// approximations that are often quoted instead of the exact forms.
/// Both approximation fields are -inf when n_b = 0.
struct CsBoundSet : BoundSet {
    double ln_upper_bright_background;  ///< -m kappa n_s / (4 n_b) - ln 2
    double ln_lower_bright_background;  ///< -m kappa n_s / (2 n_b) - ln 4
};

/// Natural log of the s-overlap Q_s = tr(rho0^s rho1^(1-s)) of two Gaussian
/// states. Computed per mode from the Williamson decompositions of the
/// unit-vacuum covariances V_i = 4 cov_i (symplectic eigenvalues
/// alpha_k = 4 nu_k, displacement delta = 2 (mean1 - mean0)):
///
///   Q_s = [prod_k G_s(alpha0_k) G_{1-s}(alpha1_k)] 2^K / sqrt(det Sigma_s)
///         * exp(-delta^T Sigma_s^{-1} delta / 2)
///   G_s(x)      = 2^s / [(x+1)^s - (x-1)^s]
///   Lambda_s(x) = [(x+1)^s + (x-1)^s] / [(x+1)^s - (x-1)^s]
///   Sigma_s     = S0 D(Lambda_s(alpha0)) S0^T + S1 D(Lambda_{1-s}(alpha1)) S1^T
///
/// where D(v) duplicates each per-mode value across its (q, p) pair. When
/// both covariances are exactly equal the prefactor is identically one and
/// only the displacement term is evaluated, which keeps the result accurate
/// to ~1e-15 relative even when ln Q_s is ~1e-6 (the generic route loses
/// ~1e-9 relative to cancellation between the O(1) prefactor terms).
///
/// Throws DimensionMismatch, SOutOfRange, or SingularOverlap (condition
/// number of Sigma_s above 1e12).
double q_s(const GaussianState& rho0, const GaussianState& rho1, double s);

/// Quantum Chernoff bound and companions for m copies of the pair.
///
/// s_star minimizes the convex ln Q_s over [0, 1] (golden-section search,
/// |delta s| < 1e-9, 200-iteration cap; s = 1/2 is always tried as a
/// candidate afterwards so ln_upper_chernoff <= ln_upper_bhattacharyya
/// holds by construction). Bounds:
///
///   ln_upper_chernoff       = m ln Q_{s*} - ln 2
///   ln_upper_bhattacharyya  = m ln Q_{1/2} - ln 2
///   ln_lower                = ln[(1 - sqrt(1 - Q_{1/2}^{2m})) / 2]
///
/// the last computed in the stable form x / (1 + sqrt(1 - x)) with
/// x = Q_{1/2}^{2m} carried as a log (so m = 1e7 stays finite).
BoundSet chernoff_bound(const HypothesisPair& pair, long m);

/// Exact closed-form bounds for the coherent-state transmitter:
/// exponent_per_mode = kappa n_s / (sqrt(n_b + 1) + sqrt(n_b))^2, with
/// Chernoff = Bhattacharyya (s_star = 1/2 exactly), plus the
/// bright-background approximations as separate fields.
CsBoundSet cs_closed_form(const ScenarioParams& params);

/// Lower bound on the error probability of EVERY classical-state
/// transmitter (any mixture of coherent states) spending the same total
/// energy m n_s, obtained by granting the receiver perfect knowledge of
/// the transmitted amplitudes. Equals cs_closed_form(params).ln_lower.
double classical_perfect_measurement_lower(const ScenarioParams& params);

/// Per-mode error-exponent comparison of the two transmitters at equal
/// signal energy: qi_exponent is the entangled transmitter's Bhattacharyya
/// exponent, cs_exponent the coherent-state Chernoff exponent, and
/// ratio_db = 10 log10(ratio).
struct ExponentAdvantage {
    double qi_exponent;
    double cs_exponent;
    double ratio;
    double ratio_db;
};

ExponentAdvantage exponent_advantage(const ScenarioParams& params);

}  // namespace qillum
