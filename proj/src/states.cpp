#include "qillum/states.hpp"

#include <cmath>
#include <utility>

namespace qillum {

namespace {

double thermal_diag(double n) { return 2.0 * n + 1.0; }

double quantum_cross(double n_s) {
    return 2.0 * std::sqrt(n_s * (n_s + 1.0));
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean_, CovarianceMatrix cov_)
    : mean(std::move(mean_)), cov(std::move(cov_)) {
    if (mean.size() != 2 * static_cast<Eigen::Index>(cov.dim_modes()))
        throw DimensionMismatch("mean length must be twice the mode count");
    if (!mean.allFinite())
        throw InvalidParameter("mean vector entries must be finite");
}

CovarianceMatrix tmsv_covariance(double n_s) {
    if (!(n_s > 0.0) || !std::isfinite(n_s))
        throw InvalidParameter("n_s must be positive and finite");
    const double s = thermal_diag(n_s);
    const double c = quantum_cross(n_s);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
    v.diagonal().setConstant(s);
    v(0, 2) = v(2, 0) = c;
    v(1, 3) = v(3, 1) = -c;
    return CovarianceMatrix(0.25 * v);
}

HypothesisPair scenario_states(const ScenarioParams& params,
                               Transmitter transmitter) {
    if (transmitter == Transmitter::CoherentState) {
        const double b = thermal_diag(params.n_b);
        CovarianceMatrix cov(0.25 * b * Eigen::MatrixXd::Identity(2, 2));
        Eigen::VectorXd mean1(2);
        mean1 << std::sqrt(params.kappa * params.n_s), 0.0;
        return HypothesisPair{GaussianState(Eigen::VectorXd::Zero(2), cov),
                              GaussianState(std::move(mean1), cov), transmitter};
    }

    const double s = thermal_diag(params.n_s);
    const double b = thermal_diag(params.n_b);
    const double a = 2.0 * params.kappa * params.n_s + b;
    const double cross = std::sqrt(params.kappa) * quantum_cross(params.n_s);

    Eigen::MatrixXd v0 = Eigen::MatrixXd::Zero(4, 4);
    v0.diagonal() << b, b, s, s;
    Eigen::MatrixXd v1 = Eigen::MatrixXd::Zero(4, 4);
    v1.diagonal() << a, a, s, s;
    v1(0, 2) = v1(2, 0) = cross;
    v1(1, 3) = v1(3, 1) = -cross;

    const Eigen::VectorXd zero4 = Eigen::VectorXd::Zero(4);
    return HypothesisPair{GaussianState(zero4, CovarianceMatrix(0.25 * v0)),
                          GaussianState(zero4, CovarianceMatrix(0.25 * v1)),
                          transmitter};
}

ClassicalityMargin classicality_margin(const ScenarioParams& params) {
    const double c_q = quantum_cross(params.n_s);
    const double c_c = 2.0 * params.n_s;
    const double output_classical_limit =
        2.0 * std::sqrt(params.n_s * (params.kappa * params.n_s + params.n_b));
    return ClassicalityMargin{
        c_q - c_c, std::sqrt(params.kappa) * c_q - output_classical_limit};
}

}  // namespace qillum
