#include "qillum/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qillum {

namespace {

using complexd = std::complex<double>;

constexpr double kOracleMaxBackground = 2.0;
constexpr double kEigenvectorWeightFloor = 1e-13;
constexpr double kBathWeightFloor = 1e-17;

Eigen::MatrixXd annihilation(int dim) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

Eigen::MatrixXcd kron_complex(const Eigen::MatrixXcd& a,
                              const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

// Bose-Einstein weights (1 - lam) lam^n on n < dim, NOT renormalized, so the
// missing tail mass stays observable as a trace deficit.
Eigen::VectorXd thermal_weights(double mean, int dim) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    if (mean <= 0.0) {
        w(0) = 1.0;
        return w;
    }
    const double lam = mean / (mean + 1.0);
    double p = 1.0 / (mean + 1.0);
    for (int n = 0; n < dim; ++n) {
        w(n) = p;
        p *= lam;
    }
    return w;
}

// exp(theta (aS+ aB - aS aB+)) on the (signal, bath) product space, by
// eigendecomposition of the Hermitian i * generator.
Eigen::MatrixXcd beamsplitter_unitary(double cos_theta, int dim_s, int dim_b) {
    const double theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
    const Eigen::MatrixXd a_s =
        kron(annihilation(dim_s), Eigen::MatrixXd::Identity(dim_b, dim_b));
    const Eigen::MatrixXd a_b =
        kron(Eigen::MatrixXd::Identity(dim_s, dim_s), annihilation(dim_b));
    const Eigen::MatrixXd generator =
        theta * (a_s.transpose() * a_b - a_s * a_b.transpose());

    const Eigen::MatrixXcd herm =
        complexd(0.0, 1.0) * generator.cast<complexd>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
    if (solver.info() != Eigen::Success)
        throw Error("beamsplitter generator eigendecomposition failed");
    Eigen::VectorXcd phases(solver.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(complexd(0.0, -solver.eigenvalues()(i)));
    return solver.eigenvectors() * phases.asDiagonal() *
           solver.eigenvectors().adjoint();
}

Eigen::MatrixXcd hermitian_power(const Eigen::MatrixXcd& m, double exponent) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw Error("density matrix eigendecomposition failed");
    Eigen::VectorXd values = solver.eigenvalues().cwiseMax(0.0);
    for (Eigen::Index i = 0; i < values.size(); ++i)
        values(i) = std::pow(values(i), exponent);
    return solver.eigenvectors() * values.asDiagonal() *
           solver.eigenvectors().adjoint();
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(std::vector<int> cutoffs,
                                     Eigen::MatrixXcd matrix,
                                     double truncation_deficit,
                                     double deficit_threshold)
    : cutoffs_(std::move(cutoffs)),
      matrix_(std::move(matrix)),
      deficit_(truncation_deficit) {
    if (cutoffs_.empty()) throw InvalidParameter("at least one mode required");
    Eigen::Index expected = 1;
    for (int c : cutoffs_) {
        if (c < 1) throw InvalidParameter("mode cutoffs must be positive");
        expected *= c;
    }
    if (matrix_.rows() != expected || matrix_.cols() != expected)
        throw DimensionMismatch(
            "density matrix size does not match the mode cutoffs");
    if ((matrix_ - Eigen::MatrixXcd(matrix_.adjoint())).cwiseAbs().maxCoeff() >
        1e-10)
        throw InvalidParameter("density matrix is not Hermitian");
    matrix_ = 0.5 * (matrix_ + Eigen::MatrixXcd(matrix_.adjoint())).eval();

    if (deficit_ < 0.0) {
        if (deficit_ < -1e-9)
            throw InvalidParameter("truncation deficit must be >= 0");
        deficit_ = 0.0;  // rounding noise from the trace measurement
    }
    if (deficit_ > deficit_threshold)
        throw TruncationError("truncation deficit " + std::to_string(deficit_) +
                              " exceeds threshold " +
                              std::to_string(deficit_threshold) +
                              "; raise the cutoffs");

    const double trace = matrix_.trace().real();
    if (!(trace > 0.0))
        throw InvalidParameter("density matrix trace must be positive");
    matrix_ /= trace;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        matrix_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("density matrix eigenvalue check failed");
    if (solver.eigenvalues().minCoeff() < -1e-10)
        throw InvalidParameter(
            "density matrix has a significantly negative eigenvalue");
}

FockDensityMatrix build_tmsv_fock(double n_s, int cutoff,
                                  double deficit_threshold) {
    if (!(n_s > 0.0) || !std::isfinite(n_s))
        throw InvalidParameter("n_s must be positive and finite");
    if (cutoff < 2) throw InvalidParameter("cutoff must be >= 2");

    const double lam = n_s / (n_s + 1.0);
    const double deficit = std::pow(lam, cutoff);  // exact geometric tail
    Eigen::VectorXd amplitude =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cutoff) * cutoff);
    double c_sq = 1.0 / (n_s + 1.0);  // c_n^2 = (1 - lam) lam^n
    for (int n = 0; n < cutoff; ++n) {
        amplitude(static_cast<Eigen::Index>(n) * cutoff + n) = std::sqrt(c_sq);
        c_sq *= lam;
    }
    Eigen::MatrixXcd rho =
        (amplitude * amplitude.transpose()).cast<complexd>();
    return FockDensityMatrix({cutoff, cutoff}, std::move(rho), deficit,
                             deficit_threshold);
}

Eigen::MatrixXcd mode_marginal(const FockDensityMatrix& state, int mode) {
    const std::vector<int>& cuts = state.cutoffs();
    const int modes = static_cast<int>(cuts.size());
    if (mode < 0 || mode >= modes)
        throw InvalidParameter("mode index out of range");

    // Mode-0-major strides: stride of the last mode is 1.
    std::vector<Eigen::Index> stride(modes, 1);
    for (int k = modes - 2; k >= 0; --k) stride[k] = stride[k + 1] * cuts[k + 1];

    Eigen::Index env_total = 1;
    for (int k = 0; k < modes; ++k)
        if (k != mode) env_total *= cuts[k];

    const int keep = cuts[mode];
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep, keep);
    for (Eigen::Index env = 0; env < env_total; ++env) {
        // Decompose env into the occupation numbers of the traced modes.
        Eigen::Index offset = 0;
        Eigen::Index rest = env;
        for (int k = modes - 1; k >= 0; --k) {
            if (k == mode) continue;
            offset += (rest % cuts[k]) * stride[k];
            rest /= cuts[k];
        }
        for (int a = 0; a < keep; ++a)
            for (int b = 0; b < keep; ++b)
                out(a, b) += state.matrix()(offset + a * stride[mode],
                                            offset + b * stride[mode]);
    }
    return out;
}

FockDensityMatrix apply_target_channel(const FockDensityMatrix& input,
                                       const ScenarioParams& params,
                                       Hypothesis hypothesis, int bath_cutoff,
                                       double deficit_threshold) {
    if (input.cutoffs().size() != 2)
        throw DimensionMismatch(
            "channel input must be a two-mode (signal, idler) state");
    if (bath_cutoff < 2) throw InvalidParameter("bath_cutoff must be >= 2");
    if (params.n_b > kOracleMaxBackground)
        throw InfeasibleError(
            "Fock oracle is limited to n_b <= 2; honest cutoffs for brighter "
            "backgrounds blow up the basis dimension, so those regimes are "
            "validated through the Gaussian path");

    const int dim_s = input.cutoffs()[0];
    const int dim_i = input.cutoffs()[1];
    const int dim_r = std::max(dim_s, bath_cutoff);

    if (hypothesis == Hypothesis::TargetAbsent) {
        // Signal lost: thermal background on the return mode, idler kept.
        const Eigen::VectorXd weights = thermal_weights(params.n_b, dim_r);
        const Eigen::MatrixXcd idler = mode_marginal(input, 1);
        Eigen::MatrixXcd thermal = Eigen::MatrixXcd::Zero(dim_r, dim_r);
        thermal.diagonal() = weights.cast<complexd>();
        Eigen::MatrixXcd rho = kron_complex(thermal, idler);
        const double deficit =
            1.0 - (1.0 - input.truncation_deficit()) * weights.sum();
        return FockDensityMatrix({dim_r, dim_i}, std::move(rho), deficit,
                                 deficit_threshold);
    }

    // Target present: interfere the signal with a bright thermal bath so the
    // return mode carries n_b mean background photons after the splitter.
    const double bath_mean = params.n_b / (1.0 - params.kappa);
    const int dim_b = bath_cutoff;
    const Eigen::MatrixXcd splitter =
        beamsplitter_unitary(std::sqrt(params.kappa), dim_r, dim_b);
    const Eigen::VectorXd bath = thermal_weights(bath_mean, dim_b);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(input.matrix());
    if (solver.info() != Eigen::Success)
        throw Error("channel input eigendecomposition failed");

    const Eigen::Index out_dim = static_cast<Eigen::Index>(dim_r) * dim_i;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(out_dim, out_dim);
    Eigen::MatrixXcd slice(static_cast<Eigen::Index>(dim_r) * dim_b, dim_s);
    Eigen::MatrixXcd amplitude(out_dim, dim_b);
    for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
        const double weight = solver.eigenvalues()(j);
        if (weight < kEigenvectorWeightFloor) continue;
        // Eigenvector as a (signal x idler) amplitude matrix.
        Eigen::Map<const Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            phi(solver.eigenvectors().col(j).data(), dim_s, dim_i);
        for (int k = 0; k < dim_b; ++k) {
            const double p_k = bath(k);
            if (p_k < kBathWeightFloor) continue;
            // Columns of the unitary hitting bath level |k>.
            for (int s_in = 0; s_in < dim_s; ++s_in)
                slice.col(s_in) =
                    splitter.col(static_cast<Eigen::Index>(s_in) * dim_b + k);
            const Eigen::MatrixXcd mixed = slice * phi;  // (return, leak) x idler
            // Regroup as ((return, idler) x leak) so tracing the leak mode
            // is a single rank-k update.
            for (int r = 0; r < dim_r; ++r)
                for (int b = 0; b < dim_b; ++b)
                    amplitude.col(b).segment(
                        static_cast<Eigen::Index>(r) * dim_i, dim_i) =
                        mixed.row(static_cast<Eigen::Index>(r) * dim_b + b)
                            .transpose();
            rho.noalias() += (weight * p_k) * (amplitude * amplitude.adjoint());
        }
    }

    const double kept = rho.trace().real();
    const double deficit = 1.0 - (1.0 - input.truncation_deficit()) * kept;
    return FockDensityMatrix({dim_r, dim_i}, std::move(rho), deficit,
                             deficit_threshold);
}

double helstrom_error(const FockDensityMatrix& rho0,
                      const FockDensityMatrix& rho1) {
    if (rho0.cutoffs() != rho1.cutoffs())
        throw DimensionMismatch("states must share the same mode cutoffs");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        rho1.matrix() - rho0.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("Helstrom eigendecomposition failed");
    double gain = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i) > 0.0) gain += solver.eigenvalues()(i);
    return std::clamp(0.5 * (1.0 - gain), 0.0, 0.5);
}

double q_s_oracle(const FockDensityMatrix& rho0, const FockDensityMatrix& rho1,
                  double s) {
    if (rho0.cutoffs() != rho1.cutoffs())
        throw DimensionMismatch("states must share the same mode cutoffs");
    if (!(s >= 0.0 && s <= 1.0)) throw SOutOfRange("s must lie in [0, 1]");
    const Eigen::MatrixXcd left = hermitian_power(rho0.matrix(), s);
    const Eigen::MatrixXcd right = hermitian_power(rho1.matrix(), 1.0 - s);
    // tr(AB) = sum_ij A_ij B_ji for Hermitian A, B.
    return left.cwiseProduct(right.transpose()).sum().real();
}

int thermal_cutoff(double mean_photons, double tail_mass) {
    if (!(tail_mass > 0.0 && tail_mass < 1.0))
        throw InvalidParameter("tail mass must lie in (0, 1)");
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons))
        throw InvalidParameter("mean photon number must be >= 0 and finite");
    if (mean_photons == 0.0) return 2;
    const double lam = mean_photons / (mean_photons + 1.0);
    int cutoff = std::max(
        2, static_cast<int>(std::ceil(std::log(tail_mass) / std::log(lam))));
    while (std::pow(lam, cutoff) > tail_mass) ++cutoff;
    return cutoff;
}

QuadratureMoments quadrature_moments(const FockDensityMatrix& state) {
    const std::vector<int>& cuts = state.cutoffs();
    const int modes = static_cast<int>(cuts.size());

    // Embedded q and p for each mode: q = (a + a+)/2, p = (a - a+)/(2i).
    std::vector<Eigen::MatrixXcd> quadratures;
    quadratures.reserve(2 * modes);
    for (int m = 0; m < modes; ++m) {
        Eigen::MatrixXd embedded = Eigen::MatrixXd::Identity(1, 1);
        for (int k = 0; k < modes; ++k) {
            const Eigen::MatrixXd factor =
                (k == m) ? annihilation(cuts[k])
                         : Eigen::MatrixXd::Identity(cuts[k], cuts[k]);
            embedded = kron(embedded, factor);
        }
        const Eigen::MatrixXd sym = embedded + embedded.transpose();
        const Eigen::MatrixXd antisym = embedded - embedded.transpose();
        quadratures.push_back((0.5 * sym).cast<complexd>());
        quadratures.push_back(complexd(0.0, -0.5) * antisym.cast<complexd>());
    }

    const int n = 2 * modes;
    Eigen::VectorXd mean(n);
    std::vector<Eigen::MatrixXcd> rho_r(n);
    for (int i = 0; i < n; ++i) {
        rho_r[i] = state.matrix() * quadratures[i];
        mean(i) = rho_r[i].trace().real();
    }
    Eigen::MatrixXd cov(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            // tr(rho (Ri Rj + Rj Ri))/2 via tr(AB) = sum A_ij B_ji.
            const double second =
                0.5 * (rho_r[i].cwiseProduct(
                                   Eigen::MatrixXcd(quadratures[j].transpose()))
                           .sum()
                           .real() +
                       rho_r[j].cwiseProduct(
                                   Eigen::MatrixXcd(quadratures[i].transpose()))
                           .sum()
                           .real());
            cov(i, j) = cov(j, i) = second - mean(i) * mean(j);
        }
    }
    return QuadratureMoments{std::move(mean), std::move(cov)};
}

OracleScenario build_oracle_scenario(const ScenarioParams& params) {
    const int tmsv_cut = thermal_cutoff(params.n_s, 1e-9);
    const double brightest =
        std::max({params.n_s, params.n_b / (1.0 - params.kappa),
                  params.kappa * params.n_s + params.n_b});
    const int bath_cut = thermal_cutoff(brightest, 1e-8);
    const FockDensityMatrix tmsv = build_tmsv_fock(params.n_s, tmsv_cut);
    FockDensityMatrix rho0 =
        apply_target_channel(tmsv, params, Hypothesis::TargetAbsent, bath_cut);
    FockDensityMatrix rho1 =
        apply_target_channel(tmsv, params, Hypothesis::TargetPresent, bath_cut);
    return OracleScenario{std::move(rho0), std::move(rho1), tmsv_cut, bath_cut};
}

}  // namespace qillum
