#include "twobath/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "twobath/bath.hpp"

namespace twobath {

CovarianceMatrix CovarianceMatrix::checked(const Eigen::Matrix4d& q)
{
    if (!q.allFinite()) throw std::domain_error("covariance matrix has non-finite entries");
    const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, q.cwiseAbs().maxCoeff()))
        throw std::domain_error("covariance matrix is not symmetric");
    if (!physicality(q)) throw std::domain_error("covariance matrix violates the uncertainty relation");
    return CovarianceMatrix(q);
}

CovarianceMatrix CovarianceMatrix::vacuum(double omega)
{
    if (!(omega > 0.0)) throw std::invalid_argument("vacuum: omega must be > 0");
    Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
    q(X1, X1) = q(X2, X2) = 0.5 / omega;
    q(P1, P1) = q(P2, P2) = 0.5 * omega;
    return CovarianceMatrix(q);
}

CovarianceMatrix covariance_from_modes(const PropagatorSet& p, const Eigen::VectorXd& occ1,
                                       const Eigen::VectorXd& occ2, double omega)
{
    const Eigen::Index K = p.v[0].size();
    if (p.v[1].size() != K || occ1.size() != K || occ2.size() != K)
        throw std::invalid_argument("covariance_from_modes: length mismatch");
    if (!(omega > 0.0)) throw std::invalid_argument("covariance_from_modes: omega must be > 0");
    if (!occ1.allFinite() || !occ2.allFinite() || !p.v[0].allFinite() || !p.v[1].allFinite())
        throw std::domain_error("covariance_from_modes: non-finite input");

    double s11 = 0.0, s22 = 0.0, s12 = 0.0, sxp = 0.0;
    for (Eigen::Index k = 0; k < K; ++k) {
        const cplx v1 = p.v[0](k), v2 = p.v[1](k);
        const double n1 = occ1(k), n2 = occ2(k);
        const double plus = std::norm(v1 + v2), minus = std::norm(v1 - v2);
        s11 += n1 * plus + n2 * minus;
        s22 += n1 * minus + n2 * plus;
        s12 += (std::norm(v1) - std::norm(v2)) * (n1 + n2);
        // (v1 v2* - v1* v2) / i = 2 Im(v1 v2*)
        sxp += 2.0 * std::imag(v1 * std::conj(v2)) * (n1 - n2);
    }
    const double w11 = 0.5 + 0.25 * s11;  // omega Q_x1x1
    const double w22 = 0.5 + 0.25 * s22;  // omega Q_x2x2
    const double w12 = 0.25 * s12;        // omega Q_x1x2
    const double x1p2 = 0.25 * sxp;

    Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
    q(X1, X1) = w11 / omega;
    q(P1, P1) = w11 * omega;
    q(X2, X2) = w22 / omega;
    q(P2, P2) = w22 * omega;
    q(X1, X2) = q(X2, X1) = w12 / omega;
    q(P1, P2) = q(P2, P1) = w12 * omega;
    q(X1, P2) = q(P2, X1) = x1p2;
    q(X2, P1) = q(P1, X2) = -x1p2;
    return CovarianceMatrix::checked(q);
}

Eigen::Vector4d mean_from_modes(const PropagatorSet& p, const InitialAmplitudes& init,
                                double omega)
{
    const cplx s = 0.5 * (p.u[0] + p.u[1]);
    const cplx d = 0.5 * (p.u[0] - p.u[1]);
    const cplx a1 = init.alpha1 * s + init.alpha2 * d;
    const cplx a2 = init.alpha1 * d + init.alpha2 * s;
    const double xs = std::sqrt(2.0 / omega), ps = std::sqrt(2.0 * omega);
    return {xs * a1.real(), ps * a1.imag(), xs * a2.real(), ps * a2.imag()};
}

GaussianState reduced_state(const PropagatorSet& p, const InitialAmplitudes& init,
                            const Eigen::VectorXd& occ1, const Eigen::VectorXd& occ2,
                            double omega)
{
    return GaussianState{covariance_from_modes(p, occ1, occ2, omega),
                         mean_from_modes(p, init, omega)};
}

EquilibriumCovariance equilibrium_covariance(const SystemParams& params, double T1, double T2)
{
    if (!(params.omega2() > 0.0) || !(params.omega1() > 0.0))
        throw std::invalid_argument("equilibrium_covariance: normal-mode frequencies must be > 0");
    EquilibriumConstants c;
    const double T[2] = {T1, T2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            c.occupation[i][j] = planck_occupation(params.normal_mode_frequency(i + 1), T[j]);
    const double n1 = c.occupation[0][0] + c.occupation[0][1];
    const double n2 = c.occupation[1][0] + c.occupation[1][1];
    c.a_const = 0.5 + 0.25 * (n1 + n2);
    c.b_const = 0.25 * (n1 - n2);

    const double w = params.omega;
    Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
    q(X1, X1) = q(X2, X2) = c.a_const / w;
    q(P1, P1) = q(P2, P2) = c.a_const * w;
    q(X1, X2) = q(X2, X1) = c.b_const / w;
    q(P1, P2) = q(P2, P1) = c.b_const * w;
    return EquilibriumCovariance{c, CovarianceMatrix::checked(q)};
}

double simon_determinant(const Eigen::Matrix4d& q)
{
    return q(X1, X2) * q(P1, P2) - q(X1, P2) * q(X2, P1);
}

SeparabilityVerdict simon_separability(const CovarianceMatrix& q)
{
    const double det = simon_determinant(q.matrix());
    return SeparabilityVerdict{det, det >= 0.0};
}

double min_uncertainty_eigenvalue(const Eigen::Matrix4d& q)
{
    Eigen::Matrix4cd m = q.cast<cplx>();
    for (Eigen::Index mode = 0; mode < 2; ++mode) {
        m(2 * mode, 2 * mode + 1) += cplx(0.0, 0.5);
        m(2 * mode + 1, 2 * mode) -= cplx(0.0, 0.5);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool physicality(const Eigen::Matrix4d& q, double tol)
{
    return q.allFinite() && min_uncertainty_eigenvalue(q) >= -tol;
}

double purity(const Eigen::Matrix4d& q)
{
    return 1.0 / (4.0 * std::sqrt(q.determinant()));
}

}  // namespace twobath
