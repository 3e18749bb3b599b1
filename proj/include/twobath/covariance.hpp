// covariance.hpp: Reduced covariance of the two oscillators, its long-time
// limit, and checks on Gaussian states

#pragma once

#include <array>

#include "twobath/core.hpp"

namespace twobath {

// Symmetrized second moments from the propagators and the bath occupations
// occ1(k), occ2(k). Only x-x, p-p and the antisymmetric x1p2 = -x2p1 blocks are
// non-zero; omega * Q_x1x1 = Q_p1p1 / omega by construction.
CovarianceMatrix covariance_from_modes(const PropagatorSet& p, const Eigen::VectorXd& occ1,
                                       const Eigen::VectorXd& occ2, double omega);

// First moments (<x1>, <p1>, <x2>, <p2>) evolved from the coherent amplitudes.
Eigen::Vector4d mean_from_modes(const PropagatorSet& p, const InitialAmplitudes& init,
                                double omega);

GaussianState reduced_state(const PropagatorSet& p, const InitialAmplitudes& init,
                            const Eigen::VectorXd& occ1, const Eigen::VectorXd& occ2,
                            double omega);

struct EquilibriumConstants {
    double a_const{0.5};
    double b_const{0.0};
    // occupation[i][j]: Planck occupation at Omega_{i+1} and temperature T_{j+1}.
    std::array<std::array<double, 2>, 2> occupation{};
};

struct EquilibriumCovariance {
    EquilibriumConstants constants;
    CovarianceMatrix cov;
};

// Long-time covariance: blocks A/omega, omega A on the diagonal and
// B/omega, omega B on the x1x2 and p1p2 entries, with
//   A = 1/2 + (n11 + n12 + n21 + n22)/4,   B = (n11 + n12 - n21 - n22)/4.
EquilibriumCovariance equilibrium_covariance(const SystemParams& params, double T1, double T2);

struct SeparabilityVerdict {
    double determinant{0.0};
    // true when the determinant is >= 0. false means "not decided": the
    // condition is only sufficient.
    bool separable_by_simon{false};
};

// det [[Q_x1x2, Q_x1p2], [Q_x2p1, Q_p1p2]]
double simon_determinant(const Eigen::Matrix4d& q);
SeparabilityVerdict simon_separability(const CovarianceMatrix& q);

// Smallest eigenvalue of the Hermitian matrix q + (i/2) J.
double min_uncertainty_eigenvalue(const Eigen::Matrix4d& q);
bool physicality(const Eigen::Matrix4d& q, double tol = 1e-10);
// Tr rho^2 = 1 / (4 sqrt(det q)).
double purity(const Eigen::Matrix4d& q);

}  // namespace twobath
