// oracle.hpp: Independent brute-force references for the reduced dynamics
//
// None of these reuse the normal-mode propagator machinery: they work with the
// full site-basis Hamiltonian (A1, A2 and both baths) directly.

#pragma once

#include <cstddef>

#include "twobath/core.hpp"
#include "twobath/wigner.hpp"

namespace twobath::oracle {

// Covariance and means of all 2 + 2K modes. Mode order: A1, A2, bath-1 modes,
// bath-2 modes; quadratures interleaved (X_m, P_m) per mode in the
// dimensionless convention X = (a + a^dag)/sqrt2, P = (a - a^dag)/(i sqrt2).
struct FullSystemCovariance {
    Eigen::MatrixXd cov;
    Eigen::VectorXd mean;
    double omega{1.0};

    // Leading A1/A2 block rescaled to x = X/sqrt(omega), p = sqrt(omega) P.
    GaussianState reduce() const;
};

// Site-basis exchange matrix M of H = sum a_m^dag M_mn a_n.
Eigen::MatrixXd site_hamiltonian(const SystemParams& params, const DiscretizedBath& bath1,
                                 const DiscretizedBath& bath2);

// Factorized initial state (coherent A modes, thermal baths) evolved by the
// real symplectic matrix exp(J H t) of the full quadratic Hamiltonian.
FullSystemCovariance full_gaussian_propagate(const SystemParams& params,
                                             const DiscretizedBath& bath1,
                                             const DiscretizedBath& bath2,
                                             const InitialAmplitudes& init, double t);

struct FockResult {
    GaussianState state;
    double leakage{0.0};  // initial probability above the excitation cutoff
    std::size_t dimension{0};
};

// Truncated number-basis evolution of A1, A2 and one mode per bath. The basis
// keeps every Fock state with at most `cutoff` quanta in total; the
// rotating-wave Hamiltonian conserves that number, so the only error is the
// initial weight above the cutoff. Throws std::runtime_error when that weight
// exceeds leakage_gate.
FockResult fock_evolve(const SystemParams& params, const DiscretizedBath& bath1,
                       const DiscretizedBath& bath2, const InitialAmplitudes& init,
                       std::size_t cutoff, double t, double leakage_gate = 1e-8);

// Thermal position kernel of H12 = omega (n1 + n2) + lambda (a1^dag a2 + h.c.)
// at temperature T, built from two Mehler kernels in normal coordinates.
double gibbs_kernel(const SystemParams& params, double T, const KernelPoint& kp);

}  // namespace twobath::oracle
