// dynamics_exact.hpp: Exact amplitude propagation for a finite discretized bath
//
// In the normal coordinates (a1 +- a2)/sqrt2 and (b1k +- b2k)/sqrt2 the
// rotating-wave Hamiltonian splits into two independent single-particle
// problems, one per normal mode, each an arrowhead matrix
//
//     h = [ Omega_i   lambda^T ]
//         [ lambda    diag(w_k)].
//
// The propagators are u_i(t) = c_0(t), v_ik(t) = c_k(t) with c(t) = exp(-i h t) e_0.

#pragma once

#include <utility>

#include "twobath/arrowhead.hpp"
#include "twobath/core.hpp"

namespace twobath {

class SingleParticleMatrix {
public:
    SingleParticleMatrix(double system_frequency, Eigen::VectorXd bath_frequencies,
                         Eigen::VectorXd couplings);

    double system_frequency() const noexcept { return apex_; }
    const Eigen::VectorXd& bath_frequencies() const noexcept { return diag_; }
    const Eigen::VectorXd& couplings() const noexcept { return border_; }
    Eigen::Index dimension() const noexcept { return diag_.size() + 1; }

    Eigen::MatrixXd dense() const;

private:
    double apex_;
    Eigen::VectorXd diag_;
    Eigen::VectorXd border_;
};

// mode is 1 (Omega1 = omega + lambda) or 2 (Omega2 = omega - lambda).
SingleParticleMatrix build_normal_mode_matrix(const SystemParams& params,
                                              const DiscretizedBath& bath, int mode);

// Diagonalizes h once; evaluations at any t are then O(K^2) (O(K) for the return amplitude).
class NormalModeEvolution {
public:
    explicit NormalModeEvolution(const SingleParticleMatrix& h);

    const Eigen::VectorXd& eigenvalues() const noexcept { return eig_.values; }
    const Eigen::MatrixXd& eigenvectors() const noexcept { return eig_.vectors; }

    // exp(-i h t) e_0
    Eigen::VectorXcd column(double t) const;
    // exp(-i h t) c
    Eigen::VectorXcd apply(const Eigen::VectorXcd& c, double t) const;
    // <e_0| exp(-i h t) |e_0>
    cplx return_amplitude(double t) const;

private:
    ArrowheadEigensystem eig_;
    Eigen::VectorXd weights_;  // apex components of the eigenvectors
};

// First column of exp(-i h t). Requires t >= 0.
Eigen::VectorXcd propagate(const SingleParticleMatrix& h, double t);

// Both normal modes for a shared bath grid.
class ExactDynamics {
public:
    // Throws std::invalid_argument if the two baths do not share a grid.
    ExactDynamics(const SystemParams& params, const DiscretizedBath& bath1,
                  const DiscretizedBath& bath2);

    PropagatorSet at(double t) const;
    // mode is 1 or 2.
    const NormalModeEvolution& mode(int i) const;

private:
    NormalModeEvolution modes_[2];
};

PropagatorSet propagator_set(const SystemParams& params, const DiscretizedBath& bath1,
                             const DiscretizedBath& bath2, double t);

// Oscillator amplitudes alpha_1(t), alpha_2(t) for given initial amplitudes and
// initial bath amplitudes beta_1k, beta_2k.
std::pair<cplx, cplx> amplitudes_to_oscillators(const PropagatorSet& p,
                                                const InitialAmplitudes& init,
                                                const Eigen::VectorXcd& beta1,
                                                const Eigen::VectorXcd& beta2);

}  // namespace twobath
