// dynamics_ww.hpp: Weisskopf-Wigner (pole approximation) propagators
//
//   u_i(t)  = exp[-kappa_i t - i (Omega_i + dOmega_i) t]
//   v_ik(t) = -i lambda_k / (kappa_i + i (Omega_i + dOmega_i - w_k))
//             * { exp(-i w_k t) - exp[-kappa_i t - i (Omega_i + dOmega_i) t] }
//
// kappa_i and dOmega_i always come from the continuum closed form of the bath
// spectrum (damping_and_shift), never from discrete sums.

#pragma once

#include "twobath/bath.hpp"
#include "twobath/core.hpp"

namespace twobath {

// mode is 1 or 2.
cplx ww_u(int mode, double t, const SystemParams& params, const DampingShift& damping);

cplx ww_v(int mode, Eigen::Index k, double t, const SystemParams& params,
          const DiscretizedBath& bath, const DampingShift& damping);

// spectrum supplies J(w) for damping_and_shift; grid supplies the discrete modes.
PropagatorSet ww_propagator_set(const SystemParams& params, const BathSpec& spectrum,
                                const DiscretizedBath& grid, double t);

}  // namespace twobath
