// bath.hpp: Thermal occupations, bath discretization, damping and Lamb shift

#pragma once

#include <cstddef>

#include "twobath/core.hpp"

namespace twobath {

// Mean thermal occupation 1/(exp(omega/T) - 1). Exactly 0 at T = 0.
double planck_occupation(double omega, double temperature);

// Occupation of every mode of a discretized bath at the bath temperature.
Eigen::VectorXd occupations(const DiscretizedBath& bath);

// Midpoint grid with K cells on [omega_min, omega_max]; lambda_k = sqrt(J(omega_k) * Delta).
DiscretizedBath discretize_bath(const BathSpec& spec, std::size_t K);

struct DampingShift {
    double kappa{0.0};        // amplitude damping rate, >= 0
    double delta_omega{0.0};  // frequency shift
};

// Continuum damping and shift of a mode at frequency Omega:
//   kappa = pi J(Omega),  delta_omega = PV int J(w) / (Omega - w) dw.
// For the flat band this is J0 * ln((Omega - omega_min) / (omega_max - Omega)).
// Omega must lie strictly inside the support.
DampingShift damping_and_shift(const BathSpec& spec, double Omega);

}  // namespace twobath
