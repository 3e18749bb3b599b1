#include "twobath/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twobath {

double planck_occupation(double omega, double temperature)
{
    if (!(omega > 0.0)) throw std::invalid_argument("planck_occupation: omega must be > 0");
    if (!(temperature >= 0.0))
        throw std::invalid_argument("planck_occupation: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

Eigen::VectorXd occupations(const DiscretizedBath& bath)
{
    Eigen::VectorXd n(bath.size());
    for (Eigen::Index k = 0; k < bath.size(); ++k)
        n(k) = planck_occupation(bath.frequencies(k), bath.temperature);
    return n;
}

DiscretizedBath discretize_bath(const BathSpec& spec, std::size_t K)
{
    if (K == 0) throw std::invalid_argument("discretize_bath: need at least one mode");
    if (!(spec.omega_min >= 0.0) || !(spec.omega_max > spec.omega_min))
        throw std::invalid_argument("discretize_bath: invalid support");

    const auto n = static_cast<Eigen::Index>(K);
    const double delta = spec.bandwidth() / static_cast<double>(K);
    DiscretizedBath out;
    out.temperature = spec.temperature;
    out.frequencies.resize(n);
    out.couplings.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double w = spec.omega_min + (static_cast<double>(k) + 0.5) * delta;
        out.frequencies(k) = w;
        out.couplings(k) = std::sqrt(spec.spectral_density(w) * delta);
    }
    return out;
}

DampingShift damping_and_shift(const BathSpec& spec, double Omega)
{
    if (!spec.contains(Omega))
        throw std::domain_error("damping_and_shift: Omega must lie strictly inside the bath support");
    DampingShift ds;
    ds.kappa = std::numbers::pi * spec.spectral_density(Omega);
    ds.delta_omega = spec.J0 * std::log((Omega - spec.omega_min) / (spec.omega_max - Omega));
    return ds;
}

}  // namespace twobath
