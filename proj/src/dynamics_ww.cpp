#include "twobath/dynamics_ww.hpp"

#include <cmath>
#include <stdexcept>

namespace twobath {

namespace {

constexpr cplx I{0.0, 1.0};

cplx pole_factor(int mode, double t, const SystemParams& params, const DampingShift& d)
{
    const double freq = params.normal_mode_frequency(mode) + d.delta_omega;
    return std::exp(cplx(-d.kappa * t, -freq * t));
}

}  // namespace

cplx ww_u(int mode, double t, const SystemParams& params, const DampingShift& damping)
{
    if (!(t >= 0.0)) throw std::invalid_argument("ww_u: t must be >= 0");
    return pole_factor(mode, t, params, damping);
}

cplx ww_v(int mode, Eigen::Index k, double t, const SystemParams& params,
          const DiscretizedBath& bath, const DampingShift& damping)
{
    if (!(t >= 0.0)) throw std::invalid_argument("ww_v: t must be >= 0");
    if (k < 0 || k >= bath.size()) throw std::out_of_range("ww_v: bath mode index");
    const double wk = bath.frequencies(k);
    const double detuning = params.normal_mode_frequency(mode) + damping.delta_omega - wk;
    const cplx denom(damping.kappa, detuning);
    return -I * bath.couplings(k) / denom *
           (std::polar(1.0, -wk * t) - pole_factor(mode, t, params, damping));
}

PropagatorSet ww_propagator_set(const SystemParams& params, const BathSpec& spectrum,
                                const DiscretizedBath& grid, double t)
{
    PropagatorSet p;
    p.t = t;
    for (int mode : {1, 2}) {
        const auto i = static_cast<std::size_t>(mode - 1);
        const DampingShift d = damping_and_shift(spectrum, params.normal_mode_frequency(mode));
        p.u[i] = ww_u(mode, t, params, d);
        p.v[i].resize(grid.size());
        for (Eigen::Index k = 0; k < grid.size(); ++k) p.v[i](k) = ww_v(mode, k, t, params, grid, d);
    }
    return p;
}

}  // namespace twobath
