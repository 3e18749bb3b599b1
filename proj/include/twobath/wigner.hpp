// wigner.hpp: Two-mode Gaussian Wigner functions and position-space kernels
// of the long-time (intermediate equilibrium) state

#pragma once

#include <cmath>
#include <cstddef>

#include "twobath/core.hpp"

namespace twobath {

struct PhasePoint {
    double x1{0.0}, p1{0.0}, x2{0.0}, p2{0.0};
    Eigen::Vector4d vec() const { return {x1, p1, x2, p2}; }
};

// rho(x1', x2', x1, x2) = <x1', x2'| rho |x1, x2>
struct KernelPoint {
    double x1p{0.0}, x2p{0.0}, x1{0.0}, x2{0.0};
    KernelPoint swapped() const { return {x1, x2, x1p, x2p}; }
};

// W(xi) = exp(-(xi - m)^T Q^{-1} (xi - m) / 2) / (4 pi^2 sqrt(det Q)).
// The covariance is factorized once; throws std::domain_error if it is not
// positive definite.
class GaussianWigner {
public:
    explicit GaussianWigner(const GaussianState& state);

    double operator()(const Eigen::Vector4d& xi) const { return std::exp(log_value(xi)); }
    double operator()(const PhasePoint& pt) const { return (*this)(pt.vec()); }
    double log_value(const Eigen::Vector4d& xi) const;
    double peak() const noexcept { return std::exp(log_norm_); }

private:
    Eigen::Matrix4d inverse_;
    Eigen::Vector4d mean_;
    double log_norm_;
};

double gaussian_wigner(const GaussianState& state, const PhasePoint& pt);

// Zero-mean Gaussian state with the equilibrium covariance.
GaussianState equilibrium_state(const SystemParams& params, double T1, double T2);

// Closed-form equilibrium Wigner function in which normal mode Omega_1 is
// thermalized at T1 and Omega_2 at T2. Agrees with the covariance route only
// for T1 == T2. Temperatures may be 0 (tanh limits).
double equilibrium_wigner_closed_form(const SystemParams& params, double T1, double T2,
                                      const PhasePoint& pt);

// Closed-form equilibrium density kernel in position representation (coth /
// 1/sinh form). Requires T1, T2 > 0; throws std::domain_error otherwise.
double equilibrium_kernel(const SystemParams& params, double T1, double T2, const KernelPoint& kp);

struct QuadratureSpec {
    std::size_t nodes{64};        // Gauss-Hermite nodes per momentum axis, >= 64
    double coverage_sigma{6.0};   // required reach of the outermost node, in std devs
};

// Inverse Weyl transform
//   rho(x', x) = int W((x + x')/2, p) exp(-i p . (x - x')) dp1 dp2
// by tensor-product Gauss-Hermite quadrature scaled to the momentum marginal.
// Throws std::invalid_argument when the rule is too small to cover the momentum
// distribution (tail mass beyond the outermost node above the coverage bound).
cplx wigner_to_kernel(const GaussianState& state, const KernelPoint& kp,
                      const QuadratureSpec& spec = {});

struct RouteComparison {
    double max_abs_diff{0.0};
    double max_rel_diff{0.0};  // relative to the peak value of the covariance route
    double peak{0.0};
    PhasePoint worst{};
    std::size_t points{0};
};

// Compares equilibrium_wigner_closed_form against gaussian_wigner(equilibrium_state)
// on a per_axis^4 lattice spanning +-extent_sigma marginal standard deviations.
RouteComparison compare_equilibrium_wigner_routes(const SystemParams& params, double T1,
                                                  double T2, std::size_t per_axis = 9,
                                                  double extent_sigma = 3.0);

}  // namespace twobath
