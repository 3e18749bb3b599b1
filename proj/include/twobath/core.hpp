// core.hpp: Shared domain types for two coupled oscillators, each attached to
// its own bosonic heat bath.
//
// Units: hbar = k_B = 1. All frequencies and temperatures are dimensionless.
// Quadratures of oscillator A_i use the frequency omega of the bare
// oscillators:  x = (a + a^dag)/sqrt(2 omega),  p = sqrt(omega)(a - a^dag)/(i sqrt 2).
// Phase-space vectors are ordered (x1, p1, x2, p2).

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace twobath {

using cplx = std::complex<double>;

struct SystemParams {
    double omega{1.0};   // bare frequency of A1 and A2
    double lambda{0.0};  // A1-A2 exchange coupling

    // Symmetric normal mode (a1 + a2)/sqrt2.
    double omega1() const noexcept { return omega + lambda; }
    // Antisymmetric normal mode (a1 - a2)/sqrt2.
    double omega2() const noexcept { return omega - lambda; }
    // mode is 1 or 2.
    double normal_mode_frequency(int mode) const;
};

// Throws std::invalid_argument unless omega > 0 and |lambda| < omega.
SystemParams make_system(double omega, double lambda);

// Thermal bath with a flat spectral density J(w) = J0 on [omega_min, omega_max].
struct BathSpec {
    double temperature{0.0};
    double J0{0.0};
    double omega_min{0.0};
    double omega_max{0.0};

    double spectral_density(double w) const noexcept
    {
        return (w >= omega_min && w <= omega_max) ? J0 : 0.0;
    }
    double bandwidth() const noexcept { return omega_max - omega_min; }
    bool contains(double w) const noexcept { return w > omega_min && w < omega_max; }
    // Same J(w); temperatures may differ.
    bool same_spectrum(const BathSpec& other) const noexcept
    {
        return J0 == other.J0 && omega_min == other.omega_min && omega_max == other.omega_max;
    }
};

// K discrete bath modes. Coupling phases are absorbed, so couplings are real and >= 0.
struct DiscretizedBath {
    Eigen::VectorXd frequencies;
    Eigen::VectorXd couplings;
    double temperature{0.0};

    Eigen::Index size() const noexcept { return frequencies.size(); }
    bool same_grid(const DiscretizedBath& other) const;
};

// Amplitude propagators of the two normal modes at time t:
// u[i] = <A_i(t)|A_i(0)>-type return amplitude, v[i](k) = amplitude leaked into bath mode k.
struct PropagatorSet {
    double t{0.0};
    std::array<cplx, 2> u{cplx{1.0, 0.0}, cplx{1.0, 0.0}};
    std::array<Eigen::VectorXcd, 2> v;

    // 1 - |u_i|^2 - sum_k |v_ik|^2 for mode index 0 or 1.
    double unitarity_defect(std::size_t i) const;
};

enum Quadrature : Eigen::Index { X1 = 0, P1 = 1, X2 = 2, P2 = 3 };

// Symmetric 4x4 covariance matrix in (x1, p1, x2, p2) order. Construction
// through checked() enforces symmetry and the uncertainty relation
// (std::domain_error otherwise).
class CovarianceMatrix {
public:
    static CovarianceMatrix checked(const Eigen::Matrix4d& q);
    static CovarianceMatrix vacuum(double omega);

    const Eigen::Matrix4d& matrix() const noexcept { return q_; }
    double operator()(Quadrature a, Quadrature b) const noexcept { return q_(a, b); }

private:
    explicit CovarianceMatrix(const Eigen::Matrix4d& q) : q_(q) {}
    Eigen::Matrix4d q_;
};

struct GaussianState {
    CovarianceMatrix cov;
    Eigen::Vector4d mean{Eigen::Vector4d::Zero()};
};

// Coherent amplitudes of A1, A2 at t = 0.
struct InitialAmplitudes {
    cplx alpha1{};
    cplx alpha2{};
};

struct ScenarioValidation {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const noexcept { return errors.empty(); }
};

// Checks the system/bath combination. Warnings flag a strained
// weak-coupling regime (kappa_i / Omega_i > 0.1) but do not invalidate it.
ScenarioValidation validate_scenario(const SystemParams& params, const BathSpec& bath1,
                                     const BathSpec& bath2);

class ScenarioError : public std::invalid_argument {
public:
    ScenarioError(const std::string& what, std::vector<std::string> violations)
        : std::invalid_argument(what), violations_(std::move(violations))
    {
    }
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

// Throws ScenarioError listing every violated precondition; returns the warnings.
std::vector<std::string> require_valid(const SystemParams& params, const BathSpec& bath1,
                                       const BathSpec& bath2);

}  // namespace twobath
