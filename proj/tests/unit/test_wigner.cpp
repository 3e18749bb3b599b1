#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "twobath/covariance.hpp"
#include "twobath/quadrature.hpp"
#include "twobath/wigner.hpp"

using namespace twobath;
using namespace twobath::testing;

namespace {

constexpr double pi = std::numbers::pi;

// Single-oscillator thermal kernel at frequency w, unit mass.
double mehler(double w, double T, double x, double xp)
{
    const double y = w / T;
    return std::sqrt(w * std::tanh(0.5 * y) / pi) *
           std::exp(-w * ((x * x + xp * xp) * std::cosh(y) - 2.0 * x * xp) / (2.0 * std::sinh(y)));
}

}  // namespace

TEST_CASE("vacuum Wigner value at the origin")
{
    const GaussianState vac{CovarianceMatrix::vacuum(1.0), Eigen::Vector4d::Zero()};
    CHECK(gaussian_wigner(vac, PhasePoint{}) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-15));
    const GaussianWigner W(vac);
    CHECK(W.peak() == doctest::Approx(1.0 / (pi * pi)));
    CHECK(W(PhasePoint{1.0, 0.0, 0.0, 0.0}) == doctest::Approx(std::exp(-1.0) / (pi * pi)));
}

TEST_CASE("Gaussian Wigner function is normalized with the right moments")
{
    const auto eq = equilibrium_state(SystemParams{1.0, 0.1}, 1.0, 2.0);
    GaussianState s = eq;
    s.mean << 0.3, -0.2, 0.1, 0.4;
    const GaussianWigner W(s);
    // Nodes mapped through the Cholesky factor; exp(z^2) undoes the Hermite weight.
    const auto r = gauss_hermite(10);
    const Eigen::Matrix4d L = s.cov.matrix().llt().matrixL();
    const double jac = 4.0 * L.diagonal().prod();
    double direct = 0.0, qx1x2 = 0.0;
    for (std::size_t a = 0; a < 10; ++a)
        for (std::size_t b = 0; b < 10; ++b)
            for (std::size_t c = 0; c < 10; ++c)
                for (std::size_t d = 0; d < 10; ++d) {
                    const Eigen::Vector4d z(r.nodes[a], r.nodes[b], r.nodes[c], r.nodes[d]);
                    const Eigen::Vector4d xi = s.mean + std::numbers::sqrt2 * (L * z);
                    const double w = r.weights[a] * r.weights[b] * r.weights[c] * r.weights[d] *
                                     std::exp(z.squaredNorm()) * W(xi) * jac;
                    direct += w;
                    qx1x2 += w * (xi(X1) - s.mean(X1)) * (xi(X2) - s.mean(X2));
                }
    CHECK(direct == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qx1x2 == doctest::Approx(s.cov(X1, X2)).epsilon(1e-12));
}

TEST_CASE("closed-form equilibrium Wigner agrees with the covariance route at equal temperature")
{
    for (double lambda : {0.0, 0.1, 0.4})
        for (double T : {0.0, 0.01, 0.3, 1.0, 7.0}) {
            const auto cmp = compare_equilibrium_wigner_routes(SystemParams{1.0, lambda}, T, T, 7);
            CHECK(cmp.points == 7u * 7u * 7u * 7u);
            CHECK(cmp.max_rel_diff < 1e-12);
        }
}

TEST_CASE("closed-form equilibrium Wigner departs from the covariance route at unequal temperatures")
{
    const auto cmp = compare_equilibrium_wigner_routes(SystemParams{1.0, 0.1}, 1.0, 2.0);
    CHECK(cmp.max_rel_diff > 1e-3);
    CHECK(cmp.peak > 0.0);
    // Both routes still agree at the origin up to the normalizations.
    const double closed = equilibrium_wigner_closed_form(SystemParams{1.0, 0.1}, 1.0, 2.0, PhasePoint{});
    CHECK(closed > 0.0);
    CHECK_THROWS_AS(equilibrium_wigner_closed_form(SystemParams{1.0, 0.1}, -1.0, 2.0, PhasePoint{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(compare_equilibrium_wigner_routes(SystemParams{1.0, 0.1}, 1.0, 1.0, 1),
                    std::invalid_argument);
}

TEST_CASE("equilibrium kernel")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const SystemParams p{1.0, 0.2};

    SUBCASE("hermiticity")
    {
        for (int i = 0; i < 20; ++i) {
            const KernelPoint kp{u(rng), u(rng), u(rng), u(rng)};
            CHECK(equilibrium_kernel(p, 0.7, 1.9, kp) ==
                  doctest::Approx(equilibrium_kernel(p, 0.7, 1.9, kp.swapped())).epsilon(1e-14));
        }
    }
    SUBCASE("factorizes when uncoupled")
    {
        const SystemParams free{1.3, 0.0};
        for (int i = 0; i < 10; ++i) {
            const KernelPoint kp{u(rng), u(rng), u(rng), u(rng)};
            const double expect = mehler(1.3, 0.8, kp.x1, kp.x1p) * mehler(1.3, 0.8, kp.x2, kp.x2p);
            CHECK(equilibrium_kernel(free, 0.8, 0.8, kp) == doctest::Approx(expect).epsilon(1e-13));
        }
    }
    SUBCASE("unit trace")
    {
        const auto r = gauss_hermite(40);
        double tr = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i)
            for (std::size_t j = 0; j < r.nodes.size(); ++j) {
                const double x1 = 2.0 * r.nodes[i], x2 = 2.0 * r.nodes[j];
                tr += r.weights[i] * r.weights[j] * std::exp(r.nodes[i] * r.nodes[i] + r.nodes[j] * r.nodes[j]) *
                      4.0 * equilibrium_kernel(p, 0.9, 0.9, KernelPoint{x1, x2, x1, x2});
            }
        CHECK(tr == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("zero temperature is rejected")
    {
        CHECK_THROWS_AS(equilibrium_kernel(p, 0.0, 1.0, KernelPoint{}), std::domain_error);
        CHECK_THROWS_AS(equilibrium_kernel(p, 1.0, 0.0, KernelPoint{}), std::domain_error);
    }
}

TEST_CASE("numeric inverse Weyl transform")
{
    const SystemParams p{1.0, 0.25};
    const auto s = equilibrium_state(p, 1.3, 1.3);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const KernelPoint kp{u(rng), u(rng), u(rng), u(rng)};
        const cplx num = wigner_to_kernel(s, kp);
        CHECK(std::abs(num - equilibrium_kernel(p, 1.3, 1.3, kp)) < 1e-10);
    }

    // Momentum-displaced vacuum: rho(x', x) = psi(x') psi*(x), psi ~ exp(-w x^2/2 + i p0 x).
    const double w = 1.0, p01 = 0.7, p02 = -0.4;
    GaussianState boosted{CovarianceMatrix::vacuum(w), Eigen::Vector4d(0.0, p01, 0.0, p02)};
    const KernelPoint kp{0.3, -0.5, -0.2, 0.6};
    const cplx expect = (w / pi) *
                        std::exp(-0.5 * w * (kp.x1p * kp.x1p + kp.x2p * kp.x2p + kp.x1 * kp.x1 + kp.x2 * kp.x2)) *
                        std::polar(1.0, p01 * (kp.x1p - kp.x1) + p02 * (kp.x2p - kp.x2));
    CHECK(std::abs(wigner_to_kernel(boosted, kp) - expect) < 1e-12);

    CHECK_THROWS_AS(wigner_to_kernel(s, kp, QuadratureSpec{32, 6.0}), std::invalid_argument);
    CHECK_THROWS_AS(wigner_to_kernel(s, kp, QuadratureSpec{64, 20.0}), std::invalid_argument);
}
