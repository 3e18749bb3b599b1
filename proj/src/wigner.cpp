#include "twobath/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

#include "twobath/covariance.hpp"
#include "twobath/quadrature.hpp"

namespace twobath {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

GaussianWigner::GaussianWigner(const GaussianState& state) : mean_(state.mean)
{
    const Eigen::Matrix4d& q = state.cov.matrix();
    Eigen::LLT<Eigen::Matrix4d> llt(q);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("gaussian_wigner: covariance is not positive definite");
    const double diag_min = llt.matrixL().toDenseMatrix().diagonal().minCoeff();
    if (!(diag_min > 0.0)) throw std::domain_error("gaussian_wigner: singular covariance");
    inverse_ = llt.solve(Eigen::Matrix4d::Identity());
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    log_norm_ = -std::log(4.0 * pi * pi) - 0.5 * log_det;
}

double GaussianWigner::log_value(const Eigen::Vector4d& xi) const
{
    const Eigen::Vector4d d = xi - mean_;
    return log_norm_ - 0.5 * d.dot(inverse_ * d);
}

double gaussian_wigner(const GaussianState& state, const PhasePoint& pt)
{
    return GaussianWigner(state)(pt);
}

GaussianState equilibrium_state(const SystemParams& params, double T1, double T2)
{
    return GaussianState{equilibrium_covariance(params, T1, T2).cov, Eigen::Vector4d::Zero()};
}

double equilibrium_wigner_closed_form(const SystemParams& params, double T1, double T2,
                                      const PhasePoint& pt)
{
    if (!(T1 >= 0.0) || !(T2 >= 0.0))
        throw std::invalid_argument("equilibrium_wigner_closed_form: temperatures must be >= 0");
    const double inf = std::numeric_limits<double>::infinity();
    const double y1 = T1 > 0.0 ? params.omega1() / T1 : inf;
    const double y2 = T2 > 0.0 ? params.omega2() / T2 : inf;

    double pref, quad, cross;
    if (std::max(y1, y2) <= 50.0) {
        const double e1 = std::exp(y1), e2 = std::exp(y2);
        const double den = (e1 + 1.0) * (e2 + 1.0);
        pref = std::expm1(y1) * std::expm1(y2) / (pi * pi * den);
        quad = std::expm1(y1 + y2) / den;
        cross = 2.0 * (e2 - e1) / den;
    }
    else {
        // Same ratios with numerator and denominator scaled by exp(-y1 - y2).
        const double u1 = std::exp(-y1), u2 = std::exp(-y2);
        const double den = (1.0 + u1) * (1.0 + u2);
        pref = (1.0 - u1) * (1.0 - u2) / (pi * pi * den);
        quad = (1.0 - u1 * u2) / den;
        cross = 2.0 * (u1 - u2) / den;
    }
    const double w = params.omega;
    const double r2 = w * pt.x1 * pt.x1 + pt.p1 * pt.p1 / w + w * pt.x2 * pt.x2 + pt.p2 * pt.p2 / w;
    const double c2 = w * pt.x1 * pt.x2 + pt.p1 * pt.p2 / w;
    return pref * std::exp(-quad * r2 + cross * c2);
}

double equilibrium_kernel(const SystemParams& params, double T1, double T2, const KernelPoint& kp)
{
    if (!(T1 > 0.0) || !(T2 > 0.0))
        throw std::domain_error(
            "equilibrium_kernel: temperatures must be > 0 (coth diverges at T = 0; use the "
            "ground-state kernel limit)");
    const double y1 = params.omega1() / T1, y2 = params.omega2() / T2;
    const double w = params.omega;
    const double coth1 = 1.0 / std::tanh(y1), coth2 = 1.0 / std::tanh(y2);
    const double csch1 = 1.0 / std::sinh(y1), csch2 = 1.0 / std::sinh(y2);
    const double pref =
        w / (pi * std::sqrt(1.0 / std::tanh(0.5 * y1) * (1.0 / std::tanh(0.5 * y2))));

    const double sq = kp.x1 * kp.x1 + kp.x2 * kp.x2 + kp.x1p * kp.x1p + kp.x2p * kp.x2p;
    const double same = kp.x1 * kp.x1p + kp.x2 * kp.x2p;
    const double mix = kp.x1 * kp.x2 + kp.x1p * kp.x2p;
    const double swap = kp.x1p * kp.x2 + kp.x1 * kp.x2p;
    const double expo = -0.25 * w * (coth1 + coth2) * sq + 0.5 * w * (csch1 + csch2) * same -
                        0.5 * w * (coth1 - coth2) * mix + 0.5 * w * (csch1 - csch2) * swap;
    return pref * std::exp(expo);
}

cplx wigner_to_kernel(const GaussianState& state, const KernelPoint& kp, const QuadratureSpec& spec)
{
    if (spec.nodes < 64)
        throw std::invalid_argument("wigner_to_kernel: at least 64 quadrature nodes per axis required");
    const GaussHermiteRule rule = gauss_hermite(spec.nodes);
    // Outermost node sits at sqrt(2) z_max standard deviations; the Gaussian mass beyond
    // it must not exceed the mass beyond coverage_sigma.
    const double z_max = rule.nodes.back();
    const double tail = std::erfc(z_max);
    if (tail > std::erfc(spec.coverage_sigma / std::numbers::sqrt2))
        throw std::invalid_argument("wigner_to_kernel: quadrature does not cover the momentum tails");

    const Eigen::Matrix4d& q = state.cov.matrix();
    Eigen::Matrix2d sp;
    sp << q(P1, P1), q(P1, P2), q(P2, P1), q(P2, P2);
    Eigen::LLT<Eigen::Matrix2d> llt(sp);
    if (llt.info() != Eigen::Success)
        throw std::domain_error("wigner_to_kernel: momentum covariance is not positive definite");
    const Eigen::Matrix2d L = llt.matrixL();
    const Eigen::Vector2d centre(state.mean(P1), state.mean(P2));
    const double jac = 2.0 * L(0, 0) * L(1, 1);

    const GaussianWigner W(state);
    const double q1 = 0.5 * (kp.x1 + kp.x1p), q2 = 0.5 * (kp.x2 + kp.x2p);
    const double u1 = kp.x1 - kp.x1p, u2 = kp.x2 - kp.x2p;

    cplx sum{0.0, 0.0};
    const std::size_t n = rule.nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Eigen::Vector2d z(rule.nodes[i], rule.nodes[j]);
            const Eigen::Vector2d p = centre + std::numbers::sqrt2 * (L * z);
            const double logw = W.log_value(Eigen::Vector4d(q1, p(0), q2, p(1))) + z.squaredNorm();
            const double weight = rule.weights[i] * rule.weights[j] * std::exp(logw);
            sum += weight * std::polar(1.0, -(p(0) * u1 + p(1) * u2));
        }
    }
    return jac * sum;
}

RouteComparison compare_equilibrium_wigner_routes(const SystemParams& params, double T1,
                                                  double T2, std::size_t per_axis,
                                                  double extent_sigma)
{
    if (per_axis < 2) throw std::invalid_argument("compare_equilibrium_wigner_routes: per_axis < 2");
    const GaussianState state = equilibrium_state(params, T1, T2);
    const GaussianWigner W(state);
    Eigen::Vector4d sigma = state.cov.matrix().diagonal().cwiseSqrt() * extent_sigma;

    RouteComparison out;
    out.peak = W.peak();
    std::vector<double> ax(per_axis);
    for (std::size_t i = 0; i < per_axis; ++i)
        ax[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(per_axis - 1);
    for (double a : ax)
        for (double b : ax)
            for (double c : ax)
                for (double d : ax) {
                    const PhasePoint pt{a * sigma(0), b * sigma(1), c * sigma(2), d * sigma(3)};
                    const double diff = std::abs(W(pt) - equilibrium_wigner_closed_form(params, T1, T2, pt));
                    if (diff > out.max_abs_diff) {
                        out.max_abs_diff = diff;
                        out.worst = pt;
                    }
                    ++out.points;
                }
    out.max_rel_diff = out.max_abs_diff / out.peak;
    return out;
}

}  // namespace twobath
