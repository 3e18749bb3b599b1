#include "twobath/dynamics_exact.hpp"

#include <cmath>
#include <stdexcept>

namespace twobath {

SingleParticleMatrix::SingleParticleMatrix(double system_frequency,
                                           Eigen::VectorXd bath_frequencies,
                                           Eigen::VectorXd couplings)
    : apex_(system_frequency), diag_(std::move(bath_frequencies)), border_(std::move(couplings))
{
    if (diag_.size() != border_.size())
        throw std::invalid_argument("SingleParticleMatrix: frequency/coupling size mismatch");
    if (!(apex_ > 0.0) || (diag_.size() > 0 && !(diag_.minCoeff() > 0.0)))
        throw std::invalid_argument("SingleParticleMatrix: diagonal entries must be positive");
}

Eigen::MatrixXd SingleParticleMatrix::dense() const
{
    const Eigen::Index n = dimension();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    h(0, 0) = apex_;
    h.diagonal().tail(n - 1) = diag_;
    h.col(0).tail(n - 1) = border_;
    h.row(0).tail(n - 1) = border_.transpose();
    return h;
}

SingleParticleMatrix build_normal_mode_matrix(const SystemParams& params,
                                              const DiscretizedBath& bath, int mode)
{
    return SingleParticleMatrix(params.normal_mode_frequency(mode), bath.frequencies,
                                bath.couplings);
}

NormalModeEvolution::NormalModeEvolution(const SingleParticleMatrix& h)
    : eig_(arrowhead_eigensystem(h.system_frequency(), h.bath_frequencies(), h.couplings())),
      weights_(eig_.vectors.row(0).transpose())
{
}

Eigen::VectorXcd NormalModeEvolution::column(double t) const
{
    const Eigen::ArrayXd phase = eig_.values.array() * t;
    const Eigen::VectorXd re = (weights_.array() * phase.cos()).matrix();
    const Eigen::VectorXd im = (-weights_.array() * phase.sin()).matrix();
    Eigen::VectorXcd c(eig_.vectors.rows());
    c.real() = eig_.vectors * re;
    c.imag() = eig_.vectors * im;
    return c;
}

Eigen::VectorXcd NormalModeEvolution::apply(const Eigen::VectorXcd& c, double t) const
{
    if (c.size() != eig_.vectors.rows())
        throw std::invalid_argument("NormalModeEvolution::apply: dimension mismatch");
    const Eigen::VectorXd cr = eig_.vectors.transpose() * c.real();
    const Eigen::VectorXd ci = eig_.vectors.transpose() * c.imag();
    Eigen::VectorXd re(cr.size()), im(cr.size());
    for (Eigen::Index j = 0; j < cr.size(); ++j) {
        const cplx z = cplx(cr(j), ci(j)) * std::polar(1.0, -eig_.values(j) * t);
        re(j) = z.real();
        im(j) = z.imag();
    }
    Eigen::VectorXcd out(c.size());
    out.real() = eig_.vectors * re;
    out.imag() = eig_.vectors * im;
    return out;
}

cplx NormalModeEvolution::return_amplitude(double t) const
{
    cplx u{0.0, 0.0};
    for (Eigen::Index j = 0; j < weights_.size(); ++j)
        u += weights_(j) * weights_(j) * std::polar(1.0, -eig_.values(j) * t);
    return u;
}

Eigen::VectorXcd propagate(const SingleParticleMatrix& h, double t)
{
    if (!(t >= 0.0)) throw std::invalid_argument("propagate: t must be >= 0");
    return NormalModeEvolution(h).column(t);
}

namespace {

const DiscretizedBath& checked_grid(const DiscretizedBath& a, const DiscretizedBath& b)
{
    if (!a.same_grid(b))
        throw std::invalid_argument("both baths must share the same discretization grid");
    return a;
}

}  // namespace

ExactDynamics::ExactDynamics(const SystemParams& params, const DiscretizedBath& bath1,
                             const DiscretizedBath& bath2)
    : modes_{NormalModeEvolution(build_normal_mode_matrix(params, checked_grid(bath1, bath2), 1)),
             NormalModeEvolution(build_normal_mode_matrix(params, bath1, 2))}
{
}

const NormalModeEvolution& ExactDynamics::mode(int i) const
{
    if (i != 1 && i != 2) throw std::invalid_argument("normal mode index must be 1 or 2");
    return modes_[i - 1];
}

PropagatorSet ExactDynamics::at(double t) const
{
    if (!(t >= 0.0)) throw std::invalid_argument("ExactDynamics::at: t must be >= 0");
    PropagatorSet p;
    p.t = t;
    for (std::size_t i = 0; i < 2; ++i) {
        const Eigen::VectorXcd c = modes_[i].column(t);
        p.u[i] = c(0);
        p.v[i] = c.tail(c.size() - 1);
    }
    return p;
}

PropagatorSet propagator_set(const SystemParams& params, const DiscretizedBath& bath1,
                             const DiscretizedBath& bath2, double t)
{
    return ExactDynamics(params, bath1, bath2).at(t);
}

std::pair<cplx, cplx> amplitudes_to_oscillators(const PropagatorSet& p,
                                                const InitialAmplitudes& init,
                                                const Eigen::VectorXcd& beta1,
                                                const Eigen::VectorXcd& beta2)
{
    const Eigen::Index K = p.v[0].size();
    if (p.v[1].size() != K || beta1.size() != K || beta2.size() != K)
        throw std::invalid_argument("amplitudes_to_oscillators: length mismatch");

    const cplx sum_u = 0.5 * (p.u[0] + p.u[1]);
    const cplx dif_u = 0.5 * (p.u[0] - p.u[1]);
    const Eigen::VectorXcd sum_v = 0.5 * (p.v[0] + p.v[1]);
    const Eigen::VectorXcd dif_v = 0.5 * (p.v[0] - p.v[1]);

    const cplx a1 = init.alpha1 * sum_u + init.alpha2 * dif_u +
                    (beta1.array() * sum_v.array() + beta2.array() * dif_v.array()).sum();
    const cplx a2 = init.alpha1 * dif_u + init.alpha2 * sum_u +
                    (beta1.array() * dif_v.array() + beta2.array() * sum_v.array()).sum();
    return {a1, a2};
}

}  // namespace twobath
