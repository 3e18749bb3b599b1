#include "twobath/oracle.hpp"

#include <cmath>
#include <numbers>
#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "twobath/bath.hpp"

namespace twobath::oracle {

namespace {

void require_shared_grid(const DiscretizedBath& b1, const DiscretizedBath& b2)
{
    if (!b1.same_grid(b2)) throw std::invalid_argument("oracle: baths must share one grid");
}

GaussianState rescale_pair(const Eigen::Matrix4d& c, const Eigen::Vector4d& m, double omega)
{
    const double sx = 1.0 / std::sqrt(omega), sp = std::sqrt(omega);
    const Eigen::Vector4d s(sx, sp, sx, sp);
    const Eigen::Matrix4d q = s.asDiagonal() * c * s.asDiagonal();
    // Symmetrize away roundoff before the checked constructor.
    return GaussianState{CovarianceMatrix::checked(0.5 * (q + q.transpose())),
                         s.cwiseProduct(m)};
}

}  // namespace

GaussianState FullSystemCovariance::reduce() const
{
    return rescale_pair(cov.topLeftCorner<4, 4>(), mean.head<4>(), omega);
}

Eigen::MatrixXd site_hamiltonian(const SystemParams& params, const DiscretizedBath& bath1,
                                 const DiscretizedBath& bath2)
{
    require_shared_grid(bath1, bath2);
    const Eigen::Index K = bath1.size();
    const Eigen::Index n = 2 + 2 * K;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    M(0, 0) = M(1, 1) = params.omega;
    M(0, 1) = M(1, 0) = params.lambda;
    for (Eigen::Index k = 0; k < K; ++k) {
        const Eigen::Index b1 = 2 + k, b2 = 2 + K + k;
        M(b1, b1) = bath1.frequencies(k);
        M(b2, b2) = bath2.frequencies(k);
        M(0, b1) = M(b1, 0) = bath1.couplings(k);
        M(1, b2) = M(b2, 1) = bath2.couplings(k);
    }
    return M;
}

FullSystemCovariance full_gaussian_propagate(const SystemParams& params,
                                             const DiscretizedBath& bath1,
                                             const DiscretizedBath& bath2,
                                             const InitialAmplitudes& init, double t)
{
    const Eigen::MatrixXd M = site_hamiltonian(params, bath1, bath2);
    const Eigen::Index n = M.rows();
    const Eigen::Index K = bath1.size();

    // dX/dt = M P, dP/dt = -M X
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            gen(2 * a, 2 * b + 1) = M(a, b);
            gen(2 * a + 1, 2 * b) = -M(a, b);
        }
    const Eigen::MatrixXd S = (gen * t).exp();

    Eigen::VectorXd var(n);
    var(0) = var(1) = 0.5;
    const Eigen::VectorXd n1 = occupations(bath1), n2 = occupations(bath2);
    for (Eigen::Index k = 0; k < K; ++k) {
        var(2 + k) = n1(k) + 0.5;
        var(2 + K + k) = n2(k) + 0.5;
    }
    Eigen::VectorXd diag0(2 * n);
    for (Eigen::Index m = 0; m < n; ++m) diag0(2 * m) = diag0(2 * m + 1) = var(m);
    Eigen::VectorXd mean0 = Eigen::VectorXd::Zero(2 * n);
    mean0(0) = std::numbers::sqrt2 * init.alpha1.real();
    mean0(1) = std::numbers::sqrt2 * init.alpha1.imag();
    mean0(2) = std::numbers::sqrt2 * init.alpha2.real();
    mean0(3) = std::numbers::sqrt2 * init.alpha2.imag();

    FullSystemCovariance out;
    out.cov = S * diag0.asDiagonal() * S.transpose();
    out.mean = S * mean0;
    out.omega = params.omega;
    return out;
}

namespace {

using State = std::array<int, 4>;

class FockBasis {
public:
    explicit FockBasis(int cutoff) : cutoff_(cutoff), lookup_(ipow(cutoff + 1, 4), -1)
    {
        sectors_.resize(static_cast<std::size_t>(cutoff + 1));
        for (int total = 0; total <= cutoff; ++total)
            for (int a = 0; a <= total; ++a)
                for (int b = 0; a + b <= total; ++b)
                    for (int c = 0; a + b + c <= total; ++c) {
                        const State s{a, b, c, total - a - b - c};
                        lookup_[key(s)] = static_cast<int>(states_.size());
                        sectors_[static_cast<std::size_t>(total)].push_back(static_cast<int>(states_.size()));
                        states_.push_back(s);
                    }
    }

    std::size_t size() const { return states_.size(); }
    const State& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    const std::vector<std::vector<int>>& sectors() const { return sectors_; }
    int index(const State& s) const
    {
        int total = 0;
        for (int x : s) {
            if (x < 0) return -1;
            total += x;
        }
        return total > cutoff_ ? -1 : lookup_[key(s)];
    }

    // (a_mode psi)(n) = sqrt(n_mode + 1) psi(n + e_mode)
    Eigen::VectorXcd lower(int mode, const Eigen::VectorXcd& psi) const
    {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
        for (std::size_t i = 0; i < states_.size(); ++i) {
            State up = states_[i];
            ++up[static_cast<std::size_t>(mode)];
            const int j = index(up);
            if (j >= 0) out(static_cast<Eigen::Index>(i)) = std::sqrt(double(up[static_cast<std::size_t>(mode)])) * psi(j);
        }
        return out;
    }

private:
    static std::size_t ipow(int b, int e)
    {
        std::size_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
        return r;
    }
    std::size_t key(const State& s) const
    {
        std::size_t k = 0;
        for (int x : s) k = k * static_cast<std::size_t>(cutoff_ + 1) + static_cast<std::size_t>(x);
        return k;
    }

    int cutoff_;
    std::vector<int> lookup_;
    std::vector<State> states_;
    std::vector<std::vector<int>> sectors_;
};

// Coherent-state amplitudes <n|alpha>, n = 0..N.
std::vector<cplx> coherent_amplitudes(cplx alpha, int N)
{
    std::vector<cplx> c(static_cast<std::size_t>(N + 1));
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= N; ++n) c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n - 1)] * alpha / std::sqrt(double(n));
    return c;
}

std::vector<double> thermal_weights(double w, double T, int N)
{
    std::vector<double> p(static_cast<std::size_t>(N + 1), 0.0);
    if (T == 0.0) {
        p[0] = 1.0;
        return p;
    }
    const double q = std::exp(-w / T);
    for (int m = 0; m <= N; ++m) p[static_cast<std::size_t>(m)] = -std::expm1(-w / T) * std::pow(q, m);
    return p;
}

}  // namespace

FockResult fock_evolve(const SystemParams& params, const DiscretizedBath& bath1,
                       const DiscretizedBath& bath2, const InitialAmplitudes& init,
                       std::size_t cutoff, double t, double leakage_gate)
{
    require_shared_grid(bath1, bath2);
    if (bath1.size() != 1) throw std::invalid_argument("fock_evolve: exactly one mode per bath");
    if (cutoff == 0 || cutoff > 16) throw std::invalid_argument("fock_evolve: cutoff must be in [1, 16]");
    const int N = static_cast<int>(cutoff);
    const double wb = bath1.frequencies(0), g1 = bath1.couplings(0), g2 = bath2.couplings(0);
    const double freq[4] = {params.omega, params.omega, wb, wb};
    // (creation mode, annihilation mode, amplitude) for the hermitian pairs
    struct Hop { int to, from; double amp; };
    const Hop hops[] = {{0, 1, params.lambda}, {1, 0, params.lambda}, {0, 2, g1},
                        {2, 0, g1},            {1, 3, g2},            {3, 1, g2}};

    const FockBasis basis(N);
    const auto dim = static_cast<Eigen::Index>(basis.size());

    // Sector propagators exp(-i H_n t).
    std::vector<Eigen::MatrixXcd> U;
    for (const auto& sector : basis.sectors()) {
        const auto d = static_cast<Eigen::Index>(sector.size());
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            const State& s = basis.state(sector[static_cast<std::size_t>(i)]);
            for (int m = 0; m < 4; ++m) H(i, i) += freq[m] * s[static_cast<std::size_t>(m)];
            for (const Hop& h : hops) {
                State s2 = s;
                if (s2[static_cast<std::size_t>(h.from)] == 0) continue;
                const double amp = h.amp * std::sqrt(double(s2[static_cast<std::size_t>(h.from)])) *
                                   std::sqrt(double(s2[static_cast<std::size_t>(h.to)] + 1));
                --s2[static_cast<std::size_t>(h.from)];
                ++s2[static_cast<std::size_t>(h.to)];
                const int j = basis.index(s2);
                const auto pos = std::find(sector.begin(), sector.end(), j) - sector.begin();
                H(pos, i) += amp;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        Eigen::VectorXcd ph(d);
        for (Eigen::Index k = 0; k < d; ++k) ph(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
        const Eigen::MatrixXcd V = es.eigenvectors().cast<cplx>();
        U.push_back(V * ph.asDiagonal() * V.adjoint());
    }

    const auto c1 = coherent_amplitudes(init.alpha1, N);
    const auto c2 = coherent_amplitudes(init.alpha2, N);
    const auto p1 = thermal_weights(wb, bath1.temperature, N);
    const auto p2 = thermal_weights(wb, bath2.temperature, N);

    double retained = 0.0;
    Eigen::Vector2cd m = Eigen::Vector2cd::Zero();
    Eigen::Matrix2cd G = Eigen::Matrix2cd::Zero(), F = Eigen::Matrix2cd::Zero();
    for (int b1 = 0; b1 <= N; ++b1)
        for (int b2 = 0; b1 + b2 <= N; ++b2) {
            const double w = p1[static_cast<std::size_t>(b1)] * p2[static_cast<std::size_t>(b2)];
            if (w == 0.0) continue;
            Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
            for (int a1 = 0; a1 + b1 + b2 <= N; ++a1)
                for (int a2 = 0; a1 + a2 + b1 + b2 <= N; ++a2)
                    psi(basis.index({a1, a2, b1, b2})) = c1[static_cast<std::size_t>(a1)] * c2[static_cast<std::size_t>(a2)];
            retained += w * psi.squaredNorm();

            for (std::size_t s = 0; s < basis.sectors().size(); ++s) {
                const auto& sector = basis.sectors()[s];
                Eigen::VectorXcd block(static_cast<Eigen::Index>(sector.size()));
                for (std::size_t i = 0; i < sector.size(); ++i) block(static_cast<Eigen::Index>(i)) = psi(sector[i]);
                block = U[s] * block;
                for (std::size_t i = 0; i < sector.size(); ++i) psi(sector[i]) = block(static_cast<Eigen::Index>(i));
            }

            const Eigen::VectorXcd l0 = basis.lower(0, psi), l1 = basis.lower(1, psi);
            const Eigen::VectorXcd* low[2] = {&l0, &l1};
            for (int i = 0; i < 2; ++i) {
                m(i) += w * psi.dot(*low[i]);
                for (int j = 0; j < 2; ++j) {
                    G(i, j) += w * low[i]->dot(*low[j]);
                    F(i, j) += w * psi.dot(basis.lower(i, *low[j]));
                }
            }
        }

    const double leakage = std::max(0.0, 1.0 - retained);
    if (leakage > leakage_gate)
        throw std::runtime_error("fock_evolve: initial weight above the cutoff exceeds the leakage gate");
    m /= retained;
    G /= retained;
    F /= retained;
    G -= m.conjugate() * m.transpose();
    F -= m * m.transpose();

    // Symmetrized quadrature moments in X = (a + a^dag)/sqrt2, P = (a - a^dag)/(i sqrt2).
    Eigen::Matrix4d c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double delta = i == j ? 0.5 : 0.0;
            c(2 * i, 2 * j) = F(i, j).real() + G(i, j).real() + delta;
            c(2 * i + 1, 2 * j + 1) = -F(i, j).real() + G(i, j).real() + delta;
            c(2 * i, 2 * j + 1) = F(i, j).imag() + G(i, j).imag();
            c(2 * j + 1, 2 * i) = c(2 * i, 2 * j + 1);
        }
    const Eigen::Vector4d mean(std::numbers::sqrt2 * m(0).real(), std::numbers::sqrt2 * m(0).imag(),
                               std::numbers::sqrt2 * m(1).real(), std::numbers::sqrt2 * m(1).imag());
    return FockResult{rescale_pair(c, mean, params.omega), leakage, basis.size()};
}

namespace {

// Thermal kernel of H = Omega (P^2 + X^2)/2 in coordinates with m Omega = 1, y = Omega / T.
double mehler(double X, double Xp, double y)
{
    const double coth = 1.0 / std::tanh(y), csch = 1.0 / std::sinh(y);
    return std::sqrt(std::tanh(0.5 * y) / std::numbers::pi) *
           std::exp(-0.5 * (X * X + Xp * Xp) * coth + X * Xp * csch);
}

}  // namespace

double gibbs_kernel(const SystemParams& params, double T, const KernelPoint& kp)
{
    if (!(T > 0.0)) throw std::domain_error("gibbs_kernel: temperature must be > 0");
    const double s = std::sqrt(params.omega) / std::numbers::sqrt2;
    const double plus = s * (kp.x1 + kp.x2), plus_p = s * (kp.x1p + kp.x2p);
    const double minus = s * (kp.x1 - kp.x2), minus_p = s * (kp.x1p - kp.x2p);
    // |x> = omega^{-1/4} |X> per mode.
    return params.omega * mehler(plus, plus_p, params.omega1() / T) *
           mehler(minus, minus_p, params.omega2() / T);
}

}  // namespace twobath::oracle
