#include "twobath/arrowhead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace twobath {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Secular function and derivative at E = d[origin] + tau.
struct Secular {
    double apex;
    const std::vector<double>& d;
    const std::vector<double>& z2;

    void eval(std::size_t origin, double tau, double& g, double& dg) const
    {
        double sum = 0.0, dsum = 0.0;
        const double o = d[origin];
        for (std::size_t s = 0; s < d.size(); ++s) {
            const double diff = (o - d[s]) + tau;
            const double q = z2[s] / diff;
            sum += q;
            dsum += q / diff;
        }
        g = (o - apex) + tau - sum;
        dg = 1.0 + dsum;
    }
};

// Safeguarded Newton on the bracket (lo, hi) where g(lo) < 0 < g(hi); either
// end may sit on a pole.
double solve_root(const Secular& sec, std::size_t origin, double lo, double hi)
{
    double tau = 0.5 * (lo + hi);
    for (int it = 0; it < 400; ++it) {
        double g, dg;
        sec.eval(origin, tau, g, dg);
        if (g == 0.0) return tau;
        if (g < 0.0)
            lo = tau;
        else
            hi = tau;
        double next = tau - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - tau) <= 2.0 * eps * std::abs(next)) return next;
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) return next;
        tau = next;
    }
    throw std::runtime_error("arrowhead_eigensystem: secular root did not converge");
}

}  // namespace

ArrowheadEigensystem arrowhead_eigensystem(double apex, const Eigen::VectorXd& d,
                                           const Eigen::VectorXd& z)
{
    if (d.size() != z.size())
        throw std::invalid_argument("arrowhead_eigensystem: diagonal/border size mismatch");
    const Eigen::Index K = d.size();
    for (Eigen::Index k = 0; k < K; ++k) {
        if (!std::isfinite(d(k)) || !std::isfinite(z(k)))
            throw std::invalid_argument("arrowhead_eigensystem: non-finite input");
        if (z(k) < 0.0) throw std::invalid_argument("arrowhead_eigensystem: negative border entry");
        if (k > 0 && !(d(k) > d(k - 1)))
            throw std::invalid_argument("arrowhead_eigensystem: diagonal must be strictly increasing");
    }
    if (!std::isfinite(apex)) throw std::invalid_argument("arrowhead_eigensystem: non-finite apex");

    const Eigen::Index n = K + 1;
    const double znorm = z.norm();
    const double scale = std::max({std::abs(apex), K > 0 ? d.cwiseAbs().maxCoeff() : 0.0, znorm});
    const double tol = 8.0 * eps * scale;

    // Border entries below tol are deflated: (d_k, e_k) is then an eigenpair to within tol.
    std::vector<Eigen::Index> active;
    std::vector<double> ds, z2;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    Eigen::MatrixXd vecs = Eigen::MatrixXd::Zero(n, n);
    Eigen::Index col = 0;
    for (Eigen::Index k = 0; k < K; ++k) {
        if (z(k) > tol) {
            active.push_back(k);
            ds.push_back(d(k));
            z2.push_back(z(k) * z(k));
        }
        else {
            values.push_back(d(k));
            vecs(k + 1, col++) = 1.0;
        }
    }

    if (active.empty()) {
        values.push_back(apex);
        vecs(0, col++) = 1.0;
    }
    else {
        const std::size_t m = active.size();
        const Secular sec{apex, ds, z2};

        auto store = [&](std::size_t origin, double tau) {
            values.push_back(ds[origin] + tau);
            vecs(0, col) = 1.0;
            for (std::size_t s = 0; s < m; ++s)
                vecs(active[s] + 1, col) = std::sqrt(z2[s]) / ((ds[origin] - ds[s]) + tau);
            vecs.col(col).normalize();
            ++col;
        };

        // Below the lowest pole: g(E) <= 0 at E = min(apex, d_1) - |z|.
        {
            double lo = std::min(apex, ds.front()) - znorm - ds.front();
            lo = std::min(lo, -tol);
            double g, dg;
            for (sec.eval(0, lo, g, dg); g > 0.0; sec.eval(0, lo, g, dg)) lo *= 2.0;
            store(0, solve_root(sec, 0, lo, 0.0));
        }
        for (std::size_t r = 1; r < m; ++r) {
            const double half = 0.5 * (ds[r] - ds[r - 1]);
            double g, dg;
            sec.eval(r - 1, half, g, dg);
            if (g >= 0.0)
                store(r - 1, g == 0.0 ? half : solve_root(sec, r - 1, 0.0, half));
            else
                store(r, solve_root(sec, r, -half, 0.0));
        }
        // Above the highest pole.
        {
            const std::size_t o = m - 1;
            double hi = std::max(apex, ds.back()) + znorm - ds.back();
            hi = std::max(hi, tol);
            double g, dg;
            for (sec.eval(o, hi, g, dg); g < 0.0; sec.eval(o, hi, g, dg)) hi *= 2.0;
            store(o, solve_root(sec, o, 0.0, hi));
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    });

    ArrowheadEigensystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        out.values(j) = values[static_cast<std::size_t>(src)];
        out.vectors.col(j) = vecs.col(src);
    }
    return out;
}

}  // namespace twobath
