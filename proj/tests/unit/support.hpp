#pragma once

#include <random>

#include "twobath/bath.hpp"
#include "twobath/core.hpp"

namespace twobath::testing {

inline BathSpec flat_bath(double T, double J0, double wmin, double wmax)
{
    return BathSpec{T, J0, wmin, wmax};
}

// Two discretized baths on one grid at their own temperatures.
inline std::pair<DiscretizedBath, DiscretizedBath> bath_pair(const BathSpec& spec, double T1,
                                                             double T2, std::size_t K)
{
    DiscretizedBath b1 = discretize_bath(spec, K), b2 = b1;
    b1.temperature = T1;
    b2.temperature = T2;
    return {b1, b2};
}

// Irregular grid with random weak couplings.
inline std::pair<DiscretizedBath, DiscretizedBath> random_baths(std::mt19937& rng, Eigen::Index K,
                                                                double T1, double T2)
{
    std::uniform_real_distribution<double> gap(0.05, 0.2), cpl(0.005, 0.05);
    DiscretizedBath b1;
    b1.frequencies.resize(K);
    b1.couplings.resize(K);
    double w = 0.6;
    for (Eigen::Index k = 0; k < K; ++k) {
        w += gap(rng);
        b1.frequencies(k) = w;
        b1.couplings(k) = cpl(rng);
    }
    DiscretizedBath b2 = b1;
    b1.temperature = T1;
    b2.temperature = T2;
    return {b1, b2};
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace twobath::testing
