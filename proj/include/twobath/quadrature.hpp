// quadrature.hpp: Gauss-Hermite rules for the weight exp(-x^2)

#pragma once

#include <cstddef>
#include <vector>

namespace twobath {

struct GaussHermiteRule {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // sum to sqrt(pi)
};

// n-point rule, exact for polynomials of degree <= 2n - 1. Nodes are found by
// Newton iteration on the orthonormal Hermite recurrence.
GaussHermiteRule gauss_hermite(std::size_t n);

}  // namespace twobath
