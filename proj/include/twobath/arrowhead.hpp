// arrowhead.hpp: Eigendecomposition of real symmetric arrowhead matrices
//
//     H = [ apex   z^T ]
//         [  z     D   ],   D = diag(d_1 < d_2 < ... < d_K),  z_k >= 0.
//
// Eigenvalues are the roots of the secular function
//     g(E) = E - apex - sum_k z_k^2 / (E - d_k),
// one below d_1, one in each gap, one above d_K. Each root is located as an
// offset tau from its nearest pole so that every difference E - d_k is formed
// without cancellation; the eigenvectors (1, z_k/(E - d_k)) are then
// componentwise accurate and orthogonal to working precision. O(K^2) total.

#pragma once

#include <Eigen/Dense>

namespace twobath {

struct ArrowheadEigensystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns; row 0 is the apex component
};

// Throws std::invalid_argument if d is not strictly increasing or z has negative
// entries, std::runtime_error if a secular root fails to converge.
ArrowheadEigensystem arrowhead_eigensystem(double apex, const Eigen::VectorXd& d,
                                           const Eigen::VectorXd& z);

}  // namespace twobath
