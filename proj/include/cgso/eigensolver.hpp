#pragma once

#include <vector>

#include "cgso/dense.hpp"

namespace cgso {

struct SymmetricEigen {
    std::vector<double> eigenvalues; // ascending
    DenseMatrix eigenvectors;        // column k pairs with eigenvalues[k]; orthonormal
};

// Dense symmetric eigendecomposition: Householder reduction to tridiagonal
// form followed by implicit-shift QL, with eigenvector accumulation.
// Eigenvalues come back ascending; each eigenvector is normalized with its
// first nonzero component positive so downstream clustering inputs are
// reproducible. Asymmetry beyond sym_tol (scaled by the largest entry
// magnitude) raises, reporting the worst offender.
SymmetricEigen eig_symmetric(const DenseMatrix& m, double sym_tol = 1e-10);

} // namespace cgso
