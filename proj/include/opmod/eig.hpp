#pragma once

#include <vector>

#include "opmod/matrix.hpp"

namespace opmod {

// Eigenvalues nonincreasing; columns of `vectors` are the matching
// orthonormal eigenvectors, phase-normalized so the largest-modulus
// component of each column is real positive.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;

    ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi on a Hermitian matrix.  Sweeps until the off-diagonal
/// Frobenius mass drops below 1e-14 * ||A||_F; unconditionally convergent
/// and deterministic for a fixed input.
EigenDecomposition hermitian_eig(const HermitianMatrix& a);

// Diagonalization of a normal matrix by splitting it into commuting
// Hermitian parts: eigendecompose (W+W^*)/2, then re-diagonalize
// (W-W^*)/(2i) inside each eigenvalue cluster (clustering tolerance 1e-8
// relative).  `eigenvalues` here are complex.
struct NormalEigenDecomposition {
    std::vector<cplx> eigenvalues;
    ComplexMatrix vectors;
};

NormalEigenDecomposition normal_eig(const ComplexMatrix& w);

} // namespace opmod
