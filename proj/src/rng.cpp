#include "opmod/rng.hpp"

namespace opmod {

ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
    return m;
}

HermitianMatrix random_hermitian(Rng& rng, std::size_t n) {
    return HermitianMatrix::symmetrize(random_matrix(rng, n, n));
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix g = random_matrix(rng, n, n);
    // Modified Gram-Schmidt on columns; normalize so each pivot is real
    // positive, which makes the result a deterministic function of g.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx dot(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-14) {
            // Degenerate draw; replace the column with a unit vector.
            for (std::size_t i = 0; i < n; ++i) g(i, j) = (i == j) ? 1.0 : 0.0;
            nrm = 1.0;
        }
        for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
        // Phase fix: largest-modulus component real positive.
        std::size_t imax = 0;
        double amax = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(g(i, j)) > amax) { amax = std::abs(g(i, j)); imax = i; }
        const cplx phase = g(imax, j) / amax;
        for (std::size_t i = 0; i < n; ++i) g(i, j) /= phase;
    }
    return g;
}

} // namespace opmod
