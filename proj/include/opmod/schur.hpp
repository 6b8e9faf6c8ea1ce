#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opmod/matrix.hpp"

namespace opmod {

/// Entrywise (Hadamard) product; sizes must match.
ComplexMatrix schur_product(const ComplexMatrix& c, const ComplexMatrix& d);

/// The triangular-truncation sign pattern: entry (j,k) = sgn(j - k - 1/2),
/// i.e. +1 below the diagonal, -1 on and above it.
ComplexMatrix sign_matrix(std::size_t n);

// Certified lower bound on ||M||_M = sup { ||M * C|| : ||C|| = 1 }.  The
// bound is always reproducible from the stored witness.
struct MultiplierEstimate {
    double lower_bound = 0.0;
    ComplexMatrix witness;
    std::string method;

    /// ||M * witness|| / ||witness||, recomputed from scratch.
    double recompute(const ComplexMatrix& m) const;
};

/// Best ratio over random unit-norm C, rank-one C, matrix units, structured
/// Hilbert-type candidates, and local ascent refinement, `budget` trials.
MultiplierEstimate multiplier_norm_lower(const ComplexMatrix& m, int budget, std::uint64_t seed);

/// Entrywise-sum upper bound: ||M||_M <= sum |m_jk|.
double multiplier_norm_upper_abs_sum(const ComplexMatrix& m);

/// max over random C of ||M * C||_{S_p} / ||C||_{S_p}, p in {1, 2, inf};
/// matrix-unit candidates included.
double multiplier_contraction_check(const ComplexMatrix& m, double p, int trials,
                                    std::uint64_t seed);

} // namespace opmod
