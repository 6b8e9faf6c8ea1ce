#pragma once

#include <cstdint>
#include <cmath>

#include "opmod/matrix.hpp"

namespace opmod {

// Deterministic generator used everywhere randomness is needed.  Uniform and
// normal variates are derived from the raw 64-bit stream by fixed formulas so
// that identical seeds give identical suites on any platform (the std::
// distributions are implementation-defined and would break byte-identical
// reports).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    /// Independent stream for subtask `index` of a seeded run.
    static Rng derive(std::uint64_t seed, std::uint64_t index) {
        Rng r(mix(seed ^ mix(index + 0x632be59bd9b4e019ull)));
        r.next();
        return r;
    }

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        // Box-Muller; cache the second variate.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    cplx complex_normal() {
        const double re = normal();
        return cplx(re, normal());
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Ginibre matrix: independent standard complex normal entries.
ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Random Hermitian with operator norm roughly O(sqrt(n)); symmetrized Ginibre.
HermitianMatrix random_hermitian(Rng& rng, std::size_t n);

/// Haar-distributed unitary via Gram-Schmidt of a Ginibre matrix with the
/// R-diagonal phase fix.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

} // namespace opmod
