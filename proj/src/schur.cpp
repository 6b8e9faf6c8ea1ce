#include "opmod/schur.hpp"

#include <algorithm>
#include <cmath>

#include "opmod/rng.hpp"
#include "opmod/svd.hpp"

namespace opmod {

ComplexMatrix schur_product(const ComplexMatrix& c, const ComplexMatrix& d) {
    require(c.rows() == d.rows() && c.cols() == d.cols(), "schur_product: size mismatch");
    ComplexMatrix r(c.rows(), c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) r(i, j) = c(i, j) * d(i, j);
    return r;
}

ComplexMatrix sign_matrix(std::size_t n) {
    if (n == 0) throw invalid_parameter("sign_matrix: n must be >= 1");
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(j, k) = (j > k) ? 1.0 : -1.0;
    return m;
}

double MultiplierEstimate::recompute(const ComplexMatrix& m) const {
    const double wn = operator_norm(witness);
    if (wn == 0.0) return 0.0;
    return operator_norm(schur_product(m, witness)) / wn;
}

namespace {

double ratio_of(const ComplexMatrix& m, const ComplexMatrix& c) {
    const double cn = operator_norm(c);
    if (cn == 0.0) return 0.0;
    return operator_norm(schur_product(m, c)) / cn;
}

// Gradient-style ascent on C: the differential of ||M*C|| at the top
// singular triple (u, v) of M*C is Re<conj(M)*(u v^*), dC>, so step along
// that matrix and renormalize.  200 steps or 1e-10 stall.
ComplexMatrix ascend(const ComplexMatrix& m, ComplexMatrix c) {
    double cur = ratio_of(m, c);
    const double step0 = 1e-2;
    double step = step0;
    for (int it = 0; it < 200; ++it) {
        const ComplexMatrix mc = schur_product(m, c);
        SvdResult dec = svd(mc);
        if (dec.values.empty() || dec.values[0] == 0.0) break;
        ComplexMatrix grad(c.rows(), c.cols());
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j)
                grad(i, j) = std::conj(m(i, j)) * dec.u(i, 0) * std::conj(dec.v(j, 0));
        const double gn = grad.frobenius_norm();
        if (gn == 0.0) break;
        ComplexMatrix cand = c + (step / gn) * grad;
        const double cn = operator_norm(cand);
        if (cn == 0.0) break;
        cand *= cplx(1.0 / cn, 0.0);
        const double val = ratio_of(m, cand);
        if (val > cur + 1e-10) {
            c = cand;
            cur = val;
        } else {
            step *= 0.5;
            if (step < 1e-6) break;
        }
    }
    return c;
}

} // namespace

MultiplierEstimate multiplier_norm_lower(const ComplexMatrix& m, int budget, std::uint64_t seed) {
    const std::size_t rows = m.rows(), cols = m.cols();
    MultiplierEstimate best;
    auto consider = [&](const ComplexMatrix& c, const std::string& how) {
        const double r = ratio_of(m, c);
        if (r > best.lower_bound) {
            best.lower_bound = r;
            best.witness = c;
            best.method = how;
        }
    };

    // Matrix unit at the largest entry: certifies max |m_jk|.
    {
        std::size_t bi = 0, bj = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (std::abs(m(i, j)) > amax) {
                    amax = std::abs(m(i, j));
                    bi = i;
                    bj = j;
                }
        ComplexMatrix unit(rows, cols);
        unit(bi, bj) = 1.0;
        consider(unit, "matrix-unit");
    }

    // Hilbert-type candidates c_jk = 1/(j - k + i theta): bounded matrices
    // whose triangular parts carry the log growth; they seed the search for
    // sign-pattern multipliers.
    for (double theta : {0.5, 1.0, 2.0}) {
        ComplexMatrix c(rows, cols);
        for (std::size_t j = 0; j < rows; ++j)
            for (std::size_t k = 0; k < cols; ++k)
                c(j, k) = 1.0 / cplx(static_cast<double>(j) - static_cast<double>(k), theta);
        consider(c, "hilbert");
    }

    Rng rng(seed);
    const int trials = std::max(1, budget);
    for (int t = 0; t < trials; ++t) {
        Rng local = Rng::derive(seed, static_cast<std::uint64_t>(t));
        if (t % 2 == 0) {
            consider(random_matrix(local, rows, cols), "random");
        } else {
            ComplexMatrix u = random_matrix(local, rows, 1);
            ComplexMatrix v = random_matrix(local, cols, 1);
            ComplexMatrix c(rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) c(i, j) = u(i, 0) * std::conj(v(j, 0));
            consider(c, "rank-one");
        }
    }

    // Local ascent from the best candidate found so far.
    if (best.lower_bound > 0.0) {
        const std::string seeded_from = best.method;
        consider(ascend(m, best.witness), seeded_from + "+ascent");
    }
    return best;
}

double multiplier_norm_upper_abs_sum(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.data()) s += std::abs(v);
    return s;
}

double multiplier_contraction_check(const ComplexMatrix& m, double p, int trials,
                                    std::uint64_t seed) {
    if (!(p == 1.0 || p == 2.0 || std::isinf(p)))
        throw invalid_parameter("multiplier_contraction_check: p must be 1, 2, or inf");
    const std::size_t rows = m.rows(), cols = m.cols();
    double worst = 0.0;
    auto consider = [&](const ComplexMatrix& c) {
        const double cn = schatten_norm(c, p);
        if (cn == 0.0) return;
        worst = std::max(worst, schatten_norm(schur_product(m, c), p) / cn);
    };
    // Matrix unit at the largest entry certifies worst_ratio >= max |m_jk|.
    {
        std::size_t bi = 0, bj = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (std::abs(m(i, j)) > amax) {
                    amax = std::abs(m(i, j));
                    bi = i;
                    bj = j;
                }
        ComplexMatrix unit(rows, cols);
        unit(bi, bj) = 1.0;
        consider(unit);
    }
    for (int t = 0; t < trials; ++t) {
        Rng local = Rng::derive(seed, static_cast<std::uint64_t>(t));
        consider(random_matrix(local, rows, cols));
    }
    return worst;
}

} // namespace opmod
