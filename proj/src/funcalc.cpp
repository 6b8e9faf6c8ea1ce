#include "opmod/funcalc.hpp"

#include <algorithm>
#include <cmath>

#include "opmod/svd.hpp"

namespace opmod {

namespace {

double binomial(int m, int j) {
    double b = 1.0;
    for (int i = 0; i < j; ++i) b = b * static_cast<double>(m - i) / static_cast<double>(i + 1);
    return b;
}

ComplexMatrix spectral_apply(const EigenDecomposition& eig, const std::vector<cplx>& fvals) {
    const std::size_t n = eig.eigenvalues.size();
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k)
                s += eig.vectors(i, k) * fvals[k] * std::conj(eig.vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

} // namespace

ComplexMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a) {
    EigenDecomposition eig = hermitian_eig(a);
    std::vector<cplx> fvals(eig.eigenvalues.size());
    for (std::size_t k = 0; k < fvals.size(); ++k) fvals[k] = f(eig.eigenvalues[k]);
    return spectral_apply(eig, fvals);
}

ComplexMatrix finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                const HermitianMatrix& k, int m) {
    require(a.size() == k.size(), "finite_difference: size mismatch");
    if (m < 1) throw invalid_parameter("finite_difference: m must be >= 1");
    ComplexMatrix acc(a.size(), a.size());
    for (int j = 0; j <= m; ++j) {
        const HermitianMatrix shifted =
            (j == 0) ? a : HermitianMatrix(a.matrix() + static_cast<double>(j) * k.matrix());
        const double sgn = ((m - j) % 2 == 0) ? 1.0 : -1.0;
        acc += (sgn * binomial(m, j)) * apply_function(f, shifted);
    }
    return acc;
}

std::pair<ComplexMatrix, ComplexMatrix> quasicommutator(const ScalarFunction& f,
                                                        const HermitianMatrix& a,
                                                        const HermitianMatrix& b,
                                                        const ComplexMatrix& r) {
    require(r.rows() == a.size() && r.cols() == b.size(), "quasicommutator: size mismatch");
    const ComplexMatrix fa = apply_function(f, a);
    const ComplexMatrix fb = apply_function(f, b);
    return {fa * r - r * fb, a.matrix() * r - r * b.matrix()};
}

ComplexMatrix divided_difference_matrix(const ScalarFunction& f, const std::vector<double>& lambda,
                                        const std::vector<double>& mu) {
    ComplexMatrix m(lambda.size(), mu.size());
    for (std::size_t j = 0; j < lambda.size(); ++j)
        for (std::size_t k = 0; k < mu.size(); ++k) {
            const double lj = lambda[j], mk = mu[k];
            const double tol = 1e-12 * (1.0 + std::abs(lj) + std::abs(mk));
            if (std::abs(lj - mk) <= tol) {
                if (!f.deriv)
                    throw coincident_node_error(
                        "divided_difference_matrix: coincident nodes and no derivative");
                m(j, k) = (*f.deriv)(lj);
            } else {
                m(j, k) = (f(lj) - f(mk)) / (lj - mk);
            }
        }
    return m;
}

ComplexMatrix atomic_operator(const ScalarFunction& f, const HermitianMatrix& a,
                              const HermitianMatrix& k, const AtomicMeasure& g) {
    require(a.size() == k.size(), "atomic_operator: size mismatch");
    ComplexMatrix acc(a.size(), a.size());
    for (const auto& atom : g.atoms) {
        if (!(atom.step > 0.0)) throw invalid_parameter("atomic_operator: atom step must be > 0");
        if (atom.order < 1) throw invalid_parameter("atomic_operator: atom order must be >= 1");
        // Base point A - aK, increments of h K.
        const HermitianMatrix base =
            HermitianMatrix(a.matrix() - atom.location * k.matrix());
        const HermitianMatrix hk = HermitianMatrix(atom.step * k.matrix());
        acc += atom.weight * finite_difference(f, base, hk, atom.order);
    }
    return acc;
}

ComplexMatrix apply_trig_polynomial(const std::vector<cplx>& coeffs, const ComplexMatrix& u) {
    require(u.is_square(), "apply_trig_polynomial: U must be square");
    if (coeffs.size() % 2 != 1)
        throw invalid_parameter("apply_trig_polynomial: need 2d+1 coefficients");
    const std::size_t n = u.rows();
    {
        const ComplexMatrix gram = u.adjoint() * u;
        ComplexMatrix defect = gram - ComplexMatrix::identity(n);
        require(defect.max_abs() <= 1e-9, "apply_trig_polynomial: U is not unitary");
    }
    const int d = static_cast<int>(coeffs.size() / 2);
    const ComplexMatrix uadj = u.adjoint();

    ComplexMatrix acc(n, n);
    for (std::size_t i = 0; i < n; ++i) acc(i, i) = coeffs[static_cast<std::size_t>(d)];
    ComplexMatrix upow = ComplexMatrix::identity(n);
    ComplexMatrix umpow = ComplexMatrix::identity(n);
    for (int p = 1; p <= d; ++p) {
        upow = upow * u;
        umpow = umpow * uadj;
        acc += coeffs[static_cast<std::size_t>(d + p)] * upow;
        acc += coeffs[static_cast<std::size_t>(d - p)] * umpow;
    }
    return acc;
}

UnitaryLogResult unitary_log_arg(const ComplexMatrix& u, const ComplexMatrix& v) {
    require(u.is_square() && v.is_square() && u.rows() == v.rows(),
            "unitary_log_arg: need unitary matrices of equal size");
    const std::size_t n = u.rows();
    auto check_unitary = [n](const ComplexMatrix& m, const char* who) {
        ComplexMatrix defect = m.adjoint() * m - ComplexMatrix::identity(n);
        require(defect.max_abs() <= 1e-9, std::string("unitary_log_arg: ") + who +
                                              " is not unitary");
    };
    check_unitary(u, "U");
    check_unitary(v, "V");

    const ComplexMatrix w = v * u.adjoint(); // V U^{-1}
    NormalEigenDecomposition eig = normal_eig(w);

    UnitaryLogResult out;
    std::vector<cplx> args(n);
    for (std::size_t j = 0; j < n; ++j) {
        const cplx lam = eig.eigenvalues[j];
        if (std::abs(lam + cplx(1.0, 0.0)) <= 1e-10) out.branch_boundary = true;
        double s = std::atan2(lam.imag(), lam.real()); // (-pi, pi]
        if (s >= M_PI) s = -M_PI;                      // arg maps to [-pi, pi)
        args[j] = cplx(s, 0.0);
    }
    const std::size_t nn = n;
    ComplexMatrix am(nn, nn);
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t k = 0; k < nn; ++k)
                s += eig.vectors(i, k) * args[k] * std::conj(eig.vectors(j, k));
            am(i, j) = s;
        }
    out.arg = HermitianMatrix::symmetrize(am);
    return out;
}

// ----- Littlewood-Paley forms -----

namespace {

// l1 spectral mass landing in block n (both mirror halves).
double block_mass(const TrigSeries& s, int n, const LPKernelBank& bank) {
    const double scale = std::ldexp(1.0, n);
    double mass = 0.0;
    for (std::size_t k = 0; k < s.freqs.size(); ++k) {
        const double a = std::abs(s.freqs[k]) / scale;
        if (a > 0.5 && a < 2.0) mass += std::abs(s.coeffs[k]) * bank.w(a);
    }
    return mass;
}

void check_aliasing(const TrigSeries& s, double nyquist, double tol) {
    double total = 0.0, top = 0.0;
    for (std::size_t k = 0; k < s.freqs.size(); ++k) {
        const double a = std::abs(s.coeffs[k]);
        total += a;
        if (std::abs(s.freqs[k]) >= nyquist * 15.0 / 16.0) top += a;
    }
    if (total > 0.0 && top > tol * total)
        throw aliasing_error("spectral analysis: significant mass at the Nyquist edge");
}

struct CalculusCache {
    std::vector<EigenDecomposition> eigs;          // per j = 0..m
    std::vector<std::vector<std::vector<cplx>>> phases; // [j][eig index][k] = e^{i xi_k lambda}
};

CalculusCache build_cache(const TrigSeries& s, const HermitianMatrix& a, const HermitianMatrix& k,
                          int m) {
    CalculusCache c;
    c.eigs.reserve(m + 1);
    for (int j = 0; j <= m; ++j) {
        const HermitianMatrix shifted =
            (j == 0) ? a : HermitianMatrix(a.matrix() + static_cast<double>(j) * k.matrix());
        c.eigs.push_back(hermitian_eig(shifted));
    }
    c.phases.resize(m + 1);
    for (int j = 0; j <= m; ++j) {
        const auto& lam = c.eigs[j].eigenvalues;
        c.phases[j].resize(lam.size());
        for (std::size_t e = 0; e < lam.size(); ++e) {
            auto& row = c.phases[j][e];
            row.resize(s.freqs.size());
            for (std::size_t q = 0; q < s.freqs.size(); ++q)
                row[q] = std::polar(1.0, s.freqs[q] * lam[e]);
        }
    }
    return c;
}

// (Delta_K^m g)(A) where g is the series s with per-frequency weights.
ComplexMatrix weighted_difference(const TrigSeries& s, const std::vector<double>& weights,
                                  const CalculusCache& cache, int m) {
    const std::size_t n = cache.eigs[0].eigenvalues.size();
    ComplexMatrix acc(n, n);
    for (int j = 0; j <= m; ++j) {
        const auto& eig = cache.eigs[j];
        std::vector<cplx> gvals(n);
        for (std::size_t e = 0; e < n; ++e) {
            cplx val(0.0, 0.0);
            const auto& row = cache.phases[j][e];
            for (std::size_t q = 0; q < s.freqs.size(); ++q) {
                if (weights[q] == 0.0) continue;
                val += s.coeffs[q] * weights[q] * row[q];
            }
            gvals[e] = val;
        }
        const double sgn = ((m - j) % 2 == 0) ? 1.0 : -1.0;
        acc += (sgn * binomial(m, j)) * spectral_apply(eig, gvals);
    }
    return acc;
}

} // namespace

NRange auto_n_range(const SampledFunction& f, const LPKernelBank& bank) {
    const TrigSeries s = analyze(f);
    double total = 0.0;
    for (std::size_t k = 0; k < s.coeffs.size(); ++k)
        if (s.freqs[k] != 0.0) total += std::abs(s.coeffs[k]);
    const int n_min_grid = static_cast<int>(std::floor(std::log2(M_PI / f.half_width))) - 1;
    const int n_max_grid = static_cast<int>(std::floor(std::log2(f.nyquist() / 2.0)));
    if (total == 0.0) return NRange{0, -1};
    const double thresh = 1e-10 * total;
    int lo = n_max_grid + 1, hi = n_min_grid - 1;
    for (int n = n_min_grid; n <= n_max_grid; ++n) {
        if (block_mass(s, n, bank) >= thresh) {
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
    }
    if (lo > hi) return NRange{0, -1};
    return NRange{lo, hi};
}

LitPaleyResult litpaley_finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                          const HermitianMatrix& k, int m,
                                          const LPKernelBank& bank, NRange range,
                                          const AnalysisWindow& win) {
    require(a.size() == k.size(), "litpaley_finite_difference: size mismatch");
    if (m < 1) throw invalid_parameter("litpaley_finite_difference: m must be >= 1");
    const SampledFunction samples = SampledFunction::sample(f, win.half_width, win.points);
    const TrigSeries s = analyze(samples);
    check_aliasing(s, samples.nyquist(), win.aliasing_tol);

    const CalculusCache cache = build_cache(s, a, k, m);

    LitPaleyResult out;
    out.value = ComplexMatrix(a.size(), a.size());
    std::vector<double> weights(s.freqs.size(), 0.0);
    for (int n = range.lo; n <= range.hi; ++n) {
        const double scale = std::ldexp(1.0, n);
        if (2.0 * scale > samples.nyquist())
            throw aliasing_error("litpaley_finite_difference: block beyond Nyquist");
        for (std::size_t q = 0; q < s.freqs.size(); ++q)
            weights[q] = bank.w(std::abs(s.freqs[q]) / scale);
        const ComplexMatrix term = weighted_difference(s, weights, cache, m);
        out.term_norms.push_back(operator_norm(term));
        out.n_values.push_back(n);
        out.value += term;
    }
    return out;
}

LitPaleyResult litpaley_finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                          const HermitianMatrix& k, int m,
                                          const LPKernelBank& bank, const AnalysisWindow& win) {
    const SampledFunction samples = SampledFunction::sample(f, win.half_width, win.points);
    return litpaley_finite_difference(f, a, k, m, bank, auto_n_range(samples, bank), win);
}

ComplexMatrix split_finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                      const HermitianMatrix& k, int m, const LPKernelBank& bank,
                                      int cutoff, const AnalysisWindow& win) {
    require(a.size() == k.size(), "split_finite_difference: size mismatch");
    if (m < 1) throw invalid_parameter("split_finite_difference: m must be >= 1");
    const SampledFunction samples = SampledFunction::sample(f, win.half_width, win.points);
    const TrigSeries s = analyze(samples);
    check_aliasing(s, samples.nyquist(), win.aliasing_tol);
    if (2.0 * std::ldexp(1.0, cutoff) > samples.nyquist())
        throw aliasing_error("split_finite_difference: cutoff beyond Nyquist");

    const NRange range = auto_n_range(samples, bank);
    const CalculusCache cache = build_cache(s, a, k, m);

    ComplexMatrix acc(a.size(), a.size());
    std::vector<double> weights(s.freqs.size(), 0.0);
    for (int n = range.lo; n <= std::min(range.hi, cutoff); ++n) {
        const double scale = std::ldexp(1.0, n);
        for (std::size_t q = 0; q < s.freqs.size(); ++q)
            weights[q] = bank.w(std::abs(s.freqs[q]) / scale);
        acc += weighted_difference(s, weights, cache, m);
    }
    // Tail term (Delta_K^m (f - f*V_cutoff))(A), spectrally 1 - v(xi/2^N).
    const double scale = std::ldexp(1.0, cutoff);
    for (std::size_t q = 0; q < s.freqs.size(); ++q)
        weights[q] = 1.0 - bank.v(s.freqs[q] / scale);
    acc += weighted_difference(s, weights, cache, m);
    return acc;
}

} // namespace opmod
