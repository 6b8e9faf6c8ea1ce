#include "opmod/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opmod {

ComplexMatrix EigenDecomposition::reconstruct() const {
    const std::size_t n = eigenvalues.size();
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k)
                s += vectors(i, k) * eigenvalues[k] * std::conj(vectors(j, k));
            r(i, j) = s;
        }
    return r;
}

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q).  The 2x2 block
// [[a_pp, g],[conj(g), a_qq]] is reduced by a phase (making g real) followed
// by the classical symmetric rotation choosing the smaller angle.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx g = a(p, q);
    const double ag = std::abs(g);
    if (ag == 0.0) return;
    const cplx phase = g / ag; // g = ag * phase
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * ag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // Column transforms: col_p' = c*col_p - s*conj(phase)*col_q,
    //                    col_q' = s*phase*col_p + c*col_q.
    const cplx sp = s * phase;
    const cplx spc = s * std::conj(phase);
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip - spc * aiq;
        a(i, q) = sp * aip + c * aiq;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const cplx api = a(p, i), aqi = a(q, i);
        a(p, i) = c * api - sp * aqi;
        a(q, i) = spc * api + c * aqi;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const cplx vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip - spc * viq;
        v(i, q) = sp * vip + c * viq;
    }
    a(p, q) = cplx(0.0, 0.0);
    a(q, p) = cplx(0.0, 0.0);
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);
}

void phase_normalize_columns(ComplexMatrix& v) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < v.rows(); ++i)
            if (std::abs(v(i, j)) > amax) { amax = std::abs(v(i, j)); imax = i; }
        if (amax <= 0.0) continue;
        const cplx phase = v(imax, j) / amax;
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) /= phase;
    }
}

} // namespace

EigenDecomposition hermitian_eig(const HermitianMatrix& h) {
    ComplexMatrix a = h.matrix();
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);

    if (n > 1) {
        const double fro = a.frobenius_norm();
        const double tol = 1e-14 * (fro > 0.0 ? fro : 1.0);
        const int max_sweeps = 60;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            if (offdiag_frobenius(a) <= tol) break;
            for (std::size_t p = 0; p + 1 < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                    if (std::abs(a(p, q)) > tol / static_cast<double>(n))
                        jacobi_rotate(a, v, p, q);
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    phase_normalize_columns(out.vectors);
    return out;
}

NormalEigenDecomposition normal_eig(const ComplexMatrix& w) {
    require(w.is_square(), "normal_eig: matrix must be square");
    const std::size_t n = w.rows();
    const ComplexMatrix wadj = w.adjoint();
    {
        // Normality check: ||W W^* - W^* W|| small relative to scale.
        const ComplexMatrix comm = w * wadj - wadj * w;
        const double scale = 1.0 + w.max_abs() * w.max_abs();
        require(comm.max_abs() <= 1e-8 * scale, "normal_eig: matrix is not normal");
    }
    const HermitianMatrix h1 = HermitianMatrix::symmetrize(w);
    const ComplexMatrix h2m = (cplx(0.0, -0.5)) * (w - wadj);
    const HermitianMatrix h2(h2m);

    EigenDecomposition e1 = hermitian_eig(h1);
    ComplexMatrix basis = e1.vectors;
    std::vector<cplx> eigs(n);

    const double scale = 1.0 + (e1.eigenvalues.empty()
                                    ? 0.0
                                    : std::max(std::abs(e1.eigenvalues.front()),
                                               std::abs(e1.eigenvalues.back())));
    const double cluster_tol = 1e-8 * scale;

    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && std::abs(e1.eigenvalues[stop] - e1.eigenvalues[stop - 1]) <= cluster_tol)
            ++stop;
        const std::size_t m = stop - start;
        if (m > 1) {
            // Compress H2 onto the cluster's eigenspace and diagonalize there.
            ComplexMatrix vc(n, m);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) vc(i, j) = basis(i, start + j);
            ComplexMatrix h2c = vc.adjoint() * (h2.matrix() * vc);
            EigenDecomposition sub = hermitian_eig(HermitianMatrix::symmetrize(h2c));
            ComplexMatrix rotated = vc * sub.vectors;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) basis(i, start + j) = rotated(i, j);
        }
        start = stop;
    }

    // Eigenvalues via Rayleigh quotients in the combined basis.
    for (std::size_t k = 0; k < n; ++k) {
        cplx lam(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            cplx wi(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) wi += w(i, j) * basis(j, k);
            lam += std::conj(basis(i, k)) * wi;
        }
        eigs[k] = lam;
    }
    phase_normalize_columns(basis);
    // Re-derive eigenvalues after phase normalization is unnecessary: phases
    // cancel in the Rayleigh quotient.
    return NormalEigenDecomposition{std::move(eigs), std::move(basis)};
}

} // namespace opmod
