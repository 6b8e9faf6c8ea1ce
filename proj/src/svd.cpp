#include "opmod/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opmod {

ComplexMatrix SvdResult::reconstruct(std::size_t rank) const {
    const std::size_t k = std::min(rank, values.size());
    ComplexMatrix r(u.rows(), v.rows());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < v.rows(); ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t m = 0; m < k; ++m) s += u(i, m) * values[m] * std::conj(v(j, m));
            r(i, j) = s;
        }
    return r;
}

SvdResult svd(const ComplexMatrix& t) {
    require(t.all_finite(), "svd: entries must be finite");
    const std::size_t rows = t.rows(), cols = t.cols();
    const std::size_t k = std::min(rows, cols);

    SvdResult out;
    out.u = ComplexMatrix(rows, k);
    out.v = ComplexMatrix(cols, k);
    out.values.assign(k, 0.0);
    if (k == 0) return out;

    // Gram matrix route: eigenvectors of T^*T are the right singular vectors.
    const ComplexMatrix gram = t.adjoint() * t;
    EigenDecomposition eig = hermitian_eig(HermitianMatrix::symmetrize(gram));

    std::vector<double> s(cols, 0.0);
    for (std::size_t j = 0; j < cols; ++j) s[j] = std::sqrt(std::max(0.0, eig.eigenvalues[j]));
    const double s0 = s.empty() ? 0.0 : s[0];
    const double zero_tol = 1e-12 * s0;

    for (std::size_t j = 0; j < k; ++j) {
        out.values[j] = (s[j] <= zero_tol) ? 0.0 : s[j];
        for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = eig.vectors(i, j);
    }

    // Left vectors: u_j = T v_j / s_j where s_j > 0; orthonormal completion
    // against the columns already present elsewhere.
    for (std::size_t j = 0; j < k; ++j) {
        if (out.values[j] > 0.0) {
            for (std::size_t i = 0; i < rows; ++i) {
                cplx acc(0.0, 0.0);
                for (std::size_t m = 0; m < cols; ++m) acc += t(i, m) * out.v(m, j);
                out.u(i, j) = acc / out.values[j];
            }
        } else {
            // Kernel column: pick a basis vector and orthogonalize.
            for (std::size_t trial = 0; trial < rows; ++trial) {
                for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = (i == trial) ? 1.0 : 0.0;
                for (std::size_t m = 0; m < j; ++m) {
                    cplx dot(0.0, 0.0);
                    for (std::size_t i = 0; i < rows; ++i) dot += std::conj(out.u(i, m)) * out.u(i, j);
                    for (std::size_t i = 0; i < rows; ++i) out.u(i, j) -= dot * out.u(i, m);
                }
                double nrm = 0.0;
                for (std::size_t i = 0; i < rows; ++i) nrm += std::norm(out.u(i, j));
                nrm = std::sqrt(nrm);
                if (nrm > 0.5) {
                    for (std::size_t i = 0; i < rows; ++i) out.u(i, j) /= nrm;
                    break;
                }
            }
        }
    }
    return out;
}

SingularValueList singular_values(const ComplexMatrix& t) {
    SvdResult r = svd(t);
    return SingularValueList{std::move(r.values)};
}

double operator_norm(const ComplexMatrix& t) { return singular_values(t).operator_norm(); }

double schatten_norm(const ComplexMatrix& t, double p) {
    if (!(p > 0.0)) throw invalid_parameter("schatten_norm: p must be positive or infinity");
    const SingularValueList sv = singular_values(t);
    if (std::isinf(p)) return sv.operator_norm();
    if (sv.values.empty()) return 0.0;
    const double s0 = sv.values.front();
    if (s0 == 0.0) return 0.0;
    // Scale by s_0 to keep s^p in range for small/large p.
    double acc = 0.0;
    for (double s : sv.values)
        if (s > 0.0) acc += std::pow(s / s0, p);
    return s0 * std::pow(acc, 1.0 / p);
}

double kyfan_norm(const ComplexMatrix& t, double p, std::size_t l) {
    if (!(p >= 1.0)) throw invalid_parameter("kyfan_norm: p must be >= 1");
    const std::size_t k = std::min(t.rows(), t.cols());
    if (l >= k) throw invalid_parameter("kyfan_norm: l out of range");
    const SingularValueList sv = singular_values(t);
    const double s0 = sv.values.front();
    if (s0 == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j <= l; ++j) acc += std::pow(sv.values[j] / s0, p);
    return s0 * std::pow(acc, 1.0 / p);
}

S1lSplit optimal_s1l_split(const ComplexMatrix& t, std::size_t l) {
    const std::size_t k = std::min(t.rows(), t.cols());
    if (l >= k) throw invalid_parameter("optimal_s1l_split: l out of range");
    SvdResult dec = svd(t);
    const double clip = dec.values[l];

    SvdResult part1 = dec, part2 = dec;
    double trace1 = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        part2.values[j] = std::min(dec.values[j], clip);
        part1.values[j] = dec.values[j] - part2.values[j];
        trace1 += part1.values[j];
    }
    S1lSplit out;
    out.t1 = part1.reconstruct(k);
    // T2 as the exact residual so T1 + T2 == T entrywise.
    out.t2 = t - out.t1;
    out.cost = trace1 + static_cast<double>(l + 1) * clip;
    return out;
}

} // namespace opmod
