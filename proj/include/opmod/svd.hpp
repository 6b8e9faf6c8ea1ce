#pragma once

#include <vector>

#include "opmod/eig.hpp"
#include "opmod/matrix.hpp"

namespace opmod {

// Singular values s_0 >= s_1 >= ... >= 0; values below 1e-12 * s_0 are
// reported as exact zeros so rank decisions are stable.
struct SingularValueList {
    std::vector<double> values;

    double operator_norm() const { return values.empty() ? 0.0 : values.front(); }
};

struct SvdResult {
    ComplexMatrix u;             // rows x k, k = min(rows, cols)
    std::vector<double> values;  // nonincreasing
    ComplexMatrix v;             // cols x k; T = U diag(s) V^*

    ComplexMatrix reconstruct(std::size_t rank) const;
};

/// Full SVD computed as the Hermitian eigendecomposition of T^*T with
/// normalized left vectors (orthonormal completion on the kernel).
SvdResult svd(const ComplexMatrix& t);

SingularValueList singular_values(const ComplexMatrix& t);

/// Operator (spectral) norm: s_0(T).
double operator_norm(const ComplexMatrix& t);

/// ||T||_{S_p} = (sum s_j^p)^{1/p} for p in (0, inf); s_0 for p = inf.
/// Pass p = infinity() for the operator norm.  p <= 0 is rejected.
double schatten_norm(const ComplexMatrix& t, double p);

/// ||T||_{S_p^l} = (sum_{j<=l} s_j^p)^{1/p}; requires p >= 1 and
/// l < min(rows, cols).
double kyfan_norm(const ComplexMatrix& t, double p, std::size_t l);

// T = T1 + T2 with ||T1||_{S_1} + (l+1) ||T2|| equal to ||T||_{S_1^l}:
// singular values of T are clipped at level s_l, T2 carrying min(s_j, s_l)
// and T1 the excess, on shared singular vectors.
struct S1lSplit {
    ComplexMatrix t1;
    ComplexMatrix t2;
    double cost; // ||T1||_{S_1} + (l+1) ||T2||
};

S1lSplit optimal_s1l_split(const ComplexMatrix& t, std::size_t l);

} // namespace opmod
