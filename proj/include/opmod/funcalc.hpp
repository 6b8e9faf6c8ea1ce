#pragma once

#include <utility>
#include <vector>

#include "opmod/besov.hpp"
#include "opmod/eig.hpp"
#include "opmod/matrix.hpp"
#include "opmod/scalar_function.hpp"

namespace opmod {

/// f(A) = U f(Lambda) U^* through the Hermitian eigendecomposition.
ComplexMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a);

/// (Delta_K^m f)(A) = sum_{j=0}^m (-1)^{m-j} binom(m,j) f(A + jK).
ComplexMatrix finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                const HermitianMatrix& k, int m);

/// Returns the pair (f(A)R - Rf(B), AR - RB).
std::pair<ComplexMatrix, ComplexMatrix> quasicommutator(const ScalarFunction& f,
                                                        const HermitianMatrix& a,
                                                        const HermitianMatrix& b,
                                                        const ComplexMatrix& r);

/// M(f) = { (f(lambda_j) - f(mu_k)) / (lambda_j - mu_k) }; the derivative
/// extends coincident nodes, else coincident_node_error.
ComplexMatrix divided_difference_matrix(const ScalarFunction& f, const std::vector<double>& lambda,
                                        const std::vector<double>& mu);

// Finite atomic combination g = sum lambda_i Delta_{h_i}^{m_i} delta_{a_i}.
struct AtomicMeasure {
    struct Atom {
        double location = 0.0; // a
        double step = 1.0;     // h > 0
        int order = 1;         // m >= 1
        cplx weight = 1.0;     // lambda
    };
    std::vector<Atom> atoms;
};

/// Q_{A,K}^g f = sum over atoms of
/// lambda * sum_{j=0}^m (-1)^{m-j} binom(m,j) f(A - aK + jhK).
ComplexMatrix atomic_operator(const ScalarFunction& f, const HermitianMatrix& a,
                              const HermitianMatrix& k, const AtomicMeasure& g);

/// f(U) = sum_{k=-d}^{d} c_k U^k by repeated multiplication (no
/// diagonalization); U must be unitary to 1e-9.
ComplexMatrix apply_trig_polynomial(const std::vector<cplx>& coeffs, const ComplexMatrix& u);

// A = arg(V U^{-1}) with arg(e^{is}) = s in [-pi, pi); satisfies e^{iA}U = V
// and 2 sin(||A||/2) = ||U - V||.  branch_boundary flags an eigenvalue of
// VU^{-1} within 1e-10 of -1 (the -pi branch cut).
struct UnitaryLogResult {
    HermitianMatrix arg;
    bool branch_boundary = false;
};

UnitaryLogResult unitary_log_arg(const ComplexMatrix& u, const ComplexMatrix& v);

// ----- Littlewood-Paley forms of the finite difference -----

struct NRange {
    int lo = 0;
    int hi = 0;
};

struct AnalysisWindow {
    double half_width = 64.0; // L
    std::size_t points = 4096; // N, power of two
    /// Relative spectral l1 mass allowed in the top 1/16 of the band before
    /// the sampling is declared aliased.
    double aliasing_tol = 1e-3;
};

struct LitPaleyResult {
    ComplexMatrix value;
    std::vector<double> term_norms; // ||(Delta_K^m f_n)(A)|| per n
    std::vector<int> n_values;
};

/// Dyadic range holding all blocks with >= 1e-10 of the sampled spectral
/// mass (l1).  Empty spectra give an empty {0, -1} range.
NRange auto_n_range(const SampledFunction& f, const LPKernelBank& bank);

/// (Delta_K^m f)(A) as the Littlewood-Paley series
/// sum_n (Delta_K^m f_n)(A), f_n = f*W_n + f*W_n^sharp, over n in `range`.
LitPaleyResult litpaley_finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                          const HermitianMatrix& k, int m,
                                          const LPKernelBank& bank, NRange range,
                                          const AnalysisWindow& win);

/// Same, with the block range chosen by auto_n_range.
LitPaleyResult litpaley_finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                          const HermitianMatrix& k, int m,
                                          const LPKernelBank& bank, const AnalysisWindow& win);

/// Split form: sum_{n<=N} (Delta_K^m f_n)(A) + (Delta_K^m (f - f*V_N))(A).
/// The result does not depend on N (within spectral-truncation error).
ComplexMatrix split_finite_difference(const ScalarFunction& f, const HermitianMatrix& a,
                                      const HermitianMatrix& k, int m, const LPKernelBank& bank,
                                      int cutoff, const AnalysisWindow& win);

} // namespace opmod
