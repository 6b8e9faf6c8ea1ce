#pragma once

#include <map>
#include <vector>

#include "opmod/matrix.hpp"
#include "opmod/scalar_function.hpp"

namespace opmod {

// Finite exponential sum sum_k c_k e^{i t_k x} with |t_k| <= sigma: the
// computable model of E_sigma cap L^inf.
struct BandLimitedFunction {
    struct Term {
        double freq = 0.0;
        cplx coeff = 0.0;
    };
    double sigma = 1.0;
    std::vector<Term> terms;

    BandLimitedFunction(double type, std::vector<Term> ts);

    cplx eval(double x) const;
    cplx eval(cplx z) const;

    /// As a ScalarFunction for the operator calculus.
    ScalarFunction as_scalar_function() const;

    /// Delta_h^m f: same frequencies, coefficients scaled by (e^{i t h}-1)^m.
    BandLimitedFunction difference(double h, int m) const;
};

/// beta_sigma(delta): 2 sin(sigma delta / 2) for 0 <= delta <= pi/sigma,
/// else 2.
double beta(double sigma, double delta);

// sup_R |f|.  For an exponential sum with pairwise-distinct frequencies this
// equals sum |c_k| (phases align along a Kronecker flow; exact for <= 2
// terms and almost surely for generic frequency draws).  Duplicated
// frequencies are merged first.
double sup_norm(const BandLimitedFunction& f);

/// Grid + golden-section certification of sup_norm: scans `window_periods`
/// quasi-periods at step pi/(16 sigma) and polishes local maxima.  Returns a
/// lower bound on the sup; used as the independent cross-check.
double sup_norm_grid(const BandLimitedFunction& f, double window_periods = 64.0);

/// Worst over h_grid and a dense x-grid of
/// |Delta_h^m f(x)| / (beta_sigma^m(|h|) ||f||_inf).
double verify_scalar_bernstein(const BandLimitedFunction& f, int m,
                               const std::vector<double>& h_grid);

/// Truncated cardinal series
/// F(z) ~= sum_{|k|<=K} (-1)^{k+1} F(pi/2 + pi k) cos z / (z - pi/2 - pi k).
cplx cardinal_reconstruct(const std::map<long, cplx>& samples, long truncation, cplx z);

struct BoundPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = ||f(A) - f(B)||, rhs = beta_sigma(||A-B||) * ||f||_inf.
BoundPair verify_operator_bernstein(const BandLimitedFunction& f, const HermitianMatrix& a,
                                    const HermitianMatrix& b);

/// lhs = ||(Delta_K^m f)(A)||, rhs = beta_sigma^m(||K||) * ||f||_inf.
BoundPair verify_operator_bernstein_difference(const BandLimitedFunction& f,
                                               const HermitianMatrix& a, const HermitianMatrix& k,
                                               int m);

/// lhs = ||f(A)R - Rf(B)||_{S_p}, rhs = sigma ||f||_inf ||AR - RB||_{S_p}.
BoundPair verify_quasicommutator_bernstein(const BandLimitedFunction& f, const HermitianMatrix& a,
                                           const HermitianMatrix& b, const ComplexMatrix& r,
                                           double p);

// Trigonometric polynomial sum_{k=-d}^{d} c_k z^k on the circle.
struct TrigPolynomial {
    int degree = 0;
    std::vector<cplx> coeffs; // length 2d+1, c_{-d}..c_d

    TrigPolynomial(int d, std::vector<cplx> cs);

    cplx eval_circle(double theta) const;

    /// sup over the circle: 4096-point grid plus golden-section refinement.
    double sup_circle() const;
};

struct UnitaryBernsteinBounds {
    double lhs = 0.0;        // ||f(U) - f(V)||
    double rhs_sharp = 0.0;  // beta_d(2 arcsin(||U-V||/2))
    double rhs_linear = 0.0; // d ||U - V||
};

/// Thm: ||f(U)-f(V)|| <= beta_d(2 arcsin(||U-V||/2)) <= d ||U-V|| for
/// |f| <= 1 on the circle.  Caller normalizes f.
UnitaryBernsteinBounds verify_unitary_bernstein(const TrigPolynomial& f, const ComplexMatrix& u,
                                                const ComplexMatrix& v);

} // namespace opmod
