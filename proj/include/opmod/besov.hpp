#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "opmod/matrix.hpp"
#include "opmod/scalar_function.hpp"

namespace opmod {

/// Thrown when a requested dyadic block (or analysis) is not resolvable on
/// the sampling grid.
class aliasing_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Uniform complex samples on [-L, L), x_j = -L + 2Lj/N, N a power of two,
// with periodic-extension semantics for all spectral operations.
struct SampledFunction {
    double half_width = 1.0; // L
    std::vector<cplx> values;

    SampledFunction() = default;
    SampledFunction(double L, std::vector<cplx> vals);

    static SampledFunction sample(const ScalarFunction& f, double L, std::size_t N);

    std::size_t size() const { return values.size(); }
    double grid_step() const { return 2.0 * half_width / static_cast<double>(size()); }
    double grid_point(std::size_t j) const {
        return -half_width + 2.0 * half_width * static_cast<double>(j) / static_cast<double>(size());
    }
    /// pi * N / (2L): largest frequency magnitude the grid resolves.
    double nyquist() const;
    double max_abs() const;
};

// A finite trigonometric series sum_k c_k e^{i xi_k x}: the meshless carrier
// every spectral operation can hand to the functional calculus.  Obtained
// from a SampledFunction via DFT (then exact on the grid and evaluable at
// arbitrary real points as the band-limited periodic interpolant).
struct TrigSeries {
    std::vector<double> freqs;
    std::vector<cplx> coeffs;

    cplx eval(double x) const;
    double sup_bound() const; // sum |c_k| >= sup |f|
};

/// DFT of the samples reindexed to signed frequencies xi_k = pi k / L,
/// k = -N/2 .. N/2-1, coefficient normalized so samples are reproduced.
TrigSeries analyze(const SampledFunction& f);

/// Inverse of analyze on the same grid.
SampledFunction synthesize(const TrigSeries& s, double L, std::size_t N);

// Littlewood-Paley generator pair: a smooth bump w >= 0 supported in
// [1/2, 2] with w(x) = 1 - w(x/2) on [1, 2], and the induced low-pass
// profile v = 1 on [-1, 1], v(x) = w(|x|) for |x| >= 1.
struct LPKernelBank {
    std::function<double(double)> w;
    std::function<double(double)> v;
    std::string name;
};

/// The default bank: exponential smooth step g(t) = h(t)/(h(t)+h(1-t)),
/// h(t) = exp(-1/t); w(x) = g(2x-1) on [1/2,1], 1-g(x-1) on [1,2].
LPKernelBank build_kernel_bank();

/// Cosine-squared step variant, used only for kernel-independence checks.
LPKernelBank build_kernel_bank_cos();

/// f*W_n (positive-frequency block) and f*W_n^sharp (mirror block) via
/// discrete spectral multiplication by w(+-xi/2^n).
std::pair<SampledFunction, SampledFunction> dyadic_block(const SampledFunction& f, int n,
                                                         const LPKernelBank& bank);

/// de la Vallee Poussin approximation f*V_n: spectral multiplication by
/// v(xi/2^n); identity on |xi| <= 2^n.
SampledFunction vn_approx(const SampledFunction& f, int n, const LPKernelBank& bank);

/// w_{f,m}(x) = sup_{0<h<=x} ||Delta_h^m f||_inf over grid-aligned h.
double modulus_of_continuity(const SampledFunction& f, int m, double x);

struct HolderZygmundNorm {
    double difference_based = 0.0; // sup_t ||Delta_t^m f|| / t^alpha
    double dyadic = 0.0;           // sup_n 2^{n alpha} (||f*W_n|| + ||f*W_n^sharp||)
    int m = 1;                     // m - 1 <= alpha < m
};

HolderZygmundNorm holder_zygmund_norm(const SampledFunction& f, double alpha,
                                      const LPKernelBank& bank);

// Modulus of continuity of order m: nondecreasing, omega(2x) <= 2^m omega(x),
// omega -> 0 at 0.  Validated on a 1000-point log grid at construction.
struct ModulusFunction {
    std::function<double(double)> eval;
    int order = 1;
    std::string tag;

    ModulusFunction(std::function<double(double)> f, int m, std::string tag_ = "");
    double operator()(double x) const { return eval(x); }
};

/// ||f||_{Lambda_omega} (m = 1) or ||f||_{Lambda_{omega,m}} (m >= 2):
/// grid supremum of ||Delta_t^m f||_inf / omega(t).
double lambda_omega_norm(const SampledFunction& f, const ModulusFunction& omega);

/// omega_{*,m}(x) = x^m int_x^inf omega(t)/t^{m+1} dt via adaptive Simpson on
/// [x, 2^20 x] plus a power-law tail estimate; returns +inf when the measured
/// growth reaches the divergent t^m rate.
double omega_star(const ModulusFunction& omega, int m, double x);

/// Binomial difference on the grid with wrap: (Delta_{s*step}^m f)(x_j).
cplx grid_difference(const SampledFunction& f, std::size_t j, std::size_t shift, int m);

} // namespace opmod
