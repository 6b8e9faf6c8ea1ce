#include "opmod/besov.hpp"

#include <algorithm>
#include <cmath>

#include "opmod/fft.hpp"

namespace opmod {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double binomial(int m, int j) {
    double b = 1.0;
    for (int i = 0; i < j; ++i) b = b * static_cast<double>(m - i) / static_cast<double>(i + 1);
    return b;
}

} // namespace

SampledFunction::SampledFunction(double L, std::vector<cplx> vals)
    : half_width(L), values(std::move(vals)) {
    if (!(half_width > 0.0)) throw invalid_parameter("SampledFunction: L must be positive");
    if (!is_pow2(values.size()))
        throw invalid_parameter("SampledFunction: N must be a power of two");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw invalid_input("SampledFunction: values must be finite");
}

SampledFunction SampledFunction::sample(const ScalarFunction& f, double L, std::size_t N) {
    std::vector<cplx> vals(N);
    for (std::size_t j = 0; j < N; ++j)
        vals[j] = f(-L + 2.0 * L * static_cast<double>(j) / static_cast<double>(N));
    return SampledFunction(L, std::move(vals));
}

double SampledFunction::nyquist() const {
    return M_PI * static_cast<double>(size()) / (2.0 * half_width);
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

cplx TrigSeries::eval(double x) const {
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < freqs.size(); ++k)
        acc += coeffs[k] * std::polar(1.0, freqs[k] * x);
    return acc;
}

double TrigSeries::sup_bound() const {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::abs(c);
    return s;
}

TrigSeries analyze(const SampledFunction& f) {
    const std::size_t n = f.size();
    const std::vector<cplx> raw = fft_forward(f.values);
    TrigSeries out;
    out.freqs.resize(n);
    out.coeffs.resize(n);
    const double base = M_PI / f.half_width;
    for (std::size_t k = 0; k < n; ++k) {
        const long signed_k =
            (k < n / 2) ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        out.freqs[k] = base * static_cast<double>(signed_k);
        // Grid origin is -L, so the plain DFT coefficient picks up (-1)^k
        // relative to the e^{i xi x} basis.
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out.coeffs[k] = raw[k] * (sign / static_cast<double>(n));
    }
    return out;
}

SampledFunction synthesize(const TrigSeries& s, double L, std::size_t N) {
    if (s.freqs.size() != N)
        throw invalid_parameter("synthesize: series size must match grid size");
    std::vector<cplx> raw(N);
    for (std::size_t k = 0; k < N; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        raw[k] = s.coeffs[k] * sign * static_cast<double>(N);
    }
    auto vals = fft_inverse(raw);
    return SampledFunction(L, std::move(vals));
}

namespace {

double smooth_step_exp(double t) {
    auto h = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = h(t), b = h(1.0 - t);
    return a / (a + b);
}

double smooth_step_cos(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double s = std::sin(0.5 * M_PI * t);
    return s * s;
}

LPKernelBank bank_from_step(std::function<double(double)> g, std::string name) {
    auto w = [g](double x) -> double {
        if (x <= 0.5 || x >= 2.0) return 0.0;
        if (x <= 1.0) return g(2.0 * x - 1.0);
        return 1.0 - g(x - 1.0);
    };
    auto v = [w](double x) -> double {
        const double a = std::abs(x);
        if (a <= 1.0) return 1.0;
        return w(a);
    };
    return LPKernelBank{w, v, std::move(name)};
}

} // namespace

LPKernelBank build_kernel_bank() { return bank_from_step(smooth_step_exp, "exp-step"); }

LPKernelBank build_kernel_bank_cos() { return bank_from_step(smooth_step_cos, "cos2-step"); }

std::pair<SampledFunction, SampledFunction> dyadic_block(const SampledFunction& f, int n,
                                                         const LPKernelBank& bank) {
    const double scale = std::ldexp(1.0, n); // 2^n
    if (2.0 * scale > f.nyquist())
        throw aliasing_error("dyadic_block: block " + std::to_string(n) +
                             " not resolvable on this grid");
    TrigSeries s = analyze(f);
    TrigSeries pos = s, neg = s;
    for (std::size_t k = 0; k < s.freqs.size(); ++k) {
        const double xi = s.freqs[k];
        pos.coeffs[k] *= (xi > 0.0) ? bank.w(xi / scale) : 0.0;
        neg.coeffs[k] *= (xi < 0.0) ? bank.w(-xi / scale) : 0.0;
    }
    return {synthesize(pos, f.half_width, f.size()), synthesize(neg, f.half_width, f.size())};
}

SampledFunction vn_approx(const SampledFunction& f, int n, const LPKernelBank& bank) {
    const double scale = std::ldexp(1.0, n);
    if (2.0 * scale > f.nyquist())
        throw aliasing_error("vn_approx: level " + std::to_string(n) +
                             " not resolvable on this grid");
    TrigSeries s = analyze(f);
    for (std::size_t k = 0; k < s.freqs.size(); ++k) s.coeffs[k] *= bank.v(s.freqs[k] / scale);
    return synthesize(s, f.half_width, f.size());
}

cplx grid_difference(const SampledFunction& f, std::size_t j, std::size_t shift, int m) {
    const std::size_t n = f.size();
    cplx acc(0.0, 0.0);
    for (int i = 0; i <= m; ++i) {
        const double sgn = ((m - i) % 2 == 0) ? 1.0 : -1.0;
        acc += sgn * binomial(m, i) * f.values[(j + shift * static_cast<std::size_t>(i)) % n];
    }
    return acc;
}

namespace {

// Windowed supremum: only differences staying inside [-L, L) count, so a
// non-periodic sample (f(x) = x, say) is not charged for the wrap seam.
double sup_difference(const SampledFunction& f, std::size_t shift, int m) {
    const std::size_t reach = shift * static_cast<std::size_t>(m);
    if (reach >= f.size()) return 0.0;
    double best = 0.0;
    for (std::size_t j = 0; j + reach < f.size(); ++j)
        best = std::max(best, std::abs(grid_difference(f, j, shift, m)));
    return best;
}

} // namespace

double modulus_of_continuity(const SampledFunction& f, int m, double x) {
    if (m < 1) throw invalid_parameter("modulus_of_continuity: m must be >= 1");
    const double window = 2.0 * f.half_width;
    if (!(x > 0.0) || x > window / static_cast<double>(m + 1))
        throw invalid_parameter("modulus_of_continuity: x out of range for this window");
    const double step = f.grid_step();
    const auto max_shift = static_cast<std::size_t>(std::floor(x / step + 1e-12));
    double best = 0.0;
    for (std::size_t s = 1; s <= max_shift; ++s) best = std::max(best, sup_difference(f, s, m));
    return best;
}

HolderZygmundNorm holder_zygmund_norm(const SampledFunction& f, double alpha,
                                      const LPKernelBank& bank) {
    if (!(alpha > 0.0)) throw invalid_parameter("holder_zygmund_norm: alpha must be positive");
    HolderZygmundNorm out;
    out.m = static_cast<int>(std::floor(alpha)) + 1;

    const double step = f.grid_step();
    const double window = 2.0 * f.half_width;
    const auto max_shift =
        static_cast<std::size_t>(std::floor(window / (static_cast<double>(out.m + 1) * step)));
    for (std::size_t s = 1; s <= max_shift; ++s) {
        const double h = static_cast<double>(s) * step;
        out.difference_based =
            std::max(out.difference_based, sup_difference(f, s, out.m) / std::pow(h, alpha));
    }

    // Dyadic seminorm over every block the grid resolves.
    const double lowest = M_PI / f.half_width;
    const int n_min = static_cast<int>(std::floor(std::log2(lowest))) - 1;
    const int n_max = static_cast<int>(std::floor(std::log2(f.nyquist() / 2.0)));
    for (int n = n_min; n <= n_max; ++n) {
        auto [pos, neg] = dyadic_block(f, n, bank);
        const double level = std::ldexp(1.0, n);
        out.dyadic =
            std::max(out.dyadic, std::pow(level, alpha) * (pos.max_abs() + neg.max_abs()));
    }
    return out;
}

ModulusFunction::ModulusFunction(std::function<double(double)> f, int m, std::string tag_)
    : eval(std::move(f)), order(m), tag(std::move(tag_)) {
    if (order < 1) throw invalid_parameter("ModulusFunction: order must be >= 1");
    // Validate on a log grid: nondecreasing, omega(2x) <= 2^m omega(x),
    // vanishing toward 0.
    const int points = 1000;
    const double lo = std::ldexp(1.0, -30), hi = std::ldexp(1.0, 10);
    double prev = -1.0;
    const double doubling = std::ldexp(1.0, order);
    for (int i = 0; i < points; ++i) {
        const double x = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
        const double y = eval(x);
        if (!(y > 0.0) || !std::isfinite(y))
            throw invalid_parameter("ModulusFunction: must be positive and finite on (0,inf)");
        if (y < prev * (1.0 - 1e-12))
            throw invalid_parameter("ModulusFunction: must be nondecreasing");
        if (eval(2.0 * x) > doubling * y * (1.0 + 1e-9))
            throw invalid_parameter("ModulusFunction: omega(2x) <= 2^m omega(x) violated");
        prev = std::max(prev, y);
    }
    if (!(eval(lo) <= 0.5 * eval(hi)))
        throw invalid_parameter("ModulusFunction: must vanish toward 0");
}

double lambda_omega_norm(const SampledFunction& f, const ModulusFunction& omega) {
    const int m = omega.order;
    const double step = f.grid_step();
    const double window = 2.0 * f.half_width;
    const auto max_shift =
        static_cast<std::size_t>(std::floor(window / (static_cast<double>(m + 1) * step)));
    double best = 0.0;
    for (std::size_t s = 1; s <= max_shift; ++s) {
        const double t = static_cast<double>(s) * step;
        best = std::max(best, sup_difference(f, s, m) / omega(t));
    }
    return best;
}

namespace {

double simpson(const std::function<double(double)>& g, double a, double b) {
    return (b - a) / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double eps,
                        double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = simpson(g, a, mid);
    const double right = simpson(g, mid, b);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(g, a, mid, 0.5 * eps, left, depth - 1) +
           adaptive_simpson(g, mid, b, 0.5 * eps, right, depth - 1);
}

} // namespace

double omega_star(const ModulusFunction& omega, int m, double x) {
    if (!(x > 0.0)) throw invalid_parameter("omega_star: x must be positive");
    auto integrand = [&](double t) { return omega(t) / std::pow(t, m + 1); };

    // Octave-by-octave quadrature over [x, 2^20 x].
    const int octaves = 20;
    double integral = 0.0;
    double a = x;
    for (int i = 0; i < octaves; ++i) {
        const double b = 2.0 * a;
        const double rough = simpson(integrand, a, b);
        integral += adaptive_simpson(integrand, a, b, 1e-9 * std::abs(rough) + 1e-300, rough, 40);
        a = b;
    }

    // Tail: fit the local growth exponent on the last octave; the doubling
    // bound caps it at m, and exponent m means log-divergence.
    const double x_max = a;
    const double p_est = std::log2(omega(x_max) / omega(0.5 * x_max));
    if (p_est >= static_cast<double>(m) - 1e-6) return std::numeric_limits<double>::infinity();
    integral += omega(x_max) / ((static_cast<double>(m) - p_est) * std::pow(x_max, m));

    return std::pow(x, m) * integral;
}

} // namespace opmod
