#include "opmod/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "opmod/funcalc.hpp"
#include "opmod/svd.hpp"

namespace opmod {

BandLimitedFunction::BandLimitedFunction(double type, std::vector<Term> ts)
    : sigma(type), terms(std::move(ts)) {
    if (!(sigma > 0.0)) throw invalid_parameter("BandLimitedFunction: sigma must be positive");
    for (const auto& t : terms)
        if (std::abs(t.freq) > sigma * (1.0 + 1e-12))
            throw invalid_parameter("BandLimitedFunction: |frequency| exceeds the type");
}

cplx BandLimitedFunction::eval(double x) const {
    cplx acc(0.0, 0.0);
    for (const auto& t : terms) acc += t.coeff * std::polar(1.0, t.freq * x);
    return acc;
}

cplx BandLimitedFunction::eval(cplx z) const {
    cplx acc(0.0, 0.0);
    for (const auto& t : terms) acc += t.coeff * std::exp(cplx(0.0, t.freq) * z);
    return acc;
}

ScalarFunction BandLimitedFunction::as_scalar_function() const {
    auto copy = *this;
    auto ev = [copy](double x) { return copy.eval(x); };
    auto dv = [copy](double x) {
        cplx acc(0.0, 0.0);
        for (const auto& t : copy.terms)
            acc += t.coeff * cplx(0.0, t.freq) * std::polar(1.0, t.freq * x);
        return acc;
    };
    return {ev, dv, "bandlimited"};
}

BandLimitedFunction BandLimitedFunction::difference(double h, int m) const {
    auto out = *this;
    for (auto& t : out.terms) {
        const cplx factor = std::polar(1.0, t.freq * h) - cplx(1.0, 0.0);
        cplx pw(1.0, 0.0);
        for (int i = 0; i < m; ++i) pw *= factor;
        t.coeff *= pw;
    }
    return out;
}

double beta(double sigma, double delta) {
    if (!(sigma > 0.0)) throw invalid_parameter("beta: sigma must be positive");
    if (delta < 0.0) throw invalid_parameter("beta: delta must be nonnegative");
    if (delta > M_PI / sigma) return 2.0;
    return 2.0 * std::sin(0.5 * sigma * delta);
}

double sup_norm(const BandLimitedFunction& f) {
    if (f.terms.empty()) throw invalid_parameter("sup_norm: empty term list");
    // Merge equal frequencies, then the phases of the remaining distinct
    // frequencies align along the orbit closure and the sup is the l1 mass.
    std::map<double, cplx> merged;
    for (const auto& t : f.terms) merged[t.freq] += t.coeff;
    double s = 0.0;
    for (const auto& [freq, c] : merged) s += std::abs(c);
    return s;
}

namespace {

double golden_refine(const std::function<double(double)>& g, double a, double b) {
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = g(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

double sup_norm_grid(const BandLimitedFunction& f, double window_periods) {
    if (f.terms.empty()) throw invalid_parameter("sup_norm_grid: empty term list");
    double sigma_eff = 0.0;
    for (const auto& t : f.terms) sigma_eff = std::max(sigma_eff, std::abs(t.freq));
    if (sigma_eff == 0.0) return std::abs(f.eval(0.0));
    auto g = [&](double x) { return std::abs(f.eval(x)); };
    const double step = M_PI / (16.0 * sigma_eff);
    const double window = window_periods * 2.0 * M_PI / sigma_eff;
    const auto samples = static_cast<std::size_t>(window / step);
    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i <= samples; ++i) {
        const double v = g(static_cast<double>(i) * step);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double center = static_cast<double>(best_i) * step;
    return std::max(best, golden_refine(g, center - step, center + step));
}

double verify_scalar_bernstein(const BandLimitedFunction& f, int m,
                               const std::vector<double>& h_grid) {
    if (m < 1) throw invalid_parameter("verify_scalar_bernstein: m must be >= 1");
    const double denom_sup = sup_norm(f);
    if (denom_sup == 0.0) return 0.0;
    double sigma_eff = 0.0;
    for (const auto& t : f.terms) sigma_eff = std::max(sigma_eff, std::abs(t.freq));
    double worst = 0.0;
    for (double h : h_grid) {
        const double b = beta(f.sigma, std::abs(h));
        const double denom = std::pow(b, m) * denom_sup;
        if (denom == 0.0) continue;
        const BandLimitedFunction d = f.difference(h, m);
        // Dense x-grid over several base periods plus refinement.
        const double step =
            (sigma_eff > 0.0) ? M_PI / (16.0 * sigma_eff) : 1.0;
        double num = 0.0;
        std::size_t best_i = 0;
        const std::size_t samples = 4096;
        for (std::size_t i = 0; i <= samples; ++i) {
            const double v = std::abs(d.eval(static_cast<double>(i) * step));
            if (v > num) {
                num = v;
                best_i = i;
            }
        }
        auto g = [&](double x) { return std::abs(d.eval(x)); };
        const double center = static_cast<double>(best_i) * step;
        num = std::max(num, golden_refine(g, center - step, center + step));
        worst = std::max(worst, num / denom);
    }
    return worst;
}

cplx cardinal_reconstruct(const std::map<long, cplx>& samples, long truncation, cplx z) {
    if (truncation < 0) throw invalid_parameter("cardinal_reconstruct: K must be >= 0");
    // At a node the series degenerates; return the sample itself.
    for (const auto& [k, v] : samples) {
        const cplx node(M_PI_2 + M_PI * static_cast<double>(k), 0.0);
        if (std::abs(z - node) < 1e-12) return v;
    }
    const cplx cz = std::cos(z);
    cplx acc(0.0, 0.0);
    for (long k = -truncation; k <= truncation; ++k) {
        const auto it = samples.find(k);
        if (it == samples.end()) continue;
        const double sign = (k % 2 == 0) ? -1.0 : 1.0; // (-1)^{k+1}
        const cplx node(M_PI_2 + M_PI * static_cast<double>(k), 0.0);
        acc += sign * it->second * cz / (z - node);
    }
    return acc;
}

BoundPair verify_operator_bernstein(const BandLimitedFunction& f, const HermitianMatrix& a,
                                    const HermitianMatrix& b) {
    require(a.size() == b.size(), "verify_operator_bernstein: size mismatch");
    const ScalarFunction sf = f.as_scalar_function();
    const double lhs = operator_norm(apply_function(sf, a) - apply_function(sf, b));
    const double dist = operator_norm(a.matrix() - b.matrix());
    return {lhs, beta(f.sigma, dist) * sup_norm(f)};
}

BoundPair verify_operator_bernstein_difference(const BandLimitedFunction& f,
                                               const HermitianMatrix& a, const HermitianMatrix& k,
                                               int m) {
    require(a.size() == k.size(), "verify_operator_bernstein_difference: size mismatch");
    const ScalarFunction sf = f.as_scalar_function();
    const double lhs = operator_norm(finite_difference(sf, a, k, m));
    const double kn = operator_norm(k.matrix());
    return {lhs, std::pow(beta(f.sigma, kn), m) * sup_norm(f)};
}

BoundPair verify_quasicommutator_bernstein(const BandLimitedFunction& f, const HermitianMatrix& a,
                                           const HermitianMatrix& b, const ComplexMatrix& r,
                                           double p) {
    const ScalarFunction sf = f.as_scalar_function();
    auto [lhs_m, rhs_m] = quasicommutator(sf, a, b, r);
    return {schatten_norm(lhs_m, p), f.sigma * sup_norm(f) * schatten_norm(rhs_m, p)};
}

TrigPolynomial::TrigPolynomial(int d, std::vector<cplx> cs) : degree(d), coeffs(std::move(cs)) {
    if (d < 0) throw invalid_parameter("TrigPolynomial: degree must be >= 0");
    if (coeffs.size() != 2 * static_cast<std::size_t>(d) + 1)
        throw invalid_parameter("TrigPolynomial: coefficient list must have length 2d+1");
}

cplx TrigPolynomial::eval_circle(double theta) const {
    cplx acc(0.0, 0.0);
    for (int k = -degree; k <= degree; ++k)
        acc += coeffs[static_cast<std::size_t>(k + degree)] * std::polar(1.0, k * theta);
    return acc;
}

double TrigPolynomial::sup_circle() const {
    auto g = [&](double th) { return std::abs(eval_circle(th)); };
    const std::size_t n = 4096;
    double best = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = g(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    const double step = 2.0 * M_PI / static_cast<double>(n);
    const double center = static_cast<double>(best_i) * step;
    return std::max(best, golden_refine(g, center - step, center + step));
}

UnitaryBernsteinBounds verify_unitary_bernstein(const TrigPolynomial& f, const ComplexMatrix& u,
                                                const ComplexMatrix& v) {
    require(u.rows() == v.rows() && u.is_square() && v.is_square(),
            "verify_unitary_bernstein: size mismatch");
    const ComplexMatrix fu = apply_trig_polynomial(f.coeffs, u);
    const ComplexMatrix fv = apply_trig_polynomial(f.coeffs, v);
    UnitaryBernsteinBounds out;
    out.lhs = operator_norm(fu - fv);
    const double dist = std::min(2.0, operator_norm(u - v));
    const double d = static_cast<double>(f.degree);
    out.rhs_linear = d * dist;
    out.rhs_sharp = (f.degree == 0) ? 0.0 : beta(d, 2.0 * std::asin(0.5 * dist));
    return out;
}

} // namespace opmod
