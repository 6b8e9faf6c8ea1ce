#include "opmod/moduli.hpp"

#include <algorithm>
#include <cmath>

#include "opmod/fft.hpp"
#include "opmod/funcalc.hpp"
#include "opmod/rng.hpp"
#include "opmod/svd.hpp"

namespace opmod {

std::string flavor_name(ModulusFlavor flavor) {
    switch (flavor) {
        case ModulusFlavor::pair: return "pair";
        case ModulusFlavor::c1: return "commutator-[1]";
        case ModulusFlavor::c2: return "commutator-[2]";
        case ModulusFlavor::c3: return "quasicommutator-[3]";
    }
    return "?";
}

double witness_value(const ScalarFunction& f, const ModulusWitness& w) {
    const HermitianMatrix a(w.a);
    switch (w.flavor) {
        case ModulusFlavor::pair: {
            const HermitianMatrix b(w.b);
            return operator_norm(apply_function(f, a) - apply_function(f, b));
        }
        case ModulusFlavor::c1:
        case ModulusFlavor::c2: {
            const ComplexMatrix fa = apply_function(f, a);
            return operator_norm(fa * w.r - w.r * fa);
        }
        case ModulusFlavor::c3: {
            const HermitianMatrix b(w.b);
            return operator_norm(apply_function(f, a) * w.r - w.r * apply_function(f, b));
        }
    }
    return 0.0;
}

double witness_constraint(const ModulusWitness& w) {
    switch (w.flavor) {
        case ModulusFlavor::pair: return operator_norm(w.a - w.b);
        case ModulusFlavor::c1:
        case ModulusFlavor::c2: return operator_norm(w.a * w.r - w.r * w.a);
        case ModulusFlavor::c3: return operator_norm(w.a * w.r - w.r * w.b);
    }
    return 0.0;
}

namespace {

constexpr double kDeltaSlack = 1.0 - 1e-9; // keep constraints strictly below delta

// Renormalize a candidate so the delta constraint and ||R|| <= 1 hold;
// returns false when the instance degenerates.
bool project_witness(ModulusWitness& w, double delta) {
    if (w.flavor == ModulusFlavor::pair) {
        const double c = operator_norm(w.a - w.b);
        if (c > delta * kDeltaSlack) {
            const double scale = delta * kDeltaSlack / c;
            w.b = w.a + scale * (w.b - w.a);
        }
    } else {
        const double rn = operator_norm(w.r);
        if (rn == 0.0) return false;
        if (rn > 1.0) w.r *= cplx(1.0 / rn, 0.0);
        const double c = witness_constraint(w);
        if (c > delta * kDeltaSlack) w.r *= cplx(delta * kDeltaSlack / c, 0.0);
    }
    w.constraint = witness_constraint(w);
    return true;
}

ModulusWitness random_witness(const ScalarFunction& f, ModulusFlavor flavor, double delta,
                              Rng& rng) {
    ModulusWitness w;
    w.flavor = flavor;
    const std::size_t n = 1 + rng.index(16);
    // Operator scale spread over two decades around delta keeps both the
    // small-angle and saturated regimes in play.
    const double scale = delta * std::pow(10.0, rng.uniform(-1.0, 1.0));
    HermitianMatrix a = random_hermitian(rng, n);
    const double an = operator_norm(a.matrix());
    if (an > 0.0) a = (scale / an) * a;
    w.a = a.matrix();

    switch (flavor) {
        case ModulusFlavor::pair: {
            HermitianMatrix k = random_hermitian(rng, n);
            const double kn = operator_norm(k.matrix());
            if (kn == 0.0) return w;
            const double step = delta * kDeltaSlack * rng.uniform(0.3, 1.0);
            w.b = w.a + (step / kn) * k.matrix();
            break;
        }
        case ModulusFlavor::c1: {
            w.r = random_hermitian(rng, n).matrix();
            break;
        }
        case ModulusFlavor::c2: {
            w.r = random_matrix(rng, n, n);
            break;
        }
        case ModulusFlavor::c3: {
            HermitianMatrix k = random_hermitian(rng, n);
            const double kn = operator_norm(k.matrix());
            const double step = delta * rng.uniform(0.0, 2.0);
            w.b = kn > 0.0 ? w.a + (step / kn) * k.matrix() : w.a;
            w.r = random_matrix(rng, n, n);
            break;
        }
    }
    project_witness(w, delta);
    w.value = witness_value(f, w);
    return w;
}

// Scalar (1x1) instances reach the scalar modulus of continuity exactly; for
// the exponential family they saturate the pair supremum.
ModulusWitness scalar_witness(const ScalarFunction& f, ModulusFlavor flavor, double delta,
                              Rng& rng) {
    ModulusWitness w;
    w.flavor = flavor;
    const double base = rng.uniform(-3.0, 3.0);
    w.a = ComplexMatrix(1, 1);
    w.a(0, 0) = base;
    const double step = delta * kDeltaSlack * rng.uniform(0.5, 1.0);
    if (flavor == ModulusFlavor::pair || flavor == ModulusFlavor::c3) {
        w.b = ComplexMatrix(1, 1);
        w.b(0, 0) = base + step;
    }
    if (flavor != ModulusFlavor::pair) {
        // 2x2 rank-one off-diagonal contraction against diag(a, b).
        const std::size_t n = 2;
        ComplexMatrix a2(n, n), r2(n, n);
        a2(0, 0) = base;
        a2(1, 1) = base + ((flavor == ModulusFlavor::c3) ? 0.0 : step);
        r2(0, 1) = 1.0;
        w.a = a2;
        if (flavor == ModulusFlavor::c3) {
            ComplexMatrix b2(n, n);
            b2(0, 0) = base + step;
            b2(1, 1) = base - step;
            w.b = b2;
        }
        if (flavor == ModulusFlavor::c1) {
            // Hermitian contraction coupling the two eigenvalues.
            r2 = ComplexMatrix(n, n);
            r2(0, 1) = 1.0;
            r2(1, 0) = 1.0;
        }
        w.r = r2;
    }
    project_witness(w, delta);
    w.value = witness_value(f, w);
    return w;
}

void hill_climb(const ScalarFunction& f, ModulusWitness& w, double delta, Rng& rng) {
    const double step = 1e-2;
    const int iterations = 500;
    double best = w.value;
    for (int it = 0; it < iterations; ++it) {
        ModulusWitness cand = w;
        const std::size_t n = cand.a.rows();
        const double sc = step * (1.0 + operator_norm(cand.a));
        const int which = static_cast<int>(rng.index(3));
        if (which == 0 || cand.flavor == ModulusFlavor::pair) {
            cand.a += sc * random_hermitian(rng, n).matrix();
            if (cand.flavor == ModulusFlavor::pair || cand.flavor == ModulusFlavor::c3) {
                cand.b += sc * random_hermitian(rng, n).matrix();
            }
        } else if (which == 1 && cand.b.rows() == n) {
            cand.b += sc * random_hermitian(rng, n).matrix();
        } else if (cand.r.rows() == n) {
            cand.r += (step * operator_norm(cand.r)) * random_matrix(rng, n, n);
            if (cand.flavor == ModulusFlavor::c1)
                cand.r = 0.5 * (cand.r + cand.r.adjoint());
        }
        if (!project_witness(cand, delta)) continue;
        cand.value = witness_value(f, cand);
        if (cand.value > best + 1e-12) {
            best = cand.value;
            w = cand;
        }
    }
}

} // namespace

ModulusEstimate estimate_modulus(const ScalarFunction& f, ModulusFlavor flavor,
                                 const std::vector<double>& delta_grid, int budget,
                                 std::uint64_t seed) {
    ModulusEstimate out;
    out.flavor = flavor;
    out.delta_grid = delta_grid;
    out.lower_bounds.resize(delta_grid.size(), 0.0);
    out.witnesses.resize(delta_grid.size());

    for (std::size_t di = 0; di < delta_grid.size(); ++di) {
        const double delta = delta_grid[di];
        if (!(delta > 0.0)) throw invalid_parameter("estimate_modulus: delta must be positive");
        ModulusWitness best;
        best.flavor = flavor;
        for (int t = 0; t < std::max(1, budget); ++t) {
            Rng rng = Rng::derive(seed, di * 100003ull + static_cast<std::uint64_t>(t));
            ModulusWitness w = (t % 4 == 0) ? scalar_witness(f, flavor, delta, rng)
                                            : random_witness(f, flavor, delta, rng);
            if (w.value > best.value) best = w;
        }
        Rng rng = Rng::derive(seed, di * 100003ull + 99991ull);
        hill_climb(f, best, delta, rng);
        out.lower_bounds[di] = best.value;
        out.witnesses[di] = best;
    }
    return out;
}

// ----- phi/shift construction -----

namespace {

double smooth_step(double t) {
    auto h = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = h(t), b = h(1.0 - t);
    return a / (a + b);
}

std::vector<cplx> spectral_multiply(const std::vector<double>& symbol,
                                    const std::vector<cplx>& w) {
    std::vector<cplx> hat = fft_forward(w);
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= symbol[k];
    return fft_inverse(hat);
}

double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

} // namespace

std::vector<cplx> PhiShiftInstance::apply_a(const std::vector<cplx>& w) const {
    return spectral_multiply(symbol, w);
}

std::vector<cplx> PhiShiftInstance::apply_r(const std::vector<cplx>& w) const {
    std::vector<cplx> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = phi[i] * w[i];
    return out;
}

std::vector<cplx> PhiShiftInstance::apply_exp_ia(double sigma, const std::vector<cplx>& w) const {
    std::vector<cplx> hat = fft_forward(w);
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= std::polar(1.0, sigma * symbol[k]);
    return fft_inverse(hat);
}

HermitianMatrix PhiShiftInstance::dense_a() const {
    if (points > 2048)
        throw invalid_parameter("PhiShiftInstance::dense_a: N too large to materialize");
    // Circulant: column 0 is ifft(symbol), column j a cyclic shift.
    std::vector<cplx> sym(points);
    for (std::size_t k = 0; k < points; ++k) sym[k] = symbol[k];
    const std::vector<cplx> col = fft_inverse(sym);
    ComplexMatrix a(points, points);
    for (std::size_t i = 0; i < points; ++i)
        for (std::size_t j = 0; j < points; ++j)
            a(i, j) = col[(i + points - j) % points];
    return HermitianMatrix::symmetrize(a);
}

HermitianMatrix PhiShiftInstance::dense_r() const {
    if (points > 2048)
        throw invalid_parameter("PhiShiftInstance::dense_r: N too large to materialize");
    ComplexMatrix r(points, points);
    for (std::size_t i = 0; i < points; ++i) r(i, i) = phi[i];
    return HermitianMatrix(std::move(r));
}

double PhiShiftInstance::omega_flat_lower(double sigma, double delta) const {
    // Witness (A/sigma, tau R): f(A/sigma) = e^{iA}, so the certified value
    // scales linearly in tau while the commutator constraint is tau * c / sigma.
    if (!(sigma > 0.0 && delta > 0.0))
        throw invalid_parameter("omega_flat_lower: sigma, delta must be positive");
    // Inflate the measured commutator norm a hair so the scaled witness
    // stays strictly inside the constraint even at power-iteration accuracy.
    const double c = commutator_norm * (1.0 + 1e-6);
    const double tau = std::min(1.0, sigma * delta * kDeltaSlack / c);
    return tau * f_commutator_lower;
}

PhiShiftInstance phi_shift_instance(std::size_t n_points, double epsilon, std::size_t q,
                                    double delta_target) {
    if (q < 16) throw invalid_parameter("phi_shift_instance: q must be >= 16");
    if (n_points % q != 0)
        throw invalid_parameter("phi_shift_instance: N must be a multiple of q");
    const std::size_t cells = n_points / q;
    if (cells < 2 || cells % 2 != 0)
        throw invalid_parameter("phi_shift_instance: N/q must be an even cell count >= 2");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw invalid_parameter("phi_shift_instance: epsilon must lie in (0, 1/2)");

    PhiShiftInstance inst;
    inst.points = n_points;
    inst.per_unit = q;
    inst.epsilon = epsilon;
    inst.delta_target = delta_target;

    // Mollified triangle wave via its odd-harmonic cosine series with a
    // Gaussian factor (std eps/2): |phi| <= 1 and |phi'| <= 2 exactly in the
    // continuum, phi(t+1) = -phi(t) exactly on the grid.
    const double s_smooth = 0.5 * epsilon;
    const auto j_max = static_cast<long>(std::min<double>(static_cast<double>(q) - 1.0,
                                                         std::floor(0.3 * static_cast<double>(q))));
    inst.phi.resize(n_points);
    double phi_at_zero = 0.0;
    std::vector<double> harmonics;
    for (long j = 1; j <= j_max; j += 2) {
        const double damp = std::exp(-0.5 * std::pow(M_PI * static_cast<double>(j) * s_smooth, 2));
        harmonics.push_back(8.0 / (M_PI * M_PI * static_cast<double>(j) * static_cast<double>(j)) *
                            damp);
        phi_at_zero += harmonics.back();
    }
    for (std::size_t i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(q);
        double v = 0.0;
        std::size_t idx = 0;
        for (long j = 1; j <= j_max; j += 2, ++idx)
            v += harmonics[idx] * std::cos(M_PI * static_cast<double>(j) * t);
        inst.phi[i] = v;
    }
    inst.phi_max = 0.0;
    for (double v : inst.phi) inst.phi_max = std::max(inst.phi_max, std::abs(v));

    // Derivative symbol: exact i xi below 0.3 * Nyquist, smooth descent to 0
    // at the Nyquist edge (odd in xi, continuous on the frequency torus).
    const double nyq = M_PI * static_cast<double>(q);
    const double knee = 0.3 * nyq;
    inst.symbol.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double signed_k = (k < n_points / 2)
                                    ? static_cast<double>(k)
                                    : static_cast<double>(k) - static_cast<double>(n_points);
        const double xi = 2.0 * M_PI * signed_k / static_cast<double>(cells);
        const double a = std::abs(xi);
        double val;
        if (a <= knee)
            val = a;
        else
            val = knee * (1.0 - smooth_step((a - knee) / (nyq - knee)));
        inst.symbol[k] = (xi < 0.0 ? -val : val);
    }

    // ||AR - RA|| by power iteration on -C^2 (C is anti-Hermitian).
    {
        auto apply_c = [&](const std::vector<cplx>& w) {
            const std::vector<cplx> rw = inst.apply_r(w);
            std::vector<cplx> arw = inst.apply_a(rw);
            const std::vector<cplx> aw = inst.apply_a(w);
            const std::vector<cplx> raw = inst.apply_r(aw);
            for (std::size_t i = 0; i < w.size(); ++i) arw[i] -= raw[i];
            return arw;
        };
        Rng rng(20240901u);
        std::vector<cplx> w(n_points);
        for (auto& x : w) x = rng.complex_normal();
        double wn = vec_norm(w);
        for (auto& x : w) x /= wn;
        for (int it = 0; it < 150; ++it) {
            std::vector<cplx> cw = apply_c(w);
            std::vector<cplx> ccw = apply_c(cw);
            for (auto& x : ccw) x = -x; // C anti-Hermitian: C^*C = -C^2
            const double nn = vec_norm(ccw);
            if (nn == 0.0) break;
            for (auto& x : ccw) x /= nn;
            w = ccw;
        }
        inst.commutator_norm = vec_norm(apply_c(w));
        inst.eta = std::max(0.0, 0.5 * inst.commutator_norm - 1.0);
    }

    // Certified lower bound for ||e^{iA} R - R e^{iA}||: Gaussian bump train
    // at the integers (low-frequency, so e^{iA} acts as the exact shift and
    // |phi| ~ 1 on the support).
    {
        const double bump_std = 0.25 * epsilon;
        std::vector<cplx> w(n_points, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < n_points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(q);
            const double d = std::abs(t - std::round(t)); // distance to nearest integer
            w[i] = std::exp(-0.5 * std::pow(d / bump_std, 2));
        }
        const std::vector<cplx> fw = inst.apply_exp_ia(1.0, w);
        std::vector<cplx> cfw = inst.apply_r(fw);
        const std::vector<cplx> rw = inst.apply_r(w);
        std::vector<cplx> frw = inst.apply_exp_ia(1.0, rw);
        for (std::size_t i = 0; i < n_points; ++i) frw[i] -= cfw[i];
        const double wn = vec_norm(w);
        inst.f_commutator_lower = (wn > 0.0) ? vec_norm(frw) / wn : 0.0;
    }

    return inst;
}

// ----- geometric diagonal instance -----

GeometricDiagInstance geometric_diag_instance(std::size_t n) {
    if (n < 2) throw invalid_parameter("geometric_diag_instance: n must be >= 2");
    GeometricDiagInstance inst;
    inst.lambda_exp.resize(n);
    inst.mu_exp.resize(n);
    long a = 0;
    for (std::size_t j = 0; j < n; ++j) {
        inst.lambda_exp[j] = a;
        const long b = a + static_cast<long>(j) + 2; // |mu_j| = 2^{j+2} lambda_j
        inst.mu_exp[j] = b;
        a = b + static_cast<long>(j) + 3; // lambda_{j+1} = 2^{j+3} |mu_j|
    }
    return inst;
}

std::vector<double> GeometricDiagInstance::lambda() const {
    std::vector<double> out(lambda_exp.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (lambda_exp[j] > 1023)
            throw invalid_parameter("geometric_diag_instance: lambda overflows double range");
        out[j] = std::ldexp(1.0, static_cast<int>(lambda_exp[j]));
    }
    return out;
}

std::vector<double> GeometricDiagInstance::mu() const {
    std::vector<double> out(mu_exp.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (mu_exp[j] > 1023)
            throw invalid_parameter("geometric_diag_instance: mu overflows double range");
        out[j] = -std::ldexp(1.0, static_cast<int>(mu_exp[j]));
    }
    return out;
}

ComplexMatrix GeometricDiagInstance::r_matrix() const {
    const std::size_t n = lambda_exp.size();
    const std::vector<double> l = lambda();
    const std::vector<double> m = mu();
    ComplexMatrix r(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= j; ++k) r(j, k) = 1.0 / (l[j] - m[k]);
    return r;
}

ComplexMatrix GeometricDiagInstance::divided_difference_matrix() const {
    const std::size_t n = lambda_exp.size();
    ComplexMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            // m_jk = (lambda_j - |mu_k|) / (lambda_j + |mu_k|)
            //      = (rho - 1) / (rho + 1),  rho = 2^{a_j - b_k}.
            const long diff = lambda_exp[j] - mu_exp[k];
            if (diff > 60) {
                const double inv = std::ldexp(1.0, static_cast<int>(-diff));
                m(j, k) = 1.0 - 2.0 * inv; // (1 - 1/rho)/(1 + 1/rho) expanded
            } else if (diff < -60) {
                const double rho = std::ldexp(1.0, static_cast<int>(std::max(diff, -1000L)));
                m(j, k) = -1.0 + 2.0 * rho;
            } else {
                const double rho = std::ldexp(1.0, static_cast<int>(diff));
                m(j, k) = (rho - 1.0) / (rho + 1.0);
            }
        }
    return m;
}

double GeometricDiagInstance::abs_ratio() const {
    const std::size_t n = lambda_exp.size();
    const ComplexMatrix m = divided_difference_matrix();
    ComplexMatrix t(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= j; ++k) t(j, k) = 1.0;
    const double denom = operator_norm(t);
    ComplexMatrix mt(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= j; ++k) mt(j, k) = m(j, k);
    return operator_norm(mt) / denom;
}

// ----- gap table -----

GapDemo gap_demo(double sigma, const std::vector<double>& delta_grid, std::size_t n_points,
                 double epsilon, std::size_t q, int budget, std::uint64_t seed) {
    if (!(sigma > 0.0)) throw invalid_parameter("gap_demo: sigma must be positive");
    for (double d : delta_grid)
        if (!(d > 0.0 && d < M_PI / sigma))
            throw invalid_parameter("gap_demo: delta grid must lie in (0, pi/sigma)");

    GapDemo out;
    out.sigma = sigma;
    const ScalarFunction f = fn_exp_i(sigma);
    out.pair_estimate = estimate_modulus(f, ModulusFlavor::pair, delta_grid, budget, seed);
    out.instance = phi_shift_instance(n_points, epsilon, q, 2.0 / sigma);

    for (std::size_t i = 0; i < delta_grid.size(); ++i) {
        GapRow row;
        row.delta = delta_grid[i];
        row.omega_lower_pair = out.pair_estimate.lower_bounds[i];
        row.omega_upper_pair = 2.0 * std::sin(0.5 * sigma * row.delta);
        row.omega_flat_lower = out.instance.omega_flat_lower(sigma, row.delta);
        row.omega_flat_exact = std::min(2.0, sigma * row.delta);
        out.rows.push_back(row);
    }
    return out;
}

MonotonicityReport monotonicity_check(const ScalarFunction& f, const ModulusEstimate& estimates) {
    MonotonicityReport report;
    report.refined_bounds = estimates.lower_bounds;
    if (estimates.flavor == ModulusFlavor::pair) return report; // no scaling law available

    const auto& grid = estimates.delta_grid;
    for (std::size_t to = 0; to < grid.size(); ++to) {
        for (std::size_t from = 0; from < grid.size(); ++from) {
            if (grid[from] <= grid[to]) continue; // scale down only
            const double tau = grid[to] / grid[from];
            const ModulusWitness& src = estimates.witnesses[from];
            if (src.value <= 0.0 || src.r.rows() == 0) continue;
            ModulusWitness scaled = src;
            scaled.r *= cplx(tau, 0.0);
            scaled.value = witness_value(f, scaled);
            scaled.constraint = witness_constraint(scaled);
            MonotonicityRefinement ref;
            ref.from_index = from;
            ref.to_index = to;
            ref.original_bound = estimates.lower_bounds[to];
            ref.scaled_bound = scaled.value;
            ref.improved = scaled.constraint < grid[to] &&
                           scaled.value > report.refined_bounds[to] + 1e-12;
            if (ref.improved) report.refined_bounds[to] = scaled.value;
            report.refinements.push_back(ref);
        }
    }
    return report;
}

} // namespace opmod
