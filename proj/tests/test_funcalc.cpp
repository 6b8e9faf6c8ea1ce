#include <doctest.h>

#include <cmath>

#include "opmod/funcalc.hpp"
#include "opmod/rng.hpp"
#include "opmod/svd.hpp"

using namespace opmod;

namespace {

double binom(int m, int j) {
    double b = 1.0;
    for (int i = 0; i < j; ++i) b = b * (m - i) / (i + 1);
    return b;
}

} // namespace

TEST_CASE("apply_function: identity, square, spectral exponential") {
    Rng rng(101);
    const HermitianMatrix a = random_hermitian(rng, 6);

    const ComplexMatrix id = apply_function(fn_identity(), a);
    CHECK((id - a.matrix()).max_abs() <= 1e-10 * (1.0 + a.matrix().max_abs()));

    const HermitianMatrix d(ComplexMatrix::diag(std::vector<double>{1.0, 2.0}));
    const ScalarFunction square{[](double t) { return cplx(t * t, 0.0); }, std::nullopt, "t^2"};
    const ComplexMatrix d2 = apply_function(square, d);
    CHECK(d2(0, 0).real() == doctest::Approx(1.0));
    CHECK(d2(1, 1).real() == doctest::Approx(4.0));
    CHECK(std::abs(d2(0, 1)) <= 1e-12);

    const ComplexMatrix u = apply_function(fn_exp_i(1.0), a);
    CHECK((u.adjoint() * u - ComplexMatrix::identity(6)).max_abs() <= 1e-9);
}

TEST_CASE("apply_function: multiplicative on commuting arguments") {
    Rng rng(103);
    const HermitianMatrix a = random_hermitian(rng, 5);
    const ScalarFunction g = fn_identity();
    const ScalarFunction h{[](double t) { return cplx(t * t, 0.0); }, std::nullopt, "t^2"};
    const ScalarFunction gh{[](double t) { return cplx(t * t * t, 0.0); }, std::nullopt, "t^3"};
    const ComplexMatrix lhs = apply_function(gh, a);
    const ComplexMatrix rhs = apply_function(g, a) * apply_function(h, a);
    CHECK((lhs - rhs).max_abs() <= 1e-9 * (1.0 + rhs.max_abs()));
}

TEST_CASE("finite_difference: order collapse and scalar reduction") {
    Rng rng(107);
    const HermitianMatrix a = random_hermitian(rng, 4);
    const HermitianMatrix k = random_hermitian(rng, 4);
    const ScalarFunction f = fn_exp_i(0.7);

    const ComplexMatrix d1 = finite_difference(f, a, k, 1);
    const ComplexMatrix direct =
        apply_function(f, HermitianMatrix(a.matrix() + k.matrix())) - apply_function(f, a);
    CHECK((d1 - direct).max_abs() <= 1e-11);

    ComplexMatrix sa(1, 1), sk(1, 1);
    sa(0, 0) = 0.3;
    sk(0, 0) = 0.25;
    const ComplexMatrix d2 = finite_difference(f, HermitianMatrix(sa), HermitianMatrix(sk), 2);
    const cplx want = f(0.8) - 2.0 * f(0.55) + f(0.3);
    CHECK(std::abs(d2(0, 0) - want) <= 1e-13);

    CHECK_THROWS_AS(finite_difference(f, a, HermitianMatrix(ComplexMatrix(3, 3)), 1),
                    invalid_input);
}

TEST_CASE("finite_difference: commuting diagonal case equals entrywise scalar differences") {
    Rng rng(109);
    std::vector<double> av(5), kv(5);
    for (auto& v : av) v = rng.uniform(-2.0, 2.0);
    for (auto& v : kv) v = rng.uniform(-1.0, 1.0);
    const HermitianMatrix a(ComplexMatrix::diag(av));
    const HermitianMatrix k(ComplexMatrix::diag(kv));
    const ScalarFunction f = fn_exp_i(1.3);
    for (int m : {1, 2, 3}) {
        const ComplexMatrix got = finite_difference(f, a, k, m);
        for (std::size_t i = 0; i < 5; ++i) {
            cplx want(0.0, 0.0);
            for (int j = 0; j <= m; ++j)
                want += (((m - j) % 2 == 0) ? 1.0 : -1.0) * binom(m, j) * f(av[i] + j * kv[i]);
            CHECK(std::abs(got(i, i) - want) <= 1e-11);
        }
    }
}

TEST_CASE("quasicommutator: pinned reductions") {
    Rng rng(113);
    const HermitianMatrix a = random_hermitian(rng, 4);
    const HermitianMatrix k = random_hermitian(rng, 4);
    const ComplexMatrix eye = ComplexMatrix::identity(4);
    const ScalarFunction f = fn_exp_i(1.0);

    auto [l0, r0] = quasicommutator(f, a, a, eye);
    CHECK(l0.max_abs() <= 1e-12);
    CHECK(r0.max_abs() <= 1e-12);

    const HermitianMatrix b(a.matrix() + k.matrix());
    auto [l1, r1] = quasicommutator(f, a, b, eye);
    const ComplexMatrix want_l = apply_function(f, a) - apply_function(f, b);
    CHECK((l1 - want_l).max_abs() <= 1e-11);
    CHECK((r1 + k.matrix()).max_abs() <= 1e-11);

    const ComplexMatrix r = random_matrix(rng, 4, 4);
    auto [l2, r2] = quasicommutator(fn_identity(), a, b, r);
    CHECK((l2 - r2).max_abs() <= 1e-11);
}

TEST_CASE("quasicommutator factorizes through the divided-difference multiplier") {
    Rng rng(127);
    const std::size_t n = 5;
    const HermitianMatrix a = random_hermitian(rng, n);
    // Shift B's spectrum away from A's so all nodes are distinct.
    const HermitianMatrix b(random_hermitian(rng, n).matrix() +
                            10.0 * ComplexMatrix::identity(n));
    const ComplexMatrix r = random_matrix(rng, n, n);
    const ScalarFunction f = fn_abs();

    const EigenDecomposition ea = hermitian_eig(a);
    const EigenDecomposition eb = hermitian_eig(b);
    auto [num, den] = quasicommutator(f, a, b, r);
    const ComplexMatrix c = ea.vectors.adjoint() * den * eb.vectors;
    const ComplexMatrix cf = ea.vectors.adjoint() * num * eb.vectors;
    const ComplexMatrix m = divided_difference_matrix(f, ea.eigenvalues, eb.eigenvalues);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(cf(i, j) - m(i, j) * c(i, j)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("divided_difference_matrix: pinned examples and coincident nodes") {
    const ScalarFunction square{[](double t) { return cplx(t * t, 0.0); },
                                [](double t) { return cplx(2.0 * t, 0.0); },
                                "t^2"};
    const ComplexMatrix m = divided_difference_matrix(square, {1.0, 2.0}, {3.0});
    CHECK(m(0, 0).real() == doctest::Approx(4.0));
    CHECK(m(1, 0).real() == doctest::Approx(5.0));

    const ComplexMatrix ones = divided_difference_matrix(fn_identity(), {1.0, 5.0}, {2.0, -3.0});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(ones(i, j).real() == doctest::Approx(1.0));

    // |t| with positive lambda, negative mu: (lambda + mu)/(lambda - mu).
    const ComplexMatrix mabs = divided_difference_matrix(fn_abs(), {2.0}, {-0.5});
    CHECK(mabs(0, 0).real() == doctest::Approx((2.0 - 0.5) / (2.0 + 0.5)));

    const ComplexMatrix diag = divided_difference_matrix(square, {1.5}, {1.5});
    CHECK(diag(0, 0).real() == doctest::Approx(3.0));
    const ScalarFunction no_deriv{[](double t) { return cplx(t, 0.0); }, std::nullopt, "t"};
    CHECK_THROWS_AS(divided_difference_matrix(no_deriv, {1.0}, {1.0}), coincident_node_error);
}

TEST_CASE("atomic_operator: collapse, scalar case, linearity") {
    Rng rng(131);
    const HermitianMatrix a = random_hermitian(rng, 4);
    const HermitianMatrix k = random_hermitian(rng, 4);
    const ScalarFunction f = fn_exp_i(0.9);

    AtomicMeasure unit;
    unit.atoms.push_back({0.0, 1.0, 2, cplx(1.0, 0.0)});
    const ComplexMatrix got = atomic_operator(f, a, k, unit);
    CHECK((got - finite_difference(f, a, k, 2)).max_abs() <= 1e-11);

    ComplexMatrix sa(1, 1), sk(1, 1);
    sa(0, 0) = 0.4;
    sk(0, 0) = 0.7;
    AtomicMeasure shift;
    shift.atoms.push_back({0.3, 0.2, 1, cplx(1.0, 0.0)});
    const ComplexMatrix sres =
        atomic_operator(f, HermitianMatrix(sa), HermitianMatrix(sk), shift);
    const cplx want = f(0.4 - 0.3 * 0.7 + 0.2 * 0.7) - f(0.4 - 0.3 * 0.7);
    CHECK(std::abs(sres(0, 0) - want) <= 1e-13);

    AtomicMeasure g1, g2, both;
    g1.atoms.push_back({0.1, 0.5, 1, cplx(2.0, 1.0)});
    g2.atoms.push_back({-0.4, 1.2, 2, cplx(0.0, -3.0)});
    both.atoms = g1.atoms;
    both.atoms.push_back(g2.atoms[0]);
    const ComplexMatrix lin = atomic_operator(f, a, k, both);
    const ComplexMatrix sum = atomic_operator(f, a, k, g1) + atomic_operator(f, a, k, g2);
    CHECK((lin - sum).max_abs() <= 1e-11);
}

TEST_CASE("apply_trig_polynomial: selection, scalar power, diagonalization oracle") {
    Rng rng(137);
    const ComplexMatrix u = random_unitary(rng, 5);

    std::vector<cplx> pick(3, cplx(0.0, 0.0));
    pick[2] = 1.0; // c_1 of c_{-1}, c_0, c_1
    CHECK((apply_trig_polynomial(pick, u) - u).max_abs() <= 1e-12);

    ComplexMatrix phase(1, 1);
    const double theta = 0.83;
    phase(0, 0) = std::polar(1.0, theta);
    std::vector<cplx> zd(7, cplx(0.0, 0.0));
    zd[6] = 1.0; // z^3
    const ComplexMatrix p = apply_trig_polynomial(zd, phase);
    CHECK(std::abs(p(0, 0) - std::polar(1.0, 3.0 * theta)) <= 1e-12);

    std::vector<cplx> coeffs(5);
    for (auto& c : coeffs) c = rng.complex_normal();
    const ComplexMatrix direct = apply_trig_polynomial(coeffs, u);
    const NormalEigenDecomposition eig = normal_eig(u);
    std::vector<cplx> fvals(5);
    for (std::size_t j = 0; j < 5; ++j) {
        cplx acc(0.0, 0.0);
        for (int k = -2; k <= 2; ++k)
            acc += coeffs[static_cast<std::size_t>(k + 2)] * std::pow(eig.eigenvalues[j], k);
        fvals[j] = acc;
    }
    ComplexMatrix spectral(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t k = 0; k < 5; ++k)
                s += eig.vectors(i, k) * fvals[k] * std::conj(eig.vectors(j, k));
            spectral(i, j) = s;
        }
    CHECK((direct - spectral).max_abs() <= 1e-8);

    CHECK_THROWS_AS(apply_trig_polynomial(pick, random_matrix(rng, 3, 3)), invalid_input);
}

TEST_CASE("unitary_log_arg: identities and branch handling") {
    Rng rng(139);
    const ComplexMatrix u = random_unitary(rng, 6);

    const UnitaryLogResult zero = unitary_log_arg(u, u);
    CHECK(operator_norm(zero.arg.matrix()) <= 1e-10);

    const double theta = 1.1;
    const ComplexMatrix eye = ComplexMatrix::identity(3);
    ComplexMatrix v = eye;
    v *= std::polar(1.0, theta);
    const UnitaryLogResult rot = unitary_log_arg(eye, v);
    CHECK(operator_norm(rot.arg.matrix()) == doctest::Approx(theta).epsilon(1e-10));
    CHECK(operator_norm(eye - v) == doctest::Approx(2.0 * std::sin(theta / 2.0)).epsilon(1e-10));

    const ComplexMatrix v2 = random_unitary(rng, 6);
    const UnitaryLogResult lr = unitary_log_arg(u, v2);
    CHECK(operator_norm(lr.arg.matrix()) <= M_PI + 1e-12);
    const ComplexMatrix expa = apply_function(fn_exp_i(1.0), lr.arg);
    CHECK((expa * u - v2).max_abs() <= 1e-8);
    CHECK(std::abs(2.0 * std::sin(0.5 * operator_norm(lr.arg.matrix())) -
                   operator_norm(u - v2)) <= 1e-8);

    ComplexMatrix minus = ComplexMatrix::identity(2);
    minus *= cplx(-1.0, 0.0);
    const UnitaryLogResult branch = unitary_log_arg(ComplexMatrix::identity(2), minus);
    CHECK(branch.branch_boundary);
    CHECK(branch.arg.matrix()(0, 0).real() == doctest::Approx(-M_PI));
}

namespace {

HermitianMatrix scaled_hermitian(Rng& rng, std::size_t n, double norm) {
    HermitianMatrix h = random_hermitian(rng, n);
    const double hn = operator_norm(h.matrix());
    return (norm / hn) * h;
}

ScalarFunction frequency_mode(double tau) {
    return {[tau](double x) { return std::polar(1.0, tau * x); }, std::nullopt, "mode"};
}

} // namespace

TEST_CASE("litpaley_finite_difference: single active block at an exact dyadic frequency") {
    const LPKernelBank bank = build_kernel_bank();
    // L = 4 pi puts tau = 8 = 2^3 on the lattice (spacing 1/4), where only
    // the n = 3 block is active: w(1) = 1 and both neighbors vanish.
    const AnalysisWindow win{4.0 * M_PI, 2048, 1e-3};
    Rng rng(149);
    const HermitianMatrix a = scaled_hermitian(rng, 3, 1.5);
    const HermitianMatrix k = scaled_hermitian(rng, 3, 0.3);
    const LitPaleyResult lp =
        litpaley_finite_difference(frequency_mode(8.0), a, k, 1, bank, win);
    int active = 0;
    for (std::size_t i = 0; i < lp.term_norms.size(); ++i)
        if (lp.term_norms[i] > 1e-10) {
            ++active;
            CHECK(lp.n_values[i] == 3);
        }
    CHECK(active == 1);
}

TEST_CASE("litpaley and split agree with the direct finite difference") {
    const LPKernelBank bank = build_kernel_bank();
    const AnalysisWindow win{4.0 * M_PI, 2048, 1e-3};
    Rng rng(151);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<BandLimitedFunction::Term> terms;
        for (int t = 0; t < 3; ++t) {
            const double tau = 0.25 * static_cast<double>(1 + rng.index(120));
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            terms.push_back({sign * tau, rng.complex_normal()});
        }
        const BandLimitedFunction f(30.0, std::move(terms));
        const ScalarFunction sf = f.as_scalar_function();
        const std::size_t n = 2 + rng.index(4);
        const int m = 1 + static_cast<int>(rng.index(3));
        const HermitianMatrix a = scaled_hermitian(rng, n, rng.uniform(0.5, 2.0));
        const HermitianMatrix k = scaled_hermitian(rng, n, rng.uniform(0.05, 0.4));

        const ComplexMatrix direct = finite_difference(sf, a, k, m);
        const double scale = 1.0 + operator_norm(direct);

        const LitPaleyResult lp = litpaley_finite_difference(sf, a, k, m, bank, win);
        CHECK(operator_norm(direct - lp.value) / scale <= 1e-6);

        const int cutoff = 6;
        const ComplexMatrix split = split_finite_difference(sf, a, k, m, bank, cutoff, win);
        CHECK(operator_norm(direct - split) / scale <= 1e-6);
        const ComplexMatrix split2 = split_finite_difference(sf, a, k, m, bank, cutoff + 1, win);
        CHECK(operator_norm(split - split2) / scale <= 1e-6);
    }
}

TEST_CASE("split_finite_difference: band-limited tail vanishes") {
    const LPKernelBank bank = build_kernel_bank();
    const AnalysisWindow win{4.0 * M_PI, 2048, 1e-3};
    Rng rng(157);
    const HermitianMatrix a = scaled_hermitian(rng, 3, 1.0);
    const HermitianMatrix k = scaled_hermitian(rng, 3, 0.2);
    // Spectrum at |tau| <= 4 = 2^2, so v(xi / 2^cutoff) = 1 on it for
    // cutoff = 2: the tail term of the split is exactly zero and the split
    // equals the block series.
    const BandLimitedFunction f(4.0, {{4.0, cplx(0.5, 0.2)}, {-2.0, cplx(0.0, 1.0)}});
    const ScalarFunction sf = f.as_scalar_function();
    const LitPaleyResult lp = litpaley_finite_difference(sf, a, k, 2, bank, win);
    const ComplexMatrix split = split_finite_difference(sf, a, k, 2, bank, 2, win);
    CHECK(operator_norm(lp.value - split) <= 1e-8 * (1.0 + operator_norm(lp.value)));
}

TEST_CASE("litpaley: Hoelder-type bound on the term-norm sum (Thm 6.6 shape)") {
    const LPKernelBank bank = build_kernel_bank();
    const AnalysisWindow win{32.0, 4096, 1e-3};
    const ScalarFunction f = fn_power_windowed(0.5, 8.0, 14.0);
    Rng rng(163);
    const HermitianMatrix a = scaled_hermitian(rng, 6, 2.0);
    const HermitianMatrix k0 = scaled_hermitian(rng, 6, 1.0);
    double c_prev = -1.0;
    for (int e = 2; e <= 5; ++e) {
        const HermitianMatrix k = std::ldexp(1.0, -e) * k0;
        const LitPaleyResult lp = litpaley_finite_difference(f, a, k, 1, bank, win);
        double sum = 0.0;
        for (double tn : lp.term_norms) sum += tn;
        const double c = sum / std::sqrt(operator_norm(k.matrix()));
        CHECK(std::isfinite(c));
        if (c_prev >= 0.0) CHECK(c <= 3.0 * c_prev); // no blow-up across scales
        c_prev = c;
    }
}

TEST_CASE("litpaley: aliasing is detected") {
    const LPKernelBank bank = build_kernel_bank();
    // Nyquist for L = 4 pi, N = 256 is 32; a mode at 31.75 parks nearly all
    // spectral mass at the band edge.
    const AnalysisWindow win{4.0 * M_PI, 256, 1e-3};
    Rng rng(167);
    const HermitianMatrix a = scaled_hermitian(rng, 2, 0.5);
    const HermitianMatrix k = scaled_hermitian(rng, 2, 0.1);
    CHECK_THROWS_AS(litpaley_finite_difference(frequency_mode(31.75), a, k, 1, bank, win),
                    aliasing_error);
}
