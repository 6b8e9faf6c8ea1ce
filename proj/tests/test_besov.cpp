#include <doctest.h>

#include <cmath>

#include "opmod/besov.hpp"
#include "opmod/rng.hpp"

using namespace opmod;

namespace {

SampledFunction sample_lambda(double L, std::size_t N, const std::function<cplx(double)>& fn) {
    std::vector<cplx> vals(N);
    for (std::size_t j = 0; j < N; ++j)
        vals[j] = fn(-L + 2.0 * L * static_cast<double>(j) / static_cast<double>(N));
    return SampledFunction(L, std::move(vals));
}

} // namespace

TEST_CASE("kernel bank: support, normalization, partition identity") {
    for (const LPKernelBank& bank : {build_kernel_bank(), build_kernel_bank_cos()}) {
        CHECK(bank.w(1.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(bank.w(0.25) == 0.0);
        CHECK(bank.w(4.0) == 0.0);
        CHECK(bank.w(0.5) == 0.0);
        CHECK(bank.w(2.0) == 0.0);
        for (double x = 1.0; x <= 2.0; x += 0.01)
            CHECK(bank.w(x) == doctest::Approx(1.0 - bank.w(x / 2.0)).epsilon(1e-12));
        // Telescoping partition of unity across 36 octaves.
        Rng rng(202);
        for (int t = 0; t < 200; ++t) {
            const double x = std::pow(2.0, rng.uniform(-18.0, 18.0));
            double total = 0.0;
            for (int n = -22; n <= 22; ++n) total += bank.w(x / std::ldexp(1.0, n));
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
        CHECK(bank.v(0.3) == 1.0);
        CHECK(bank.v(-1.0) == 1.0);
        CHECK(bank.v(1.5) == doctest::Approx(bank.w(1.5)));
        CHECK(bank.v(-1.5) == doctest::Approx(bank.w(1.5)));
        CHECK(bank.v(2.5) == 0.0);
    }
}

TEST_CASE("SampledFunction validation") {
    CHECK_THROWS_AS(SampledFunction(1.0, std::vector<cplx>(3)), invalid_parameter);
    CHECK_THROWS_AS(SampledFunction(-1.0, std::vector<cplx>(4)), invalid_parameter);
    std::vector<cplx> bad(4);
    bad[2] = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(SampledFunction(1.0, bad), invalid_input);
}

TEST_CASE("analyze/synthesize roundtrip and pointwise interpolation") {
    Rng rng(211);
    std::vector<cplx> vals(256);
    for (auto& v : vals) v = rng.complex_normal();
    const SampledFunction f(3.0, vals);
    const TrigSeries s = analyze(f);
    const SampledFunction back = synthesize(s, 3.0, 256);
    double worst = 0.0;
    for (std::size_t j = 0; j < 256; ++j) worst = std::max(worst, std::abs(back.values[j] - vals[j]));
    CHECK(worst <= 1e-12 * (1.0 + f.max_abs()));
    for (std::size_t j : {std::size_t{0}, std::size_t{17}, std::size_t{255}})
        CHECK(std::abs(s.eval(f.grid_point(j)) - vals[j]) <= 1e-10);
}

TEST_CASE("dyadic_block: multiplier action on a pure frequency") {
    const LPKernelBank bank = build_kernel_bank();
    const double L = 4.0 * M_PI;
    const std::size_t N = 1024;
    const double tau = 3.0; // on the lattice: 12 * (1/4)
    const SampledFunction f =
        sample_lambda(L, N, [tau](double x) { return std::polar(1.0, tau * x); });

    const auto [pos, neg] = dyadic_block(f, 1, bank); // tau/2 = 1.5 inside [1/2, 2]
    const double w = bank.w(tau / 2.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < N; ++j)
        worst = std::max(worst, std::abs(pos.values[j] - w * f.values[j]));
    CHECK(worst <= 1e-10);
    CHECK(neg.max_abs() <= 1e-12);

    // Far block vanishes.
    const auto [pos4, neg4] = dyadic_block(f, 4, bank); // tau/16 < 1/2
    CHECK(pos4.max_abs() <= 1e-12);
    CHECK(neg4.max_abs() <= 1e-12);

    CHECK_THROWS_AS(dyadic_block(f, 30, bank), aliasing_error);
}

TEST_CASE("dyadic_block: real input gives conjugate-mirror halves") {
    const LPKernelBank bank = build_kernel_bank();
    Rng rng(223);
    const SampledFunction f = sample_lambda(4.0 * M_PI, 512, [&](double x) {
        return cplx(std::cos(3.0 * x) + 0.5 * std::sin(5.0 * x), 0.0);
    });
    const auto [pos, neg] = dyadic_block(f, 2, bank);
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        worst = std::max(worst, std::abs(neg.values[j] - std::conj(pos.values[j])));
    CHECK(worst <= 1e-10);
}

TEST_CASE("vn_approx: low-pass identity and cutoff") {
    const LPKernelBank bank = build_kernel_bank();
    const double L = 4.0 * M_PI;
    const SampledFunction f =
        sample_lambda(L, 512, [](double x) { return std::polar(1.0, 2.0 * x); });
    const SampledFunction id = vn_approx(f, 1, bank); // v(2/2) = 1
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        worst = std::max(worst, std::abs(id.values[j] - f.values[j]));
    CHECK(worst <= 1e-10);

    const SampledFunction zero = vn_approx(f, -1, bank); // 2 / 2^{-1} = 4 >= 2
    CHECK(zero.max_abs() <= 1e-12);
}

TEST_CASE("modulus_of_continuity: sine and constants") {
    const double L = 4.0 * M_PI;
    const std::size_t N = 4096;
    const SampledFunction f = sample_lambda(L, N, [](double x) { return cplx(std::sin(x), 0.0); });
    const double step = f.grid_step();
    for (double target : {0.5, 1.0, 2.0}) {
        const double x = std::round(target / step) * step; // land on the h-lattice
        CHECK(modulus_of_continuity(f, 1, x) ==
              doctest::Approx(2.0 * std::sin(x / 2.0)).epsilon(1e-4));
    }
    const SampledFunction c = sample_lambda(L, 256, [](double) { return cplx(2.5, 0.0); });
    CHECK(modulus_of_continuity(c, 1, 1.0) <= 1e-14);
    CHECK(modulus_of_continuity(c, 2, 1.0) <= 1e-14);
    CHECK_THROWS_AS(modulus_of_continuity(f, 1, 100.0), invalid_parameter);
}

TEST_CASE("modulus_of_continuity: doubling property") {
    Rng rng(227);
    const double L = 4.0 * M_PI;
    const SampledFunction f = sample_lambda(L, 2048, [&](double x) {
        return cplx(std::sin(2.0 * x) + 0.3 * std::cos(5.0 * x), 0.0);
    });
    for (int m : {1, 2}) {
        for (double x : {0.25, 0.5, 1.0}) {
            const double w1 = modulus_of_continuity(f, m, x);
            const double w2 = modulus_of_continuity(f, m, 2.0 * x);
            CHECK(w2 <= std::ldexp(1.0, m) * w1 + 1e-9);
        }
    }
}

TEST_CASE("holder_zygmund_norm: single frequency and cusp corridor") {
    const LPKernelBank bank = build_kernel_bank();
    const double L = 4.0 * M_PI;
    const double tau = 4.0;
    const SampledFunction mode =
        sample_lambda(L, 1024, [tau](double x) { return std::polar(1.0, tau * x); });
    const double alpha = 0.5;
    const HolderZygmundNorm hz = holder_zygmund_norm(mode, alpha, bank);
    // Exactly one active pair of blocks: dyadic seminorm is 2^{n alpha} w(...)
    // summed over the two covering blocks, each <= tau^alpha.
    CHECK(hz.dyadic <= 2.0 * std::pow(tau, alpha) + 1e-9);
    CHECK(hz.dyadic >= 0.25 * std::pow(tau, alpha));
    CHECK(hz.m == 1);

    const SampledFunction cusp = sample_lambda(L, 4096, [](double x) {
        return cplx(std::sqrt(std::abs(std::sin(x))), 0.0);
    });
    const HolderZygmundNorm hc = holder_zygmund_norm(cusp, 0.5, bank);
    CHECK(std::isfinite(hc.difference_based));
    CHECK(std::isfinite(hc.dyadic));
    const double ratio = hc.dyadic / hc.difference_based;
    CHECK(ratio >= 1.0 / 50.0);
    CHECK(ratio <= 50.0);

    const SampledFunction flat = sample_lambda(L, 256, [](double) { return cplx(1.0, 0.0); });
    const HolderZygmundNorm hf = holder_zygmund_norm(flat, 0.5, bank);
    CHECK(hf.difference_based <= 1e-12);
    CHECK(hf.dyadic <= 1e-12);
}

TEST_CASE("lambda_omega_norm: identity function has norm one") {
    const ModulusFunction om([](double t) { return t; }, 1, "t");
    const SampledFunction f =
        sample_lambda(8.0, 1024, [](double x) { return cplx(x, 0.0); });
    CHECK(lambda_omega_norm(f, om) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ModulusFunction validation") {
    CHECK_NOTHROW(ModulusFunction([](double t) { return std::sqrt(t); }, 1, "sqrt"));
    CHECK_NOTHROW(ModulusFunction([](double t) { return std::min(t, 1.0); }, 1, "capped"));
    // Constant: does not vanish at 0.
    CHECK_THROWS_AS(ModulusFunction([](double) { return 1.0; }, 1, "const"), invalid_parameter);
    // Order-1 doubling violated by t^2.
    CHECK_THROWS_AS(ModulusFunction([](double t) { return t * t; }, 1, "t^2"), invalid_parameter);
    // Fine at order 2.
    CHECK_NOTHROW(ModulusFunction([](double t) { return t * t; }, 2, "t^2"));
    // Decreasing rejected.
    CHECK_THROWS_AS(ModulusFunction([](double t) { return 1.0 / (1.0 + t); }, 1, "dec"),
                    invalid_parameter);
}

TEST_CASE("omega_star: closed form, divergence, lower bound") {
    const ModulusFunction sqrt_mod([](double t) { return std::sqrt(t); }, 1, "sqrt");
    for (double x : {0.01, 0.5, 2.0}) {
        const double want = std::sqrt(x) / 0.5; // x^alpha / (m - alpha)
        CHECK(omega_star(sqrt_mod, 1, x) == doctest::Approx(want).epsilon(1e-8));
    }
    const ModulusFunction lin([](double t) { return t; }, 1, "t");
    CHECK(std::isinf(omega_star(lin, 1, 0.7)));

    const ModulusFunction capped([](double t) { return std::min(t, 2.0); }, 1, "capped");
    for (double x : {0.1, 1.0}) {
        CHECK(std::isfinite(omega_star(capped, 1, x)));
        CHECK(omega_star(capped, 1, x) >= capped(x) / 1.0 - 1e-9);
    }
    const ModulusFunction q([](double t) { return t * t; }, 2, "t^2");
    CHECK(std::isinf(omega_star(q, 2, 1.0)));
    const ModulusFunction q32([](double t) { return std::pow(t, 1.5); }, 2, "t^1.5");
    CHECK(omega_star(q32, 2, 1.0) == doctest::Approx(1.0 / 0.5).epsilon(1e-8));
}
