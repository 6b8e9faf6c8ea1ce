#include <doctest.h>

#include <cmath>

#include "opmod/eig.hpp"
#include "opmod/matrix_io.hpp"
#include "opmod/rng.hpp"
#include "opmod/svd.hpp"

using namespace opmod;

namespace {

ComplexMatrix real2x2(double a, double b, double c, double d) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

} // namespace

TEST_CASE("hermitian_eig: forced 2x2 spectrum") {
    const HermitianMatrix a(real2x2(2, 1, 1, 2));
    const EigenDecomposition e = hermitian_eig(a);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: diagonal input gives sorted permutation basis") {
    const HermitianMatrix a(ComplexMatrix::diag(std::vector<double>{5.0, -1.0, 0.0}));
    const EigenDecomposition e = hermitian_eig(a);
    CHECK(e.eigenvalues[0] == doctest::Approx(5.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(0.0));
    CHECK(e.eigenvalues[2] == doctest::Approx(-1.0));
    // Columns must be standard basis vectors (permutation).
    for (std::size_t j = 0; j < 3; ++j) {
        int ones = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            const double v = std::abs(e.vectors(i, j));
            CHECK((v < 1e-14 || v == doctest::Approx(1.0)));
            if (v > 0.5) ++ones;
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("hermitian_eig: reconstruction and unitarity on random input") {
    Rng rng(42);
    for (int t = 0; t < 5; ++t) {
        const HermitianMatrix a = random_hermitian(rng, 8);
        const EigenDecomposition e = hermitian_eig(a);
        const double scale = 1.0 + operator_norm(a.matrix());
        CHECK((e.reconstruct() - a.matrix()).max_abs() <= 1e-10 * scale);
        const ComplexMatrix gram = e.vectors.adjoint() * e.vectors;
        CHECK((gram - ComplexMatrix::identity(8)).max_abs() <= 1e-10);
        for (std::size_t i = 0; i + 1 < 8; ++i)
            CHECK(e.eigenvalues[i] >= e.eigenvalues[i + 1]);
    }
}

TEST_CASE("hermitian_eig: deterministic") {
    Rng rng(7);
    const HermitianMatrix a = random_hermitian(rng, 6);
    const EigenDecomposition e1 = hermitian_eig(a);
    const EigenDecomposition e2 = hermitian_eig(a);
    CHECK((e1.vectors - e2.vectors).max_abs() == 0.0);
    CHECK(e1.eigenvalues == e2.eigenvalues);
}

TEST_CASE("HermitianMatrix rejects bad input") {
    CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 3)), invalid_input);
    ComplexMatrix skew = real2x2(0, 1, -1, 0);
    CHECK_THROWS_AS(HermitianMatrix(skew), invalid_input);
    ComplexMatrix nan2(1, 1);
    nan2(0, 0) = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(HermitianMatrix(nan2), invalid_input);
}

TEST_CASE("degenerate sizes are accepted") {
    const ComplexMatrix empty(0, 0);
    CHECK(singular_values(empty).values.empty());
    CHECK(schatten_norm(empty, 1.0) == 0.0);
    const HermitianMatrix h0(empty);
    CHECK(hermitian_eig(h0).eigenvalues.empty());

    ComplexMatrix one(1, 1);
    one(0, 0) = -2.0;
    CHECK(singular_values(one).values[0] == doctest::Approx(2.0));
    CHECK(hermitian_eig(HermitianMatrix(one)).eigenvalues[0] == doctest::Approx(-2.0));
}

TEST_CASE("singular_values: diagonal and rank-one") {
    CHECK(singular_values(ComplexMatrix::diag(std::vector<double>{3.0, -4.0})).values ==
          std::vector<double>{4.0, 3.0});

    Rng rng(11);
    const ComplexMatrix u = random_matrix(rng, 5, 1);
    const ComplexMatrix v = random_matrix(rng, 4, 1);
    ComplexMatrix m(5, 4);
    double un = 0.0, vn = 0.0;
    for (std::size_t i = 0; i < 5; ++i) un += std::norm(u(i, 0));
    for (std::size_t j = 0; j < 4; ++j) vn += std::norm(v(j, 0));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = u(i, 0) * std::conj(v(j, 0));
    const SingularValueList s = singular_values(m);
    CHECK(s.values[0] == doctest::Approx(std::sqrt(un * vn)).epsilon(1e-10));
    for (std::size_t j = 1; j < s.values.size(); ++j) CHECK(s.values[j] == 0.0);
}

TEST_CASE("singular_values: Eckart-Young oracle on a random 6x5 matrix") {
    Rng rng(13);
    const ComplexMatrix t = random_matrix(rng, 6, 5);
    const SvdResult dec = svd(t);
    // s_j(T) = ||T - best rank-j approximation||.
    for (std::size_t j = 0; j < 5; ++j) {
        const double resid = operator_norm(t - dec.reconstruct(j));
        CHECK(resid == doctest::Approx(dec.values[j]).epsilon(1e-9));
    }
    // Reconstruction at full rank.
    CHECK((t - dec.reconstruct(5)).max_abs() <= 1e-10 * (1.0 + t.max_abs()));
}

TEST_CASE("schatten_norm: pinned values and monotonicity in p") {
    CHECK(schatten_norm(ComplexMatrix::identity(4), 2.0) == doctest::Approx(2.0));
    CHECK(schatten_norm(ComplexMatrix::diag(std::vector<double>{3.0, -4.0}),
                        std::numeric_limits<double>::infinity()) == doctest::Approx(4.0));
    CHECK_THROWS_AS(schatten_norm(ComplexMatrix::identity(2), 0.0), invalid_parameter);
    CHECK_THROWS_AS(schatten_norm(ComplexMatrix::identity(2), -1.0), invalid_parameter);

    Rng rng(17);
    const ComplexMatrix t = random_matrix(rng, 5, 5);
    double prev = std::numeric_limits<double>::infinity();
    for (double p : {0.5, 1.0, 2.0, 3.0, 10.0}) {
        const double v = schatten_norm(t, p);
        CHECK(v <= prev * (1.0 + 1e-12));
        prev = v;
    }
    CHECK(schatten_norm(t, 1.0) >=
          schatten_norm(t, std::numeric_limits<double>::infinity()) - 1e-12);
}

TEST_CASE("kyfan_norm: pinned values and the sandwich bound") {
    const ComplexMatrix d = ComplexMatrix::diag(std::vector<double>{3.0, 2.0, 1.0});
    CHECK(kyfan_norm(d, 1.0, 1) == doctest::Approx(5.0));
    CHECK(kyfan_norm(d, 1.0, 2) == doctest::Approx(schatten_norm(d, 1.0)));
    CHECK_THROWS_AS(kyfan_norm(d, 1.0, 3), invalid_parameter);
    CHECK_THROWS_AS(kyfan_norm(d, 0.5, 1), invalid_parameter);

    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + rng.index(6);
        const ComplexMatrix m = random_matrix(rng, n, n);
        const double p = 1.0 + rng.uniform(0.0, 3.0);
        const std::size_t l = rng.index(n);
        const double kf = kyfan_norm(m, p, l);
        const double on = operator_norm(m);
        CHECK(kf >= on - 1e-9);
        CHECK(kf <= std::pow(static_cast<double>(l + 1), 1.0 / p) * on + 1e-9);
    }
}

TEST_CASE("optimal_s1l_split: diagonal case against enumeration") {
    const ComplexMatrix t = ComplexMatrix::diag(std::vector<double>{3.0, 1.0});
    const S1lSplit split = optimal_s1l_split(t, 0);
    CHECK(split.cost == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(split.cost == doctest::Approx(kyfan_norm(t, 1.0, 0)).epsilon(1e-12));
    CHECK((split.t1 + split.t2 - t).max_abs() <= 1e-12);
    // Expected clip: T2 = diag(1,1), T1 = diag(2,0).
    CHECK(split.t2(0, 0).real() == doctest::Approx(1.0));
    CHECK(split.t2(1, 1).real() == doctest::Approx(1.0));
    CHECK(split.t1(0, 0).real() == doctest::Approx(2.0));

    // Enumeration oracle: diagonal splits T2 = diag(x, y).
    double best = 1e300;
    for (int xi = 0; xi <= 300; ++xi)
        for (int yi = 0; yi <= 100; ++yi) {
            const double x = 0.01 * xi, y = 0.01 * yi;
            const double cost = (3.0 - x) + (1.0 - y) + std::max(x, y);
            best = std::min(best, cost);
        }
    CHECK(split.cost <= best + 1e-9);
}

TEST_CASE("optimal_s1l_split: l = min-1 degenerates to the full trace norm") {
    Rng rng(23);
    const ComplexMatrix t = random_matrix(rng, 4, 4);
    const S1lSplit split = optimal_s1l_split(t, 3);
    CHECK(split.cost == doctest::Approx(schatten_norm(t, 1.0)).epsilon(1e-10));
    CHECK((split.t1 + split.t2 - t).max_abs() <= 1e-12 * (1.0 + t.max_abs()));
}

TEST_CASE("optimal_s1l_split: random matrix beats random splits") {
    Rng rng(29);
    const ComplexMatrix t = random_matrix(rng, 6, 6);
    const S1lSplit split = optimal_s1l_split(t, 2);
    const double kf = kyfan_norm(t, 1.0, 2);
    CHECK(split.cost == doctest::Approx(kf).epsilon(1e-9));
    for (int r = 0; r < 100; ++r) {
        ComplexMatrix t1 = random_matrix(rng, 6, 6);
        t1 *= cplx(rng.uniform(0.0, 1.0), 0.0);
        const ComplexMatrix t2 = t - t1;
        const double cost = schatten_norm(t1, 1.0) + 3.0 * operator_norm(t2);
        CHECK(cost >= split.cost - 1e-9);
    }
}

TEST_CASE("property: Weyl triangle for top singular values") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng.index(5);
        const ComplexMatrix a = random_matrix(rng, n, n);
        const ComplexMatrix b = random_matrix(rng, n, n);
        CHECK(operator_norm(a + b) <= operator_norm(a) + operator_norm(b) + 1e-10);
    }
}

TEST_CASE("property: unitary invariance of Schatten norms") {
    Rng rng(37);
    for (int t = 0; t < 8; ++t) {
        const std::size_t n = 3 + rng.index(4);
        const ComplexMatrix m = random_matrix(rng, n, n);
        const ComplexMatrix u = random_unitary(rng, n);
        const ComplexMatrix v = random_unitary(rng, n);
        for (double p : {1.0, 2.0, 3.7, std::numeric_limits<double>::infinity()}) {
            const double lhs = schatten_norm(u * m * v, p);
            const double rhs = schatten_norm(m, p);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("property: one-sided Ky Fan split inequality") {
    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 3 + rng.index(4);
        const ComplexMatrix a = random_matrix(rng, n, n);
        const ComplexMatrix b = random_matrix(rng, n, n);
        const std::size_t l = rng.index(n);
        const double kf = kyfan_norm(a + b, 1.0, l);
        CHECK(kf <= schatten_norm(a, 1.0) + static_cast<double>(l + 1) * operator_norm(b) + 1e-9);
    }
}

TEST_CASE("matrix JSON roundtrip, rejection of bad payloads") {
    Rng rng(43);
    const ComplexMatrix m = random_matrix(rng, 3, 5);
    const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK((m - back).max_abs() == 0.0);

    nlohmann::json bad = matrix_to_json(m);
    bad["re"][0] = std::nan("");
    CHECK_THROWS_AS(matrix_from_json(bad), invalid_input);
    bad = matrix_to_json(m);
    bad["cols"] = 7;
    CHECK_THROWS_AS(matrix_from_json(bad), invalid_input);
}
