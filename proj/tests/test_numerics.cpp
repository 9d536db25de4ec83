#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "subclassical/errors.hpp"
#include "subclassical/numerics.hpp"
#include "subclassical/sampling.hpp"

using namespace subclassical;

namespace {

const ComplexMatrix kSigmaX = ComplexMatrix::from_rows({{0, 1}, {1, 0}});

ComplexMatrix random_square(std::size_t rows, std::size_t cols, SplitMix64& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = complexd(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
    return m;
}

} // namespace

TEST_CASE("kron: identities and basis entries") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(kron(i2, i2).approx_equal(ComplexMatrix::identity(4), 0.0));

    const ComplexMatrix anti = kron(kSigmaX, i2);
    CHECK(anti.approx_equal(ComplexMatrix::from_rows({{0, 0, 1, 0},
                                                      {0, 0, 0, 1},
                                                      {1, 0, 0, 0},
                                                      {0, 1, 0, 0}}),
                            0.0));

    const ComplexMatrix xx = kron(kSigmaX, kSigmaX);
    CHECK(xx(0, 3) == complexd(1.0, 0.0));
    CHECK(xx(3, 0) == complexd(1.0, 0.0));
    CHECK(xx(1, 2) == complexd(1.0, 0.0));
    CHECK(xx(0, 0) == complexd(0.0, 0.0));
}

TEST_CASE("kron: associativity and mixed-product property") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t p = 2 + rng.next() % 3;
        const std::size_t q = 2 + rng.next() % 3;
        const ComplexMatrix a = random_square(p, p, rng);
        const ComplexMatrix b = random_square(q, q, rng);
        const ComplexMatrix c = random_square(2, 2, rng);
        const ComplexMatrix d = random_square(p, p, rng);
        const ComplexMatrix e = random_square(q, q, rng);

        CHECK(kron(kron(a, b), c).distance_max(kron(a, kron(b, c))) <= 1e-12);
        CHECK(kron(a * d, b * e).distance_max(kron(a, b) * kron(d, e)) <= 1e-12);
    }
}

TEST_CASE("weighted_partial_trace: product operators") {
    SplitMix64 rng(102);
    const ComplexMatrix a = random_square(3, 3, rng);
    const ComplexMatrix b = random_square(2, 2, rng);
    const ComplexMatrix omega = random_density(2, rng);

    CHECK(weighted_partial_trace(kron(a, ComplexMatrix::identity(2)), omega).distance_max(a) <=
          1e-12);

    const ComplexMatrix ket0 = ComplexMatrix::unit(2, 0, 0);
    ComplexMatrix scaled = a;
    scaled *= b(0, 0);
    CHECK(weighted_partial_trace(kron(a, b), ket0).distance_max(scaled) <= 1e-12);
}

TEST_CASE("weighted_partial_trace: swap unitary against the index-sum oracle") {
    ComplexMatrix swap(4, 4);
    swap(0, 0) = 1;
    swap(1, 2) = 1;
    swap(2, 1) = 1;
    swap(3, 3) = 1;
    const ComplexMatrix omega = ComplexMatrix::diagonal(std::vector<double>{0.3, 0.7});

    const ComplexMatrix z = weighted_partial_trace(swap, omega);
    CHECK(z.distance_max(ComplexMatrix::diagonal(std::vector<double>{0.3, 0.7})) <= 1e-12);
    CHECK(z.distance_max(oracles::brute_weighted_partial_trace(swap, omega)) <= 1e-14);
}

TEST_CASE("weighted_partial_trace: trace compatibility") {
    SplitMix64 rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t sys = 2 + rng.next() % 2;
        const std::size_t env = 2 + rng.next() % 2;
        const ComplexMatrix y = random_square(sys * env, sys * env, rng);
        const ComplexMatrix rho = random_density(sys, rng);
        const ComplexMatrix omega = random_density(env, rng);

        const complexd lhs = (rho * weighted_partial_trace(y, omega)).trace();
        const complexd rhs = (kron(rho, omega) * y).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-11);
    }
}

TEST_CASE("weighted_partial_trace: dimension mismatch") {
    const ComplexMatrix y(6, 6);
    const ComplexMatrix omega = ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5, 0.0, 0.0});
    CHECK_THROWS_WITH_AS(weighted_partial_trace(y, omega), "incompatible tensor factorization",
                         ValidationError);
}

TEST_CASE("matexp: zero time gives the identity") {
    SplitMix64 rng(104);
    const ComplexMatrix a = random_square(5, 5, rng);
    CHECK(matexp(a, 0.0).approx_equal(ComplexMatrix::identity(5), 0.0));
}

TEST_CASE("matexp: rotation generator closed form") {
    const double theta = 0.83;
    const ComplexMatrix gen = ComplexMatrix::from_rows({{0, -theta}, {theta, 0}});
    for (const double t : {0.1, 0.5, 1.0, 2.7}) {
        const double angle = t * theta;
        const ComplexMatrix expected = ComplexMatrix::from_rows(
            {{std::cos(angle), -std::sin(angle)}, {std::sin(angle), std::cos(angle)}});
        CHECK(matexp(gen, t).distance_max(expected) <= 1e-13);
    }
}

TEST_CASE("matexp: spin interaction closed form at lambda=pi/3, mu=pi/6") {
    const double lambda = M_PI / 3.0, mu = M_PI / 6.0;
    const double alpha = lambda - mu, beta = lambda + mu;
    const complexd i(0.0, 1.0);
    const ComplexMatrix h = ComplexMatrix::from_rows({{0, 0, 0, alpha},
                                                      {0, 0, beta, 0},
                                                      {0, beta, 0, 0},
                                                      {alpha, 0, 0, 0}});
    const ComplexMatrix expected =
        ComplexMatrix::from_rows({{std::cos(alpha), 0, 0, -i * std::sin(alpha)},
                                  {0, std::cos(beta), -i * std::sin(beta), 0},
                                  {0, -i * std::sin(beta), std::cos(beta), 0},
                                  {-i * std::sin(alpha), 0, 0, std::cos(alpha)}});
    CHECK(matexp(complexd(0.0, -1.0) * h, 1.0).distance_max(expected) <= 1e-9);
}

TEST_CASE("matexp: semigroup and unitarity properties") {
    SplitMix64 rng(105);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.next() % 3;
        ComplexMatrix a = random_square(n, n, rng);
        const double norm = a.inf_norm();
        if (norm > 2.0) a *= complexd(2.0 / norm, 0.0);
        const double s = 2.0 * rng.next_unit();
        const double t = 2.0 * rng.next_unit();
        CHECK((matexp(a, s) * matexp(a, t)).distance_max(matexp(a, s + t)) <= 1e-10);

        const ComplexMatrix h = random_hermitian(n, rng);
        const ComplexMatrix u = matexp(complexd(0.0, -1.0) * h, t);
        CHECK((u.adjoint() * u).distance_max(ComplexMatrix::identity(n)) <= 1e-10);
    }
}

TEST_CASE("hermitian_eigenvalues: fixed spectra") {
    CHECK(hermitian_eigenvalues(ComplexMatrix::diagonal(std::vector<double>{3, 1, 2})) ==
          std::vector<double>{1, 2, 3});

    const auto pauli = hermitian_eigenvalues(kSigmaX);
    REQUIRE(pauli.size() == 2);
    CHECK(pauli[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(pauli[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigenvalues: characteristic polynomial oracle") {
    SplitMix64 rng(106);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h = random_hermitian(4, rng);
        const auto jacobi = hermitian_eigenvalues(h);
        const auto roots = oracles::char_poly_eigenvalues(h);
        REQUIRE(jacobi.size() == roots.size());
        for (std::size_t k = 0; k < jacobi.size(); ++k)
            CHECK(jacobi[k] == doctest::Approx(roots[k]).epsilon(1e-9));
    }
}

TEST_CASE("hermitian_eigenvalues: reconstruction residual") {
    SplitMix64 rng(107);
    for (const std::size_t n : {2, 5, 9}) {
        const ComplexMatrix h = random_hermitian(n, rng);
        const EigenSystem es = hermitian_eigensystem(h);
        const ComplexMatrix d = ComplexMatrix::diagonal(es.values);
        const ComplexMatrix reconstructed = es.vectors * d * es.vectors.adjoint();
        CHECK(reconstructed.distance_max(h) <= 1e-10 * std::max(1.0, h.max_abs()));
        CHECK((es.vectors.adjoint() * es.vectors)
                  .distance_max(ComplexMatrix::identity(n)) <= 1e-12);
    }
}

TEST_CASE("hermitian_eigenvalues: conjugated diagonal recovers sorted spectrum") {
    SplitMix64 rng(108);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 2 + rng.next() % 4;
        std::vector<double> diag(n);
        for (auto& v : diag) v = 4.0 * rng.next_unit() - 2.0;
        const ComplexMatrix u = random_unitary(n, rng);
        const ComplexMatrix a = u.adjoint() * ComplexMatrix::diagonal(diag) * u;

        std::vector<double> expected = diag;
        std::sort(expected.begin(), expected.end());
        const auto got = hermitian_eigenvalues(a);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-9));
    }
}

TEST_CASE("hermitian_eigenvalues: rejects non-Hermitian input") {
    CHECK_THROWS_WITH_AS(hermitian_eigenvalues(ComplexMatrix::from_rows({{0, 1}, {0, 0}})),
                         "not Hermitian", ValidationError);
}

TEST_CASE("matexp: agrees with the spectral route for Hermitian generators up to dim 16") {
    SplitMix64 rng(109);
    for (const std::size_t n : {4, 9, 16}) {
        const ComplexMatrix h = random_hermitian(n, rng);
        const double t = 1.7;

        const EigenSystem es = hermitian_eigensystem(h);
        std::vector<complexd> phases(n);
        for (std::size_t k = 0; k < n; ++k)
            phases[k] = std::exp(complexd(0.0, -t * es.values[k]));
        const ComplexMatrix spectral =
            es.vectors * ComplexMatrix::diagonal(phases) * es.vectors.adjoint();

        const ComplexMatrix direct = matexp(complexd(0.0, -1.0) * h, t);
        const double budget = 1e-12 * std::exp(t * h.inf_norm());
        CHECK(direct.distance_max(spectral) <= std::max(budget, 1e-11));
    }
}
