#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numeric>

#include "subclassical/classical.hpp"
#include "subclassical/errors.hpp"
#include "subclassical/sampling.hpp"

using namespace subclassical;

TEST_CASE("validate_stochastic: acceptance and rejection") {
    CHECK_NOTHROW(validate_stochastic({{1, 0}, {0, 1}}));
    CHECK_NOTHROW(validate_stochastic({{0.7, 0.3}, {0.2, 0.8}}));

    // Tiny negatives are clamped to zero.
    const StochasticMatrix clamped = validate_stochastic({{1.0 + 1e-13, -1e-13}, {0, 1}});
    CHECK(clamped(0, 1) == 0.0);

    CHECK_THROWS_WITH_AS(validate_stochastic({{0.7, 0.2}, {0.2, 0.8}}),
                         "not stochastic: row 0 sums to 0.900000", ValidationError);
    CHECK_THROWS_AS(validate_stochastic({{1.0, -1e-3}, {0, 1}}), ValidationError);
}

TEST_CASE("deterministic_mixture_decompose: fixed instances") {
    SUBCASE("identity") {
        const auto mix = deterministic_mixture_decompose(StochasticMatrix::identity(2));
        REQUIRE(mix.weights.size() == 1);
        CHECK(mix.weights[0] == 1.0);
        CHECK(mix.maps[0] == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("generic 2x2 chain, greedy order") {
        const auto mix =
            deterministic_mixture_decompose(validate_stochastic({{0.7, 0.3}, {0.2, 0.8}}));
        REQUIRE(mix.weights.size() == 3);
        CHECK(mix.weights[0] == doctest::Approx(0.7).epsilon(1e-14));
        CHECK(mix.weights[1] == doctest::Approx(0.2).epsilon(1e-14));
        CHECK(mix.weights[2] == doctest::Approx(0.1).epsilon(1e-13));
        CHECK(mix.maps[0] == std::vector<std::size_t>{0, 1});
        CHECK(mix.maps[1] == std::vector<std::size_t>{1, 0});
        CHECK(mix.maps[2] == std::vector<std::size_t>{1, 1});
    }
    SUBCASE("already deterministic") {
        const auto mix = deterministic_mixture_decompose(validate_stochastic({{1, 0}, {1, 0}}));
        REQUIRE(mix.weights.size() == 1);
        CHECK(mix.weights[0] == 1.0);
        CHECK(mix.maps[0] == std::vector<std::size_t>{0, 0});
    }
}

TEST_CASE("deterministic_mixture_decompose: reconstruction on random chains") {
    SplitMix64 rng(201);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const StochasticMatrix q = random_stochastic(n, rng);
        const auto mix = deterministic_mixture_decompose(q);

        CHECK(mix.weights.size() <= n * (n - 1) + 1);
        for (double w : mix.weights) CHECK(w > 0.0);
        CHECK(mix.reconstruct(n).distance_max(q) <= 1e-12);
    }
}

TEST_CASE("complete_to_bijection: stated completions") {
    SUBCASE("identity map") {
        const FiniteBijection s = complete_to_bijection({0, 1});
        CHECK(s.forward_map() == std::vector<std::size_t>{0, 1, 3, 2});
    }
    SUBCASE("constant map") {
        const FiniteBijection s = complete_to_bijection({0, 0});
        CHECK(s.forward_map() == std::vector<std::size_t>{0, 2, 1, 3});
    }
}

TEST_CASE("complete_to_bijection: always a permutation carrying f on fiber 0") {
    SplitMix64 rng(202);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 5;
        std::vector<std::size_t> f(n);
        for (auto& v : f) v = rng.next() % n;

        const FiniteBijection s = complete_to_bijection(f);
        std::vector<bool> seen(n * n, false);
        for (std::size_t i = 0; i < n * n; ++i) {
            CHECK(!seen[s.forward(i)]);
            seen[s.forward(i)] = true;
            CHECK(s.backward(s.forward(i)) == i);
        }
        for (std::size_t x = 0; x < n; ++x) CHECK(s.forward(x * n) == f[x] * n + x);
    }
}

TEST_CASE("build_dilation: fixed instances") {
    SUBCASE("identity chain") {
        const Dilation d = build_dilation(StochasticMatrix::identity(2));
        CHECK(d.env_size == 2);
        CHECK(d.nu.is_point_mass_at(0));
        CHECK(dilation_restriction(d).distance_max(StochasticMatrix::identity(2)) == 0.0);
    }
    SUBCASE("collapsing chain") {
        const StochasticMatrix q = validate_stochastic({{1, 0}, {1, 0}});
        const Dilation d = build_dilation(q);
        CHECK(d.env_size == 2);
        CHECK(d.nu.is_point_mass_at(0));
        CHECK(d.t.forward(0 * 2 + 0) == 0 * 2 + 0);  // T(0,(0,0)) = (0,(0,0))
        CHECK(d.t.forward(1 * 2 + 0) == 0 * 2 + 1);  // T(1,(0,0)) = (0,(0,1))
        CHECK(dilation_restriction(d).distance_max(q) == 0.0);
    }
    SUBCASE("generic chain has a 6-point environment") {
        const StochasticMatrix q = validate_stochastic({{0.7, 0.3}, {0.2, 0.8}});
        const Dilation d = build_dilation(q);
        CHECK(d.env_size == 6);
        CHECK(dilation_restriction(d).distance_max(q) <= 1e-12);
    }
}

TEST_CASE("build_dilation: restriction round-trip on random chains") {
    SplitMix64 rng(203);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const StochasticMatrix q = random_stochastic(n, rng);
        CHECK(dilation_restriction(build_dilation(q)).distance_max(q) <= 1e-12);
    }
}

TEST_CASE("dilation_restriction: uniform environment law always yields row sums 1") {
    SplitMix64 rng(204);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 3;
        const std::size_t env = 2 + trial % 4;
        const Dilation d{env, ProbabilityVector::uniform(env), random_bijection(n * env, rng)};
        CHECK_NOTHROW(dilation_restriction(d));  // validation enforces the row sums
    }
}

TEST_CASE("birkhoff_decompose: fixed instances") {
    SUBCASE("permutation input") {
        const auto decomp = birkhoff_decompose({{0, 1}, {1, 0}});
        REQUIRE(decomp.weights.size() == 1);
        CHECK(decomp.weights[0] == 1.0);
        CHECK(decomp.permutations[0] == std::vector<std::size_t>{1, 0});
    }
    SUBCASE("maximally mixed 2x2") {
        const auto decomp = birkhoff_decompose({{0.5, 0.5}, {0.5, 0.5}});
        REQUIRE(decomp.weights.size() == 2);
        CHECK(decomp.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(decomp.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
        // Only two 2x2 permutations exist; both must appear.
        const bool has_id = decomp.permutations[0] == std::vector<std::size_t>{0, 1} ||
                            decomp.permutations[1] == std::vector<std::size_t>{0, 1};
        const bool has_swap = decomp.permutations[0] == std::vector<std::size_t>{1, 0} ||
                              decomp.permutations[1] == std::vector<std::size_t>{1, 0};
        CHECK(has_id);
        CHECK(has_swap);
    }
    SUBCASE("spin-example matrix at lambda=pi/3, mu=pi/6, t=1") {
        const auto decomp = birkhoff_decompose(
            {{0.75, 0, 0, 0.25}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0.25, 0, 0, 0.75}});
        REQUIRE(decomp.weights.size() == 2);
        double low = decomp.weights[0], high = decomp.weights[1];
        if (low > high) std::swap(low, high);
        CHECK(low == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(high == doctest::Approx(0.75).epsilon(1e-12));
    }
}

TEST_CASE("birkhoff_decompose: reconstruction, positivity, bounds") {
    SplitMix64 rng(205);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 2 + trial % 4;
        // Random doubly stochastic matrix: convex mixture of random permutations.
        std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
        const std::size_t terms = 1 + rng.next() % 6;
        std::vector<double> mix(terms);
        double total = 0.0;
        for (auto& w : mix) {
            w = rng.next_unit() + 1e-3;
            total += w;
        }
        for (std::size_t k = 0; k < terms; ++k) {
            const FiniteBijection perm = random_bijection(n, rng);
            for (std::size_t x = 0; x < n; ++x) r[x][perm.forward(x)] += mix[k] / total;
        }

        const auto decomp = birkhoff_decompose(r);
        CHECK(decomp.weights.size() <= (n - 1) * (n - 1) + 1);
        CHECK(std::abs(std::accumulate(decomp.weights.begin(), decomp.weights.end(), 0.0) -
                       1.0) <= 1e-14);

        const auto reconstructed = decomp.reconstruct();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                CHECK(std::abs(reconstructed[x][y] - r[x][y]) <= 1e-9);

        for (std::size_t l = 0; l < decomp.weights.size(); ++l) {
            CHECK(decomp.weights[l] > 0.0);
            std::vector<bool> hit(n, false);
            for (std::size_t x = 0; x < n; ++x) {
                CHECK(!hit[decomp.permutations[l][x]]);
                hit[decomp.permutations[l][x]] = true;
            }
        }
    }
}

TEST_CASE("birkhoff_decompose: rejects non-doubly-stochastic input") {
    CHECK_THROWS_AS(birkhoff_decompose({{0.7, 0.3}, {0.2, 0.8}}), ValidationError);
    try {
        birkhoff_decompose({{0.7, 0.3}, {0.2, 0.8}});
    } catch (const ValidationError& e) {
        CHECK(std::strstr(e.what(), "not doubly stochastic") != nullptr);
    }
}

TEST_CASE("birkhoff_decompose: deterministic across repeated runs") {
    SplitMix64 rng(206);
    std::vector<std::vector<double>> r(4, std::vector<double>(4, 0.0));
    for (const auto& [w, shift] : {std::pair{0.3, 1}, {0.45, 2}, {0.25, 3}})
        for (std::size_t x = 0; x < 4; ++x) r[x][(x + shift) % 4] += w;

    const auto first = birkhoff_decompose(r);
    const auto second = birkhoff_decompose(r);
    CHECK(first.weights == second.weights);
    CHECK(first.permutations == second.permutations);
}

TEST_CASE("finite bijection: rejects non-bijective forward maps") {
    CHECK_THROWS_WITH_AS(FiniteBijection::from_forward({0, 0, 2}), "map is not a bijection",
                         ValidationError);
    CHECK_THROWS_AS(FiniteBijection::from_forward({0, 3, 1}), ValidationError);
}
