#include <doctest.h>

#include "subclassical/errors.hpp"
#include "subclassical/json_io.hpp"
#include "subclassical/sampling.hpp"

using namespace subclassical;

TEST_CASE("json round trips preserve every structure") {
    SplitMix64 rng(501);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 4;

        const ComplexMatrix m = random_operator(n, rng);
        CHECK(complex_matrix_from_json(to_json(m)).distance_max(m) == 0.0);

        const StochasticMatrix q = random_stochastic(n, rng);
        CHECK(stochastic_from_json(to_json(q)).distance_max(q) == 0.0);

        const Dilation d = build_dilation(q);
        const Dilation d2 = dilation_from_json(to_json(d));
        CHECK(d2.env_size == d.env_size);
        CHECK(d2.t.forward_map() == d.t.forward_map());
        CHECK(d2.nu.weights() == d.nu.weights());

        const CPMap cp = mk_kraus_from_q(q);
        CHECK(cp_map_from_json(to_json(cp)).choi().distance_max(cp.choi()) == 0.0);
    }
}

TEST_CASE("json serialization is deterministic") {
    SplitMix64 rng(502);
    const StochasticMatrix q = random_stochastic(3, rng);
    CHECK(to_json(build_dilation(q)).dump() == to_json(build_dilation(q)).dump());
}

TEST_CASE("json schema violations are rejected with clear messages") {
    CHECK_THROWS_AS(complex_matrix_from_json(json::parse(R"({"rows":2,"cols":2})")),
                    ValidationError);
    CHECK_THROWS_AS(complex_matrix_from_json(
                        json::parse(R"({"rows":2,"cols":2,"data":[[0,0],[0,0],[0,0]]})")),
                    ValidationError);
    CHECK_THROWS_AS(stochastic_from_json(json::parse(R"({"n":2,"rows":[[1,0]]})")),
                    ValidationError);
    CHECK_THROWS_AS(dilation_from_json(json::parse(R"({"env_size":2,"nu":[1,0],"forward":[0,0,1,2]})")),
                    ValidationError);
    CHECK_THROWS_AS(cp_map_from_json(json::parse(R"({"dim":2,"kraus":[]})")), ValidationError);
}

TEST_CASE("cp map json accepts a Choi matrix and enforces positivity") {
    const CPMap pinch = vn_measurement(2);
    json j{{"dim", 2}, {"choi", to_json(pinch.choi())}};
    CHECK(cp_map_from_json(j).choi().distance_max(pinch.choi()) <= 1e-12);

    ComplexMatrix bad = pinch.choi();
    bad(1, 1) = -0.5;  // forces a negative eigenvalue
    json jbad{{"dim", 2}, {"choi", to_json(bad)}};
    CHECK_THROWS_AS(cp_map_from_json(jbad), CpViolationError);
}

TEST_CASE("bipartite unitary json validates unitarity") {
    json good{{"sys_dim", 2},
              {"env_dim", 2},
              {"u", to_json(ComplexMatrix::identity(4))},
              {"env_state", {1.0, 0.0}}};
    CHECK_NOTHROW(bipartite_unitary_from_json(good));

    json bad = good;
    bad["u"]["data"][0] = {2.0, 0.0};
    CHECK_THROWS_WITH_AS(bipartite_unitary_from_json(bad), "not unitary", ValidationError);
}
