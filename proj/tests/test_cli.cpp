#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "subclassical/cp_map.hpp"
#include "subclassical/json_io.hpp"
#include "subclassical/stochastic_matrix.hpp"

using namespace subclassical;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run_cli(args, in, out, err);
    return CliResult{code, out.str(), err.str()};
}

} // namespace

TEST_CASE("dilate: identity chain") {
    const CliResult r = run({"dilate"}, R"({"n":2,"rows":[[1,0],[0,1]]})");
    REQUIRE(r.code == 0);
    const json body = json::parse(r.out);
    CHECK(body["env_size"] == 2);
    CHECK(body["verification"]["restriction_error"] == 0.0);
}

TEST_CASE("dilate: generic chain gets a 6-point environment") {
    const CliResult r = run({"dilate"}, R"({"n":2,"rows":[[0.7,0.3],[0.2,0.8]]})");
    REQUIRE(r.code == 0);
    const json body = json::parse(r.out);
    CHECK(body["env_size"] == 6);
    CHECK(body["verification"]["restriction_error"].get<double>() <= 1e-12);
}

TEST_CASE("dilate: exit codes for bad input") {
    CHECK(run({"dilate"}, R"({"n":2,"rows":[[0.7,0.2],[0.2,0.8]]})").code == 3);
    CHECK(run({"dilate"}, "{not json").code == 2);
    const CliResult r = run({"dilate"}, R"({"n":2,"rows":[[0.7,0.2],[0.2,0.8]]})");
    CHECK(r.err.find("not stochastic") != std::string::npos);
    CHECK(r.err.find("row 0") != std::string::npos);
}

TEST_CASE("extend: always doubly subclassical with a tight round trip") {
    for (const std::string input :
         {std::string(R"({"n":2,"rows":[[1,0],[0,1]]})"),
          std::string(R"({"n":2,"rows":[[0.7,0.3],[0.2,0.8]]})"),
          std::string(R"({"n":2,"rows":[[1,0],[1,0]]})")}) {
        const CliResult r = run({"extend"}, input);
        REQUIRE(r.code == 0);
        const json body = json::parse(r.out);
        CHECK(body["classification"]["doubly"] == true);
        CHECK(body["restriction_error"].get<double>() <= 1e-12);
    }
}

TEST_CASE("classify: the stock families") {
    SUBCASE("purely subclassical family") {
        const json input =
            to_json(phi_of_q(StochasticMatrix::validated({{0.5, 0.5}, {0.5, 0.5}})));
        const CliResult r = run({"classify"}, input.dump());
        REQUIRE(r.code == 0);
        const json body = json::parse(r.out);
        CHECK(body["purely"] == true);
        CHECK(body["unital"] == true);
    }
    SUBCASE("swap conjugation is doubly but not measurement") {
        const json input = json::parse(
            R"({"dim":2,"kraus":[{"rows":2,"cols":2,"data":[[0,0],[1,0],[1,0],[0,0]]}]})");
        const CliResult r = run({"classify"}, input.dump());
        REQUIRE(r.code == 0);
        const json body = json::parse(r.out);
        CHECK(body["doubly"] == true);
        CHECK(body["measurement"] == false);
    }
    SUBCASE("non-unital family gets a warning, not an error") {
        const double s = 1.0 / std::sqrt(2.0);
        json kraus = json::array();
        kraus.push_back(json{{"rows", 2},
                             {"cols", 2},
                             {"data", json::array({json::array({s, 0.0}), json::array({0.0, 0.0}),
                                                   json::array({0.0, 0.0}), json::array({s, 0.0})})}});
        const CliResult r = run({"classify"}, json{{"dim", 2}, {"kraus", kraus}}.dump());
        REQUIRE(r.code == 0);
        const json body = json::parse(r.out);
        CHECK(body["unital"] == false);
        CHECK(body["unitality_defect"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("CP violation exits with code 4") {
        json choi = to_json(vn_measurement(2).choi());
        choi["data"][5] = {-0.5, 0.0};  // entry (1,1): negative eigenvalue
        const CliResult r = run({"classify"}, json{{"dim", 2}, {"choi", choi}}.dump());
        CHECK(r.code == 4);
        CHECK(r.err.find("not completely positive") != std::string::npos);
    }
    SUBCASE("inconsistent dimensions exit with code 3") {
        const json input = json::parse(
            R"({"dim":3,"kraus":[{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}]})");
        CHECK(run({"classify"}, input.dump()).code == 3);
    }
}

TEST_CASE("birkhoff: doubly stochastic input decomposes and reconstructs") {
    const CliResult r = run({"birkhoff"}, R"({"n":2,"rows":[[0.5,0.5],[0.5,0.5]]})");
    REQUIRE(r.code == 0);
    const json body = json::parse(r.out);
    CHECK(body["weights"].size() == 2);
    CHECK(body["reconstruction_error"].get<double>() <= 1e-15);

    CHECK(run({"birkhoff"}, R"({"n":2,"rows":[[0.7,0.3],[0.2,0.8]]})").code == 3);
}

TEST_CASE("trajectory: identity system concentrates on outcome 0") {
    json u{{"sys_dim", 2},
           {"env_dim", 2},
           {"u", to_json(ComplexMatrix::identity(4))},
           {"env_state", {1.0, 0.0}}};
    std::ofstream("build_test_identity_unitary.json") << u.dump();
    const CliResult r = run({"trajectory", "--system", "custom", "--unitary",
                             "build_test_identity_unitary.json", "--steps", "500", "--seed", "9"});
    REQUIRE(r.code == 0);
    const json body = json::parse(r.out);
    CHECK(body["counts"]["0"] == 500);
    CHECK(body["exact_law"][0].get<double>() == 1.0);
    std::remove("build_test_identity_unitary.json");
}

TEST_CASE("trajectory: named system matches the statistical oracle") {
    const CliResult r = run({"trajectory", "--system", "spontaneous-emission", "--theta", "1",
                             "--t", "0.7853981633974483", "--init", "[0,1]", "--steps", "100000",
                             "--seed", "42"});
    REQUIRE(r.code == 0);
    const json body = json::parse(r.out);
    const double sigma = std::sqrt(0.25 / 100000.0);
    CHECK(body["max_abs_deviation"].get<double>() <= 3.0 * sigma);
}

TEST_CASE("trajectory: spin system exact law for the uniform start") {
    const CliResult r = run({"trajectory", "--system", "spin", "--lambda", "1.0471975511965976",
                             "--mu", "0.5235987755982988", "--t", "1", "--init", "[0.5,0.5]",
                             "--steps", "1000", "--seed", "3"});
    REQUIRE(r.code == 0);
    const json body = json::parse(r.out);
    CHECK(body["exact_law"][0].get<double>() == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(body["exact_law"][1].get<double>() == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("trajectory: non-diagonal initial state is out of scope") {
    json rho = to_json(ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
    const CliResult r = run({"trajectory", "--system", "spontaneous-emission", "--init",
                             rho.dump(), "--steps", "10"});
    CHECK(r.code == 3);
    CHECK(r.err.find("diagonal") != std::string::npos);
}

TEST_CASE("example: spin system emits matrices and the mixture") {
    const CliResult r = run({"example", "--system", "spin", "--lambda", "1.0471975511965976",
                             "--mu", "0.5235987755982988", "--t", "1"});
    REQUIRE(r.code == 0);
    const json body = json::parse(r.out);
    CHECK(body.contains("H"));
    CHECK(body.contains("U"));
    CHECK(body.contains("R"));
    CHECK(body["birkhoff"]["weights"].size() == 2);
    // R(0,3) = sin^2(t(lambda-mu)) = 1/4.
    CHECK(body["R"]["rows"][0][3].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("outputs are byte-identical across runs") {
    const std::string input = R"({"n":3,"rows":[[0.2,0.5,0.3],[0.4,0.1,0.5],[0.25,0.25,0.5]]})";
    CHECK(run({"dilate"}, input).out == run({"dilate"}, input).out);
    CHECK(run({"extend"}, input).out == run({"extend"}, input).out);

    const std::vector<std::string> traj{"trajectory", "--system", "spin", "--lambda", "0.9",
                                        "--mu", "0.4", "--steps", "2000", "--seed", "7"};
    CHECK(run(traj).out == run(traj).out);
}

TEST_CASE("csv summary format") {
    const CliResult r =
        run({"dilate", "--format", "csv-summary"}, R"({"n":2,"rows":[[1,0],[0,1]]})");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("key,value\n") == 0);
    CHECK(r.out.find("env_size,2") != std::string::npos);
}

TEST_CASE("verify: filtered runs and fault injection") {
    const CliResult ok = run({"verify", "--only", "gauge"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS  gauge invariance") != std::string::npos);

    const CliResult fail = run({"verify", "--only", "spontaneous", "--inject-fault"});
    CHECK(fail.code == 1);
    CHECK(fail.out.find("FAIL  spontaneous emission closed forms") != std::string::npos);

    const CliResult timed = run({"verify", "--only", "gauge", "--verbose"});
    CHECK(timed.out.find(" ms]") != std::string::npos);
}

TEST_CASE("tolerance override via environment variable") {
    // A row sum off by 5e-9 fails at the default 1e-10 but passes at 1e-7.
    const std::string input = R"({"n":2,"rows":[[0.7,0.300000005],[0.2,0.8]]})";
    CHECK(run({"dilate"}, input).code == 3);

    setenv("SUBCLASSICAL_TOL", "1e-7", 1);
    CHECK(run({"dilate"}, input).code == 0);
    setenv("SUBCLASSICAL_TOL", "0.5", 1);
    CHECK(run({"dilate"}, input).code == 3);  // out of the allowed range
    unsetenv("SUBCLASSICAL_TOL");
}

TEST_CASE("unknown arguments exit with the parse code") {
    CHECK(run({"dilate", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
}
