#include "subclassical/json_io.hpp"

#include <string>

#include "subclassical/errors.hpp"

namespace subclassical {

namespace {

const json& require_key(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::size_t require_size(const json& j, const char* key) {
    const json& v = require_key(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ValidationError(std::string("key \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::vector<double> real_vector(const json& v, const char* what) {
    if (!v.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) throw ValidationError(std::string(what) + " must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

json to_json(const ComplexMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json to_json(const StochasticMatrix& q) {
    json rows = json::array();
    for (const auto& row : q.rows()) rows.push_back(row);
    return json{{"n", q.size()}, {"rows", std::move(rows)}};
}

json to_json(const Dilation& d) {
    json forward = json::array();
    for (std::size_t i = 0; i < d.t.size(); ++i) forward.push_back(d.t.forward(i));
    return json{{"env_size", d.env_size}, {"nu", d.nu.weights()}, {"forward", std::move(forward)}};
}

json to_json(const CPMap& m) {
    json kraus = json::array();
    for (const auto& k : m.kraus()) kraus.push_back(to_json(k));
    return json{{"dim", m.dim()}, {"kraus", std::move(kraus)}};
}

json to_json(const SubclassicalClass& c) {
    return json{{"subclassical", c.is_subclassical},
                {"doubly", c.is_doubly},
                {"measurement", c.is_measurement},
                {"purely", c.is_purely},
                {"Q", c.q_block},
                {"leakage", c.leakage},
                {"B_norm", c.b_norm},
                {"C_norm", c.c_norm}};
}

json to_json(const BirkhoffDecomposition& d) {
    return json{{"weights", d.weights}, {"permutations", d.permutations}};
}

json to_json(const TrajectoryRunReport& r, bool include_final_states) {
    json counts = json::object();
    for (std::size_t y = 0; y < r.counts.size(); ++y) counts[std::to_string(y)] = r.counts[y];
    json deviations = json::array();
    for (std::size_t y = 0; y < r.counts.size(); ++y) {
        const double empirical =
            static_cast<double>(r.counts[y]) / static_cast<double>(r.samples);
        deviations.push_back(std::abs(empirical - r.exact_law[y]));
    }
    json out{{"steps", r.samples},
             {"seed", r.seed},
             {"counts", std::move(counts)},
             {"exact_law", r.exact_law},
             {"deviations", std::move(deviations)},
             {"max_abs_deviation", r.max_abs_deviation}};
    if (include_final_states) {
        json states = json::array();
        for (const auto& s : r.post_states)
            states.push_back(s.empty() ? json(nullptr) : to_json(s));
        out["final_states"] = std::move(states);
    }
    return out;
}

ComplexMatrix complex_matrix_from_json(const json& j) {
    const std::size_t rows = require_size(j, "rows");
    const std::size_t cols = require_size(j, "cols");
    const json& data = require_key(j, "data");
    if (!data.is_array() || data.size() != rows * cols)
        throw ValidationError("matrix \"data\" must hold rows*cols entries");
    ComplexMatrix m(rows, cols);
    std::size_t idx = 0;
    for (const auto& entry : data) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
            throw ValidationError("matrix entries must be [re, im] pairs");
        m(idx / cols, idx % cols) = complexd(entry[0].get<double>(), entry[1].get<double>());
        ++idx;
    }
    if (!m.all_finite()) throw ValidationError("matrix entries not finite");
    return m;
}

std::vector<std::vector<double>> rows_from_json(const json& j) {
    const std::size_t n = require_size(j, "n");
    const json& rows = require_key(j, "rows");
    if (!rows.is_array() || rows.size() != n) throw ValidationError("\"rows\" must hold n rows");
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (const auto& row : rows) {
        auto r = real_vector(row, "matrix row");
        if (r.size() != n) throw ValidationError("matrix row has wrong length");
        out.push_back(std::move(r));
    }
    return out;
}

StochasticMatrix stochastic_from_json(const json& j, double row_tol) {
    return StochasticMatrix::validated(rows_from_json(j), row_tol);
}

Dilation dilation_from_json(const json& j) {
    const std::size_t env = require_size(j, "env_size");
    auto nu = real_vector(require_key(j, "nu"), "\"nu\"");
    const json& fwd = require_key(j, "forward");
    if (!fwd.is_array()) throw ValidationError("\"forward\" must be an array");
    std::vector<std::size_t> forward;
    forward.reserve(fwd.size());
    for (const auto& v : fwd) {
        if (!v.is_number_integer() && !v.is_number_unsigned())
            throw ValidationError("\"forward\" must hold indices");
        forward.push_back(v.get<std::size_t>());
    }
    if (env == 0 || forward.size() % env != 0)
        throw ValidationError("\"forward\" length must be a multiple of env_size");
    if (nu.size() != env) throw ValidationError("\"nu\" must have env_size entries");
    return Dilation{env, ProbabilityVector::validated(std::move(nu), 1e-10),
                    FiniteBijection::from_forward(std::move(forward))};
}

CPMap cp_map_from_json(const json& j) {
    const std::size_t dim = require_size(j, "dim");
    if (j.contains("choi") && !j.contains("kraus")) {
        const ComplexMatrix choi = complex_matrix_from_json(j.at("choi"));
        if (!choi.is_hermitian(1e-8)) throw ValidationError("Choi matrix is not Hermitian");
        return CPMap(dim, kraus_from_choi(choi, dim, 1e-6));
    }
    const json& kraus = require_key(j, "kraus");
    if (!kraus.is_array() || kraus.empty())
        throw ValidationError("\"kraus\" must be a non-empty array");
    std::vector<ComplexMatrix> family;
    family.reserve(kraus.size());
    for (const auto& k : kraus) {
        ComplexMatrix m = complex_matrix_from_json(k);
        if (m.rows() != dim || m.cols() != dim)
            throw ValidationError("Kraus operator has inconsistent dimensions");
        family.push_back(std::move(m));
    }
    return CPMap(dim, std::move(family));
}

BipartiteUnitary bipartite_unitary_from_json(const json& j) {
    const std::size_t sys = require_size(j, "sys_dim");
    const std::size_t env = require_size(j, "env_dim");
    ComplexMatrix u = complex_matrix_from_json(require_key(j, "u"));
    auto env_state = real_vector(require_key(j, "env_state"), "\"env_state\"");
    return BipartiteUnitary::validated(sys, env, std::move(u),
                                       ProbabilityVector::validated(std::move(env_state), 1e-10));
}

} // namespace subclassical
