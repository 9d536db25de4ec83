#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "subclassical/classical.hpp"
#include "subclassical/cp_map.hpp"
#include "subclassical/errors.hpp"
#include "subclassical/extension.hpp"
#include "subclassical/json_io.hpp"
#include "subclassical/trajectories.hpp"
#include "subclassical/verification.hpp"

namespace subclassical::cli {

namespace {

struct CommandConfig {
    std::optional<double> tol;   // overrides validation/classification tolerances
    std::uint64_t seed = 42;
    std::string out_path;        // empty: stdout
    std::string format = "json"; // "json" | "csv-summary"

    double row_tol() const { return tol.value_or(1e-10); }
    double classify_tol() const { return tol.value_or(1e-9); }
    double doubly_stochastic_tol() const { return tol.value_or(1e-9); }
};

json read_json_input(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") return json::parse(in);
    std::ifstream file(path);
    if (!file) throw ValidationError("cannot open input file: " + path);
    return json::parse(file);
}

using CsvRows = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void emit(const CommandConfig& config, const json& body, const CsvRows& summary,
          std::ostream& out) {
    std::string text;
    if (config.format == "csv-summary") {
        std::ostringstream os;
        os << "key,value\n";
        for (const auto& [k, v] : summary) os << k << "," << v << "\n";
        text = os.str();
    } else {
        text = body.dump(2) + "\n";
    }
    if (config.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(config.out_path, std::ios::binary);
        if (!file) throw ValidationError("cannot open output file: " + config.out_path);
        file << text;
    }
}

void add_common_flags(CLI::App* cmd, CommandConfig& config) {
    cmd->add_option("--tol", config.tol, "tolerance override, in (0, 1e-3]")
        ->check(CLI::Range(1e-300, 1e-3));
    cmd->add_option("--seed", config.seed, "RNG seed");
    cmd->add_option("--out", config.out_path, "write the result to a file instead of stdout");
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"json", "csv-summary"}));
}

void apply_env_tolerance(CommandConfig& config) {
    if (config.tol) return;
    const char* env = std::getenv("SUBCLASSICAL_TOL");
    if (!env) return;
    const double v = std::strtod(env, nullptr);
    if (!(v > 0.0) || v > 1e-3)
        throw ValidationError("SUBCLASSICAL_TOL must lie in (0, 1e-3]");
    config.tol = v;
}

// ---- dilate ---------------------------------------------------------------

int cmd_dilate(const CommandConfig& config, const std::string& input, std::istream& in,
               std::ostream& out) {
    const StochasticMatrix q = stochastic_from_json(read_json_input(input, in), config.row_tol());
    const Dilation d = build_dilation(q);
    const double restriction_error = dilation_restriction(d).distance_max(q);

    json body = to_json(d);
    body["verification"] = json{{"restriction_error", restriction_error}};
    emit(config, body,
         {{"env_size", std::to_string(d.env_size)},
          {"restriction_error", format_double(restriction_error)}},
         out);
    return 0;
}

// ---- extend -----------------------------------------------------------------

int cmd_extend(const CommandConfig& config, const std::string& input, std::istream& in,
               std::ostream& out) {
    const StochasticMatrix q = stochastic_from_json(read_json_input(input, in), config.row_tol());
    const Dilation d = build_dilation(q);
    const CPMap ext = canonical_extension(d);
    const SubclassicalClass cls = classify(ext, config.classify_tol());
    const double restriction_error = classical_restriction(ext).distance_max(q);

    json body = to_json(ext);
    body["classification"] = to_json(cls);
    body["restriction_error"] = restriction_error;
    emit(config, body,
         {{"dim", std::to_string(ext.dim())},
          {"kraus_count", std::to_string(ext.kraus().size())},
          {"doubly", cls.is_doubly ? "true" : "false"},
          {"restriction_error", format_double(restriction_error)}},
         out);
    return 0;
}

// ---- classify ---------------------------------------------------------------

int cmd_classify(const CommandConfig& config, const std::string& input, std::istream& in,
                 std::ostream& out) {
    const CPMap m = cp_map_from_json(read_json_input(input, in));
    const double min_eig = m.choi_min_eigenvalue();
    if (min_eig < -1e-6)
        throw CpViolationError("not completely positive: Choi eigenvalue " +
                               std::to_string(min_eig));
    const SubclassicalClass cls = classify(m, config.classify_tol());
    const double unitality_defect = m.unitality_defect();

    json body = to_json(cls);
    body["choi_min_eigenvalue"] = min_eig;
    body["unitality_defect"] = unitality_defect;
    body["unital"] = unitality_defect <= 1e-8;
    emit(config, body,
         {{"subclassical", cls.is_subclassical ? "true" : "false"},
          {"doubly", cls.is_doubly ? "true" : "false"},
          {"measurement", cls.is_measurement ? "true" : "false"},
          {"purely", cls.is_purely ? "true" : "false"},
          {"leakage", format_double(cls.leakage)},
          {"B_norm", format_double(cls.b_norm)},
          {"C_norm", format_double(cls.c_norm)},
          {"unital", unitality_defect <= 1e-8 ? "true" : "false"}},
         out);
    return 0;
}

// ---- birkhoff -----------------------------------------------------------------

int cmd_birkhoff(const CommandConfig& config, const std::string& input, std::istream& in,
                 std::ostream& out) {
    const auto rows = rows_from_json(read_json_input(input, in));
    const BirkhoffDecomposition decomp =
        birkhoff_decompose(rows, config.doubly_stochastic_tol());

    double reconstruction_error = 0.0;
    const auto reconstructed = decomp.reconstruct();
    for (std::size_t x = 0; x < rows.size(); ++x)
        for (std::size_t y = 0; y < rows.size(); ++y)
            reconstruction_error =
                std::max(reconstruction_error, std::abs(reconstructed[x][y] - rows[x][y]));

    json body = to_json(decomp);
    body["reconstruction_error"] = reconstruction_error;
    CsvRows summary{{"terms", std::to_string(decomp.weights.size())},
                    {"reconstruction_error", format_double(reconstruction_error)}};
    for (std::size_t l = 0; l < decomp.weights.size(); ++l)
        summary.emplace_back("weight_" + std::to_string(l), format_double(decomp.weights[l]));
    emit(config, body, summary, out);
    return 0;
}

// ---- trajectory / example ------------------------------------------------------

struct SystemParams {
    std::string system = "spontaneous-emission";
    double theta = 1.0;
    double t = 1.0;
    double lambda = 0.0;
    double mu = 0.0;
    std::string unitary_path;
};

void add_system_flags(CLI::App* cmd, SystemParams& params) {
    cmd->add_option("--system", params.system, "spontaneous-emission | spin | custom")
        ->check(CLI::IsMember({"spontaneous-emission", "spin", "custom"}));
    cmd->add_option("--theta", params.theta, "coupling rate (spontaneous-emission)");
    cmd->add_option("--t", params.t, "interaction time");
    cmd->add_option("--lambda", params.lambda, "XX coupling (spin)");
    cmd->add_option("--mu", params.mu, "YY coupling (spin)");
    cmd->add_option("--unitary", params.unitary_path,
                    "bipartite unitary JSON file (system: custom)");
}

struct BuiltSystem {
    BipartiteUnitary bu;
    json example_body;  // H/U/R/birkhoff, empty for custom systems
};

BuiltSystem build_system(const SystemParams& params, std::istream& in) {
    if (params.system == "custom") {
        BipartiteUnitary bu = bipartite_unitary_from_json(read_json_input(params.unitary_path, in));
        return BuiltSystem{std::move(bu), json::object()};
    }
    PhysicalExample ex = params.system == "spin"
                             ? example_spin(params.lambda, params.mu, params.t)
                             : example_spontaneous_emission(params.theta, params.t);
    json body{{"H", to_json(ex.h)},
              {"U", to_json(ex.bu.u)},
              {"R", to_json(ex.r)},
              {"birkhoff", to_json(ex.birkhoff)}};
    return BuiltSystem{std::move(ex.bu), std::move(body)};
}

ProbabilityVector parse_initial_law(const std::string& init, std::size_t sys_dim,
                                    double diag_tol) {
    if (init.empty()) return ProbabilityVector::uniform(sys_dim);

    json j;
    std::ifstream file(init);
    if (file) {
        j = json::parse(file);
    } else {
        j = json::parse(init);
    }
    if (j.is_array()) {
        std::vector<double> w;
        for (const auto& v : j) {
            if (!v.is_number()) throw ValidationError("initial law must hold numbers");
            w.push_back(v.get<double>());
        }
        if (w.size() != sys_dim) throw ValidationError("initial law has wrong dimension");
        return ProbabilityVector::validated(std::move(w), 1e-10);
    }
    // Full density matrix input: accepted only when diagonal.
    const ComplexMatrix rho = complex_matrix_from_json(j);
    if (rho.rows() != sys_dim || rho.cols() != sys_dim)
        throw ValidationError("initial state has wrong dimension");
    if (rho.offdiag_max_abs() > diag_tol)
        throw ValidationError("initial state must be diagonal");
    std::vector<double> w(sys_dim);
    for (std::size_t x = 0; x < sys_dim; ++x) w[x] = rho(x, x).real();
    return ProbabilityVector::validated(std::move(w), 1e-10);
}

int cmd_trajectory(const CommandConfig& config, const SystemParams& params,
                   const std::string& init, std::size_t steps, bool emit_final_states,
                   std::istream& in, std::ostream& out) {
    BuiltSystem system = build_system(params, in);
    const ProbabilityVector mu =
        parse_initial_law(init, system.bu.sys_dim, config.tol.value_or(1e-10));
    const TrajectoryRunReport report = run_one_step_batch(system.bu, mu, steps, config.seed);

    json body = to_json(report, emit_final_states);
    CsvRows summary{{"steps", std::to_string(report.samples)},
                    {"seed", std::to_string(report.seed)},
                    {"max_abs_deviation", format_double(report.max_abs_deviation)}};
    for (std::size_t y = 0; y < report.counts.size(); ++y)
        summary.emplace_back("count_" + std::to_string(y), std::to_string(report.counts[y]));
    emit(config, body, summary, out);
    return 0;
}

int cmd_example(const CommandConfig& config, const SystemParams& params, std::istream& in,
                std::ostream& out) {
    if (params.system == "custom")
        throw ValidationError("example requires a named system (spontaneous-emission | spin)");
    BuiltSystem system = build_system(params, in);
    CsvRows summary{{"system", params.system},
                    {"birkhoff_terms",
                     std::to_string(system.example_body["birkhoff"]["weights"].size())}};
    emit(config, system.example_body, summary, out);
    return 0;
}

// ---- verify ----------------------------------------------------------------------

int cmd_verify(const CommandConfig& config, bool verbose, const std::string& only,
               bool inject_fault, std::ostream& out) {
    VerificationOptions options;
    options.seed = config.seed;
    options.inject_fault = inject_fault;
    if (!only.empty()) options.only = only;

    const auto results = run_verification_suite(options);
    if (config.format == "csv-summary") {
        json ignored;
        CsvRows rows;
        for (const auto& r : results) rows.emplace_back(r.name, r.passed ? "PASS" : "FAIL");
        emit(config, ignored, rows, out);
    } else {
        for (const auto& r : results) {
            out << (r.passed ? "PASS" : "FAIL") << "  " << r.name;
            if (verbose) out << "  [" << std::fixed << std::setprecision(1) << r.millis << " ms]";
            out.unsetf(std::ios::floatfield);
            if (!r.detail.empty()) out << "  (" << r.detail << ")";
            out << "\n";
        }
    }
    if (results.empty()) {
        out << "no criteria matched\n";
        return 1;
    }
    return all_passed(results) ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"quantum extensions of finite-state Markov chains"};
    app.require_subcommand(1);

    CommandConfig config;
    std::string input_path;
    SystemParams params;
    std::string init;
    std::size_t steps = 1000;
    bool emit_final_states = false;
    bool verbose = false;
    bool inject_fault = false;
    std::string only;

    CLI::App* dilate = app.add_subcommand(
        "dilate", "build an invertible dilation of a stochastic matrix");
    dilate->add_option("input", input_path, "stochastic matrix JSON file (default: stdin)");
    add_common_flags(dilate, config);

    CLI::App* extend = app.add_subcommand(
        "extend", "build the canonical quantum extension of a stochastic matrix");
    extend->add_option("input", input_path, "stochastic matrix JSON file (default: stdin)");
    add_common_flags(extend, config);

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "classify a CP map given by its Kraus family");
    classify_cmd->add_option("input", input_path, "CP map JSON file (default: stdin)");
    add_common_flags(classify_cmd, config);

    CLI::App* birkhoff = app.add_subcommand(
        "birkhoff", "decompose a doubly stochastic matrix into permutations");
    birkhoff->add_option("input", input_path, "matrix JSON file (default: stdin)");
    add_common_flags(birkhoff, config);

    CLI::App* trajectory =
        app.add_subcommand("trajectory", "sample one-step measurement outcomes");
    add_system_flags(trajectory, params);
    trajectory->add_option("--init", init, "initial diagonal law (JSON array or file)");
    trajectory->add_option("--steps", steps, "number of samples");
    trajectory->add_flag("--emit-final-states", emit_final_states,
                         "include post-measurement states in the report");
    add_common_flags(trajectory, config);

    CLI::App* example = app.add_subcommand("example", "emit H, U, R and the Birkhoff mixture");
    add_system_flags(example, params);
    add_common_flags(example, config);

    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
    verify->add_flag("--verbose", verbose, "per-criterion timing");
    verify->add_option("--only", only, "run only criteria whose name contains this substring");
    verify->add_flag("--inject-fault", inject_fault,
                     "perturb an intermediate result (failure-path testing)");
    add_common_flags(verify, config);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        apply_env_tolerance(config);
        if (dilate->parsed()) return cmd_dilate(config, input_path, in, out);
        if (extend->parsed()) return cmd_extend(config, input_path, in, out);
        if (classify_cmd->parsed()) return cmd_classify(config, input_path, in, out);
        if (birkhoff->parsed()) return cmd_birkhoff(config, input_path, in, out);
        if (trajectory->parsed())
            return cmd_trajectory(config, params, init, steps, emit_final_states, in, out);
        if (example->parsed()) return cmd_example(config, params, in, out);
        if (verify->parsed()) return cmd_verify(config, verbose, only, inject_fault, out);
        err << "no subcommand selected\n";
        return 2;
    } catch (const json::parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CpViolationError& e) {
        err << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        err << e.what() << "\n";
        return 3;
    }
}

} // namespace subclassical::cli
