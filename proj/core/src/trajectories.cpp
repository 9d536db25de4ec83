#include "subclassical/trajectories.hpp"

#include <cmath>
#include <string>

#include "subclassical/cp_map.hpp"
#include "subclassical/errors.hpp"
#include "subclassical/extension.hpp"
#include "subclassical/numerics.hpp"
#include "subclassical/rng.hpp"

namespace subclassical {

BipartiteUnitary BipartiteUnitary::validated(std::size_t sys_dim, std::size_t env_dim,
                                             ComplexMatrix u, ProbabilityVector env_state,
                                             double unitary_tol) {
    if (sys_dim == 0 || env_dim == 0) throw ValidationError("bipartite dimensions must be positive");
    if (u.rows() != sys_dim * env_dim || u.cols() != sys_dim * env_dim)
        throw ValidationError("incompatible tensor factorization");
    if (env_state.dim() != env_dim)
        throw ValidationError("environment state has wrong dimension");
    if (!u.all_finite() || !u.is_unitary(unitary_tol)) throw ValidationError("not unitary");
    return BipartiteUnitary{sys_dim, env_dim, std::move(u), std::move(env_state)};
}

StochasticMatrix r_from_unitary(const BipartiteUnitary& bu) {
    const std::size_t dim = bu.u.rows();
    std::vector<std::vector<double>> rows(dim, std::vector<double>(dim));
    for (std::size_t in = 0; in < dim; ++in)
        for (std::size_t out = 0; out < dim; ++out) rows[in][out] = std::norm(bu.u(out, in));
    return StochasticMatrix::validated(std::move(rows));
}

TraceIdentityReport trace_identity_check(const BipartiteUnitary& bu) {
    const std::size_t n = bu.sys_dim;
    const std::size_t env = bu.env_dim;
    const StochasticMatrix r = r_from_unitary(bu);

    std::vector<std::vector<double>> q_rows(n, std::vector<double>(n, 0.0));
    for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t y1 = 0; y1 < env; ++y1)
            for (std::size_t x2 = 0; x2 < n; ++x2)
                for (std::size_t y2 = 0; y2 < env; ++y2)
                    q_rows[x1][x2] += bu.env_state[y1] * r(x1 * env + y1, x2 * env + y2);
    const StochasticMatrix q = StochasticMatrix::validated(std::move(q_rows));

    // Independent route: pinched restriction of the traced CP map.
    const CPMap traced = cp_from_bipartite_unitary(bu.u, n, bu.env_state);
    double max_err = 0.0;
    for (std::size_t x2 = 0; x2 < n; ++x2) {
        const ComplexMatrix image = traced.apply(ComplexMatrix::unit(n, x2, x2));
        for (std::size_t x1 = 0; x1 < n; ++x1)
            max_err = std::max(max_err, std::abs(image(x1, x1).real() - q(x1, x2)));
    }
    return TraceIdentityReport{q, max_err};
}

bool is_deterministic_r(const BipartiteUnitary& bu, double tol) {
    const StochasticMatrix r = r_from_unitary(bu);
    const std::size_t dim = r.size();
    bool entries_01 = true;
    for (std::size_t i = 0; i < dim && entries_01; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double v = r(i, j);
            if (std::min(std::abs(v), std::abs(v - 1.0)) > tol) {
                entries_01 = false;
                break;
            }
        }

    // Cross-check: every conjugated product-diagonal projector stays diagonal.
    // U* |k><k| U = |U* e_k><U* e_k|; off-diagonal mass means two basis
    // vectors share amplitude, i.e. the projector left the algebra. Leakage is
    // measured in squared-modulus units (|entry|^2 = product of two R entries)
    // so both tests resolve near-deterministic inputs on the same scale.
    bool stable = true;
    for (std::size_t k = 0; k < dim && stable; ++k) {
        for (std::size_t a = 0; a < dim && stable; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
                if (a == b) continue;
                if (std::norm(std::conj(bu.u(k, a)) * bu.u(k, b)) > tol) {
                    stable = false;
                    break;
                }
            }
    }

    if (entries_01 != stable)
        throw ValidationError("determinism tests disagree: entries " +
                              std::to_string(entries_01) + ", stability " + std::to_string(stable));
    return entries_01;
}

std::vector<ComplexMatrix> environment_kraus(const BipartiteUnitary& bu) {
    const std::size_t n = bu.sys_dim;
    const std::size_t env = bu.env_dim;
    std::vector<ComplexMatrix> out;
    out.reserve(env);
    for (std::size_t y = 0; y < env; ++y) {
        ComplexMatrix m(n, n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t xp = 0; xp < n; ++xp) m(x, xp) = bu.u(x * env + y, xp * env + 0);
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<double> exact_outcome_law(const BipartiteUnitary& bu, const ComplexMatrix& rho) {
    const auto kraus = environment_kraus(bu);
    std::vector<double> law;
    law.reserve(kraus.size());
    for (const auto& m : kraus) {
        const complexd p = (m * rho * m.adjoint()).trace();
        law.push_back(std::max(0.0, p.real()));
    }
    return law;
}

TrajectoryState TrajectoryState::initial(ComplexMatrix rho, std::uint64_t rng_seed) {
    return TrajectoryState{std::move(rho), 0, rng_seed, {}};
}

namespace {

void require_density(const ComplexMatrix& rho) {
    if (!rho.is_square() || !rho.all_finite() || !rho.is_hermitian(1e-10))
        throw ValidationError("state is not a density matrix");
    if (std::abs(rho.trace() - complexd(1.0, 0.0)) > 1e-10)
        throw ValidationError("state is not a density matrix: trace != 1");
    for (std::size_t i = 0; i < rho.rows(); ++i)
        if (rho(i, i).real() < -1e-10)
            throw ValidationError("state is not a density matrix: negative population");
}

std::size_t draw_outcome(const std::vector<double>& law, double unit) {
    constexpr double kDegenerate = 1e-14;
    double total = 0.0;
    for (double p : law)
        if (p > kDegenerate) total += p;
    const double target = unit * total;
    double cum = 0.0;
    std::size_t last_live = 0;
    for (std::size_t y = 0; y < law.size(); ++y) {
        if (law[y] <= kDegenerate) continue;
        cum += law[y];
        last_live = y;
        if (target < cum) return y;
    }
    return last_live;
}

} // namespace

TrajectoryState trajectory_step(const BipartiteUnitary& bu, TrajectoryState s) {
    if (!bu.env_state.is_point_mass_at(0))
        throw ValidationError("trajectory sampling requires the environment in state |0><0|");
    require_density(s.rho);
    if (s.rho.rows() != bu.sys_dim) throw ValidationError("state dimension mismatch");

    const auto kraus = environment_kraus(bu);
    const std::vector<double> law = exact_outcome_law(bu, s.rho);
    const double unit = SplitMix64::unit_at(s.rng_seed, s.step);
    const std::size_t y = draw_outcome(law, unit);

    ComplexMatrix post = kraus[y] * s.rho * kraus[y].adjoint();
    post *= complexd(1.0 / law[y], 0.0);
    // Re-hermitize to keep round-off from accumulating over long runs.
    post = complexd(0.5, 0.0) * (post + post.adjoint());

    s.rho = std::move(post);
    s.step += 1;
    s.history.push_back(y);
    return s;
}

ProbabilityVector marginal_law(const BipartiteUnitary& bu, const ProbabilityVector& mu) {
    if (!bu.env_state.is_point_mass_at(0))
        throw ValidationError("marginal law requires the environment in state |0><0|");
    if (mu.dim() != bu.sys_dim) throw ValidationError("initial law has wrong dimension");

    const StochasticMatrix r = r_from_unitary(bu);
    const std::size_t env = bu.env_dim;
    std::vector<double> law(env, 0.0);
    for (std::size_t x = 0; x < bu.sys_dim; ++x) {
        if (mu[x] == 0.0) continue;
        for (std::size_t xp = 0; xp < bu.sys_dim; ++xp)
            for (std::size_t y = 0; y < env; ++y)
                law[y] += mu[x] * r(x * env + 0, xp * env + y);
    }
    return ProbabilityVector::validated(std::move(law), 1e-9);
}

TrajectoryRunReport run_one_step_batch(const BipartiteUnitary& bu, const ProbabilityVector& mu,
                                       std::size_t samples, std::uint64_t seed) {
    if (mu.dim() != bu.sys_dim) throw ValidationError("initial law has wrong dimension");
    ComplexMatrix rho(bu.sys_dim, bu.sys_dim);
    for (std::size_t x = 0; x < bu.sys_dim; ++x) rho(x, x) = mu[x];

    TrajectoryRunReport report;
    report.samples = samples;
    report.seed = seed;
    report.counts.assign(bu.env_dim, 0);
    report.exact_law = marginal_law(bu, mu).weights();

    const auto kraus = environment_kraus(bu);
    const std::vector<double> law = exact_outcome_law(bu, rho);
    for (std::size_t i = 0; i < samples; ++i) {
        const double unit = SplitMix64::unit_at(seed ^ static_cast<std::uint64_t>(i), 0);
        report.counts[draw_outcome(law, unit)] += 1;
    }
    for (std::size_t y = 0; y < bu.env_dim; ++y) {
        const double empirical =
            static_cast<double>(report.counts[y]) / static_cast<double>(samples);
        report.max_abs_deviation =
            std::max(report.max_abs_deviation, std::abs(empirical - report.exact_law[y]));
    }
    for (std::size_t y = 0; y < bu.env_dim; ++y) {
        if (law[y] <= 1e-14) {
            report.post_states.emplace_back();
            continue;
        }
        ComplexMatrix post = kraus[y] * rho * kraus[y].adjoint();
        post *= complexd(1.0 / law[y], 0.0);
        report.post_states.push_back(std::move(post));
    }
    return report;
}

namespace {

PhysicalExample make_example(ComplexMatrix h, const ComplexMatrix& closed_form_u, double t) {
    const ComplexMatrix u = matexp(complexd(0.0, -1.0) * h, t);
    if (u.distance_max(closed_form_u) > 1e-9)
        throw ValidationError("matrix exponential disagrees with the closed form");
    BipartiteUnitary bu =
        BipartiteUnitary::validated(2, 2, closed_form_u, ProbabilityVector::point_mass(2, 0));
    StochasticMatrix r = r_from_unitary(bu);
    BirkhoffDecomposition decomp = birkhoff_decompose(r.rows());
    return PhysicalExample{std::move(h), std::move(bu), std::move(r), std::move(decomp)};
}

} // namespace

PhysicalExample example_spontaneous_emission(double theta, double t) {
    const double angle = t * theta;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const complexd i(0.0, 1.0);
    ComplexMatrix h = ComplexMatrix::from_rows({
        {0, 0, 0, 0},
        {0, 0, -i * theta, 0},
        {0, i * theta, 0, 0},
        {0, 0, 0, 0},
    });
    const ComplexMatrix u = ComplexMatrix::from_rows({
        {1, 0, 0, 0},
        {0, c, -s, 0},
        {0, s, c, 0},
        {0, 0, 0, 1},
    });
    return make_example(std::move(h), u, t);
}

PhysicalExample example_spin(double lambda, double mu, double t) {
    const double alpha = t * (lambda - mu);
    const double beta = t * (lambda + mu);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const complexd i(0.0, 1.0);
    // lambda X(x)X + mu Y(x)Y couples |00>,|11> at rate lambda-mu and
    // |01>,|10> at rate lambda+mu.
    ComplexMatrix h = ComplexMatrix::from_rows({
        {0, 0, 0, lambda - mu},
        {0, 0, lambda + mu, 0},
        {0, lambda + mu, 0, 0},
        {lambda - mu, 0, 0, 0},
    });
    const ComplexMatrix u = ComplexMatrix::from_rows({
        {ca, 0, 0, -i * sa},
        {0, cb, -i * sb, 0},
        {0, -i * sb, cb, 0},
        {-i * sa, 0, 0, ca},
    });
    return make_example(std::move(h), u, t);
}

SpinMixtureWeights spin_mixture_weights(double lambda, double mu, double t) {
    const double ca2 = std::pow(std::cos(t * (lambda - mu)), 2);
    const double sa2 = std::pow(std::sin(t * (lambda - mu)), 2);
    const double cb2 = std::pow(std::cos(t * (lambda + mu)), 2);
    const double sb2 = std::pow(std::sin(t * (lambda + mu)), 2);
    return SpinMixtureWeights{ca2 * cb2, ca2 * sb2, sa2 * sb2, sa2 * cb2};
}

} // namespace subclassical
