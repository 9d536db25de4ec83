#pragma once

#include <cstdint>
#include <vector>

#include "subclassical/classical.hpp"
#include "subclassical/complex_matrix.hpp"
#include "subclassical/stochastic_matrix.hpp"

namespace subclassical {

/**
 * Unitary on a system (x) environment product space, basis |x,y> with the
 * environment index y varying fastest, together with the diagonal
 * environment state omega = diag(env_state).
 */
struct BipartiteUnitary {
    std::size_t sys_dim;
    std::size_t env_dim;
    ComplexMatrix u;
    ProbabilityVector env_state;

    static BipartiteUnitary validated(std::size_t sys_dim, std::size_t env_dim, ComplexMatrix u,
                                      ProbabilityVector env_state, double unitary_tol = 1e-10);
};

/**
 * The doubly stochastic matrix of squared transition amplitudes,
 * R_{(x1,y1),(x2,y2)} = |<x2,y2| U |x1,y1>|^2, on the product index set.
 */
StochasticMatrix r_from_unitary(const BipartiteUnitary& bu);

struct TraceIdentityReport {
    StochasticMatrix q;   // environment trace of R
    double max_err;       // distance to the restriction of the traced CP map
};

/// Q(x1,x2) = sum_{y1,y2} env_state(y1) R_{(x1,y1),(x2,y2)}, cross-checked
/// against the pinched classical restriction of Tr_omega[U*(X (x) I)U].
TraceIdentityReport trace_identity_check(const BipartiteUnitary& bu);

/// True iff every entry of R is 0 or 1 within tol; cross-checked against
/// direct stability of the product diagonal algebra under U* . U.
bool is_deterministic_r(const BipartiteUnitary& bu, double tol = 1e-9);

/// One-step measurement operators M_y, (M_y)_{x,x'} = <x,y|U|x',0>, for an
/// environment prepared in |0><0|.
std::vector<ComplexMatrix> environment_kraus(const BipartiteUnitary& bu);

/// Exact outcome law p(y) = Tr[M_y rho M_y*].
std::vector<double> exact_outcome_law(const BipartiteUnitary& bu, const ComplexMatrix& rho);

/**
 * System state within a repeated-measurement run. rho must be a density
 * matrix; step indexes the position in the RNG stream of rng_seed.
 */
struct TrajectoryState {
    ComplexMatrix rho;
    std::size_t step = 0;
    std::uint64_t rng_seed = 0;
    std::vector<std::size_t> history;

    static TrajectoryState initial(ComplexMatrix rho, std::uint64_t rng_seed);
};

/**
 * One interaction-measurement round: compute the exact outcome law of the
 * current state, draw an outcome by inverse CDF from the deterministic
 * stream (rng_seed, step), and collapse. Outcomes with p(y) <= 1e-14 are
 * never drawn. Requires env_state = point mass at y = 0.
 */
TrajectoryState trajectory_step(const BipartiteUnitary& bu, TrajectoryState s);

/// Outcome law of one step from the diagonal state diag(mu) computed from R:
/// p(y) = sum_{x,x'} mu(x) R_{(x,0),(x',y)}. Equals the exact Kraus law.
ProbabilityVector marginal_law(const BipartiteUnitary& bu, const ProbabilityVector& mu);

struct TrajectoryRunReport {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts;   // per outcome y
    std::vector<double> exact_law;       // marginal law
    double max_abs_deviation = 0.0;      // max_y |empirical - exact|
    std::vector<ComplexMatrix> post_states;  // renormalized post-measurement states
};

/// Batch of independent one-step trajectories from diag(mu); trajectory i
/// uses the stream seed ^ i, so batches can be partitioned freely.
TrajectoryRunReport run_one_step_batch(const BipartiteUnitary& bu, const ProbabilityVector& mu,
                                       std::size_t samples, std::uint64_t seed);

/// A named interaction: Hamiltonian, its unitary at time t, the induced R
/// matrix and the Birkhoff decomposition of R.
struct PhysicalExample {
    ComplexMatrix h;
    BipartiteUnitary bu;
    StochasticMatrix r;
    BirkhoffDecomposition birkhoff;
};

/**
 * Two-level system exchanging energy with a two-level environment at rate
 * theta: excitation hops with probability sin^2(t*theta) and stays with
 * probability cos^2(t*theta).
 */
PhysicalExample example_spontaneous_emission(double theta, double t);

/**
 * Two interacting spins with Hamiltonian lambda X(x)X + mu Y(x)Y. R couples
 * the equal-spin and opposite-spin sectors through the angles t(lambda-mu)
 * and t(lambda+mu).
 */
PhysicalExample example_spin(double lambda, double mu, double t);

struct SpinMixtureWeights {
    double a, b, c, d;  // weights on the four sector permutations
};

/// Closed-form Birkhoff weights of the spin-example R; d is the value forced
/// by row-sum consistency, sin^2 t(lambda-mu) cos^2 t(lambda+mu).
SpinMixtureWeights spin_mixture_weights(double lambda, double mu, double t);

} // namespace subclassical
