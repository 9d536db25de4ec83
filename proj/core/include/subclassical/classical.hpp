#pragma once

#include <cstddef>
#include <vector>

#include "subclassical/complex_matrix.hpp"
#include "subclassical/stochastic_matrix.hpp"

namespace subclassical {

/**
 * Convex mixture of deterministic maps f_j : E -> E reconstructing a
 * stochastic matrix: Q(x,y) = sum_j weights[j] * [maps[j][x] == y].
 */
struct DeterministicMixture {
    std::vector<double> weights;                  // strictly positive
    std::vector<std::vector<std::size_t>> maps;   // each of length n

    StochasticMatrix reconstruct(std::size_t n) const;
};

/**
 * Invertible map on a flat index set {0..size-1}, stored with its inverse.
 * Both directions are validated to be permutations on construction.
 */
class FiniteBijection {
public:
    static FiniteBijection from_forward(std::vector<std::size_t> forward);
    static FiniteBijection identity(std::size_t size);

    std::size_t size() const { return forward_.size(); }
    std::size_t forward(std::size_t i) const { return forward_[i]; }
    std::size_t backward(std::size_t i) const { return backward_[i]; }
    const std::vector<std::size_t>& forward_map() const { return forward_; }

private:
    FiniteBijection(std::vector<std::size_t> fwd, std::vector<std::size_t> bwd)
        : forward_(std::move(fwd)), backward_(std::move(bwd)) {}
    std::vector<std::size_t> forward_;
    std::vector<std::size_t> backward_;
};

/**
 * Invertible dynamical system T on E x F together with an environment law nu,
 * whose environment average reproduces a stochastic matrix:
 *
 *   Q(x,x') = sum over y with first(T(x,y)) = x' of nu(y).
 *
 * Flat indexing on E x F is x * env_size + y (system slow, environment fast).
 */
struct Dilation {
    std::size_t env_size;
    ProbabilityVector nu;
    FiniteBijection t;

    std::size_t sys_size() const { return t.size() / env_size; }
};

struct BirkhoffDecomposition {
    std::vector<double> weights;                        // positive, summing to 1
    std::vector<std::vector<std::size_t>> permutations; // images, one per weight

    std::vector<std::vector<double>> reconstruct() const;
};

/// Validate a raw square matrix as row-stochastic (clamping tiny negatives).
StochasticMatrix validate_stochastic(const std::vector<std::vector<double>>& raw,
                                     double row_tol = 1e-10);

/**
 * Greedy decomposition of Q into deterministic maps: each round picks
 * f(x) = argmax of the residual row x (smallest column index on ties) and
 * subtracts lambda = min_x residual(x, f(x)). Terminates in at most
 * n(n-1)+1 rounds with strictly positive weights.
 */
DeterministicMixture deterministic_mixture_decompose(const StochasticMatrix& q);

/**
 * Embed an arbitrary map f : E -> E into a bijection S of E x E with
 * S(x, 0) = (f(x), x) on the distinguished fiber z = 0; the remaining
 * domain points are matched to the remaining codomain points greedily in
 * lexicographic order.
 */
FiniteBijection complete_to_bijection(const std::vector<std::size_t>& f);

/// Dilation built from an explicit mixture over maps of E = {0..n-1}.
Dilation dilation_from_mixture(const DeterministicMixture& mixture, std::size_t n);

/**
 * Invertible dilation (F, nu, T) of a stochastic matrix, with
 * F = {0..m-1} x E for the m-term deterministic mixture of Q, nu the point
 * mass lambda_j at (j, 0), and T acting blockwise by the completed
 * bijections of the mixture maps.
 */
Dilation build_dilation(const StochasticMatrix& q);

/// Environment average of a dilation; recovers the dilated stochastic matrix.
StochasticMatrix dilation_restriction(const Dilation& d);

/**
 * Birkhoff-von Neumann decomposition of a doubly stochastic matrix by
 * repeated perfect-matching extraction (augmenting-path search on the
 * positive support). Produces at most (n-1)^2 + 1 permutations; weights
 * are renormalized to sum to exactly 1.
 */
BirkhoffDecomposition birkhoff_decompose(const std::vector<std::vector<double>>& r,
                                         double ds_tol = 1e-9);

} // namespace subclassical
