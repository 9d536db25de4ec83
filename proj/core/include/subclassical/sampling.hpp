#pragma once

#include <vector>

#include "subclassical/classical.hpp"
#include "subclassical/complex_matrix.hpp"
#include "subclassical/rng.hpp"
#include "subclassical/stochastic_matrix.hpp"

namespace subclassical {

/// Row-stochastic matrix with rows drawn uniformly and normalized.
StochasticMatrix random_stochastic(std::size_t n, SplitMix64& rng);

ComplexMatrix random_hermitian(std::size_t n, SplitMix64& rng);

/// Haar-ish unitary for test corpora: e^{-iH} for a random Hermitian H.
ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng);

ComplexMatrix random_density(std::size_t n, SplitMix64& rng);

/// Unstructured complex matrix with entries in the unit square.
ComplexMatrix random_operator(std::size_t n, SplitMix64& rng);

FiniteBijection random_bijection(std::size_t size, SplitMix64& rng);

std::vector<complexd> random_phases(std::size_t n, SplitMix64& rng);

ProbabilityVector random_probability(std::size_t n, SplitMix64& rng);

/// Classical Markov generator: nonnegative off-diagonal rates, zero row sums.
ComplexMatrix random_markov_generator(std::size_t n, SplitMix64& rng);

} // namespace subclassical
