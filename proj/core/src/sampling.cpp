#include "subclassical/sampling.hpp"

#include <cmath>
#include <numeric>

#include "subclassical/numerics.hpp"

namespace subclassical {

StochasticMatrix random_stochastic(std::size_t n, SplitMix64& rng) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows) {
        double sum = 0.0;
        for (auto& v : row) {
            v = rng.next_unit() + 1e-6;  // keep rows strictly positive
            sum += v;
        }
        for (auto& v : row) v /= sum;
    }
    return StochasticMatrix::validated(std::move(rows));
}

ComplexMatrix random_hermitian(std::size_t n, SplitMix64& rng) {
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = rng.next_unit() - 0.5;
        for (std::size_t j = i + 1; j < n; ++j) {
            const complexd v(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng) {
    return matexp(complexd(0.0, -1.0) * random_hermitian(n, rng), 1.0);
}

ComplexMatrix random_density(std::size_t n, SplitMix64& rng) {
    const ComplexMatrix a = random_operator(n, rng);
    ComplexMatrix rho = a * a.adjoint();
    const double tr = rho.trace().real();
    rho *= complexd(1.0 / tr, 0.0);
    return rho;
}

ComplexMatrix random_operator(std::size_t n, SplitMix64& rng) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = complexd(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
    return m;
}

FiniteBijection random_bijection(std::size_t size, SplitMix64& rng) {
    std::vector<std::size_t> fwd(size);
    std::iota(fwd.begin(), fwd.end(), std::size_t{0});
    for (std::size_t i = size; i > 1; --i) {
        const std::size_t j = rng.next() % i;
        std::swap(fwd[i - 1], fwd[j]);
    }
    return FiniteBijection::from_forward(std::move(fwd));
}

std::vector<complexd> random_phases(std::size_t n, SplitMix64& rng) {
    std::vector<complexd> g(n);
    for (auto& v : g) {
        const double angle = 2.0 * M_PI * rng.next_unit();
        v = complexd(std::cos(angle), std::sin(angle));
    }
    return g;
}

ProbabilityVector random_probability(std::size_t n, SplitMix64& rng) {
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& v : w) {
        v = rng.next_unit() + 1e-6;
        sum += v;
    }
    for (auto& v : w) v /= sum;
    return ProbabilityVector::validated(std::move(w));
}

ComplexMatrix random_markov_generator(std::size_t n, SplitMix64& rng) {
    ComplexMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double rate = rng.next_unit();
            b(i, j) = rate;
            off += rate;
        }
        b(i, i) = -off;
    }
    return b;
}

} // namespace subclassical
