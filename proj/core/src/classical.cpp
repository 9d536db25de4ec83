#include "subclassical/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "subclassical/errors.hpp"

namespace subclassical {

StochasticMatrix DeterministicMixture::reconstruct(std::size_t n) const {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < weights.size(); ++j)
        for (std::size_t x = 0; x < n; ++x) rows[x][maps[j][x]] += weights[j];
    return StochasticMatrix::validated(std::move(rows));
}

FiniteBijection FiniteBijection::from_forward(std::vector<std::size_t> forward) {
    const std::size_t size = forward.size();
    std::vector<std::size_t> backward(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        if (forward[i] >= size) throw ValidationError("bijection image out of range");
        if (backward[forward[i]] != size) throw ValidationError("map is not a bijection");
        backward[forward[i]] = i;
    }
    return FiniteBijection(std::move(forward), std::move(backward));
}

FiniteBijection FiniteBijection::identity(std::size_t size) {
    std::vector<std::size_t> fwd(size);
    std::iota(fwd.begin(), fwd.end(), std::size_t{0});
    return FiniteBijection(fwd, fwd);
}

std::vector<std::vector<double>> BirkhoffDecomposition::reconstruct() const {
    const std::size_t n = permutations.empty() ? 0 : permutations.front().size();
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t l = 0; l < weights.size(); ++l)
        for (std::size_t x = 0; x < n; ++x) out[x][permutations[l][x]] += weights[l];
    return out;
}

StochasticMatrix validate_stochastic(const std::vector<std::vector<double>>& raw, double row_tol) {
    return StochasticMatrix::validated(raw, row_tol);
}

DeterministicMixture deterministic_mixture_decompose(const StochasticMatrix& q) {
    const std::size_t n = q.size();
    std::vector<double> residual = q.flat();
    DeterministicMixture mix;

    const std::size_t max_terms = n * (n - 1) + 1;
    for (std::size_t term = 0; term <= max_terms; ++term) {
        double residual_max = 0.0;
        for (double v : residual) residual_max = std::max(residual_max, v);
        if (residual_max <= 1e-12) break;

        // f(x) = argmax of residual row x, smallest column on ties.
        std::vector<std::size_t> f(n, 0);
        double lambda = residual_max;
        for (std::size_t x = 0; x < n; ++x) {
            std::size_t best = 0;
            for (std::size_t y = 1; y < n; ++y)
                if (residual[x * n + y] > residual[x * n + best]) best = y;
            f[x] = best;
            lambda = std::min(lambda, residual[x * n + best]);
        }
        for (std::size_t x = 0; x < n; ++x)
            residual[x * n + f[x]] = std::max(0.0, residual[x * n + f[x]] - lambda);

        mix.weights.push_back(lambda);
        mix.maps.push_back(std::move(f));
    }
    return mix;
}

FiniteBijection complete_to_bijection(const std::vector<std::size_t>& f) {
    const std::size_t n = f.size();
    for (std::size_t x = 0; x < n; ++x)
        if (f[x] >= n) throw ValidationError("map image out of range");

    const std::size_t size = n * n;  // flat index (x, z) -> x*n + z
    const std::size_t unset = size;
    std::vector<std::size_t> forward(size, unset);
    std::vector<bool> taken(size, false);

    // Distinguished fiber z = 0 carries the map; the second coordinate keeps
    // the preimage so this part is injective.
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t image = f[x] * n + x;  // (f(x), x)
        forward[x * n + 0] = image;
        taken[image] = true;
    }
    std::size_t next_free = 0;
    for (std::size_t idx = 0; idx < size; ++idx) {
        if (forward[idx] != unset) continue;
        while (taken[next_free]) ++next_free;
        forward[idx] = next_free;
        taken[next_free] = true;
    }
    return FiniteBijection::from_forward(std::move(forward));
}

Dilation dilation_from_mixture(const DeterministicMixture& mixture, std::size_t n) {
    const std::size_t m = mixture.weights.size();
    if (m == 0) throw ValidationError("mixture must have at least one term");
    const std::size_t env = m * n;  // F = {0..m-1} x E, flat index j*n + z

    std::vector<double> nu(env, 0.0);
    for (std::size_t j = 0; j < m; ++j) nu[j * n + 0] = mixture.weights[j];

    std::vector<std::size_t> forward(n * env);
    for (std::size_t j = 0; j < m; ++j) {
        const FiniteBijection s = complete_to_bijection(mixture.maps[j]);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t image = s.forward(x * n + z);
                const std::size_t x_out = image / n;
                const std::size_t z_out = image % n;
                forward[x * env + (j * n + z)] = x_out * env + (j * n + z_out);
            }
        }
    }
    return Dilation{env, ProbabilityVector::validated(std::move(nu)),
                    FiniteBijection::from_forward(std::move(forward))};
}

Dilation build_dilation(const StochasticMatrix& q) {
    return dilation_from_mixture(deterministic_mixture_decompose(q), q.size());
}

StochasticMatrix dilation_restriction(const Dilation& d) {
    const std::size_t env = d.env_size;
    if (env == 0 || d.t.size() % env != 0) throw ValidationError("dilation sizes inconsistent");
    if (d.nu.dim() != env) throw ValidationError("dilation environment law has wrong size");
    const std::size_t n = d.t.size() / env;

    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < env; ++y)
            rows[x][d.t.forward(x * env + y) / env] += d.nu[y];
    return StochasticMatrix::validated(std::move(rows));
}

namespace {

// Kuhn's augmenting-path search on the positive support, rows and columns
// explored in index order so results are reproducible.
bool try_augment(std::size_t row, const std::vector<double>& entries, std::size_t n,
                 double support_tol, std::vector<bool>& visited,
                 std::vector<std::size_t>& col_match) {
    for (std::size_t col = 0; col < n; ++col) {
        if (entries[row * n + col] <= support_tol || visited[col]) continue;
        visited[col] = true;
        if (col_match[col] == n ||
            try_augment(col_match[col], entries, n, support_tol, visited, col_match)) {
            col_match[col] = row;
            return true;
        }
    }
    return false;
}

} // namespace

BirkhoffDecomposition birkhoff_decompose(const std::vector<std::vector<double>>& r, double ds_tol) {
    const std::size_t n = r.size();
    if (n == 0) throw ValidationError("not doubly stochastic: empty matrix");
    std::vector<double> entries(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        if (r[x].size() != n) throw ValidationError("not doubly stochastic: not square");
        double row_sum = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            const double v = r[x][y];
            if (!std::isfinite(v) || v < -ds_tol)
                throw ValidationError("not doubly stochastic: bad entry");
            entries[x * n + y] = std::max(0.0, v);
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > ds_tol)
            throw ValidationError("not doubly stochastic: row " + std::to_string(x));
    }
    for (std::size_t y = 0; y < n; ++y) {
        double col_sum = 0.0;
        for (std::size_t x = 0; x < n; ++x) col_sum += entries[x * n + y];
        if (std::abs(col_sum - 1.0) > ds_tol)
            throw ValidationError("not doubly stochastic: column " + std::to_string(y));
    }

    constexpr double support_tol = 1e-12;
    BirkhoffDecomposition decomp;
    const std::size_t max_terms = (n - 1) * (n - 1) + 1;

    for (std::size_t term = 0; term <= max_terms; ++term) {
        double residual_max = 0.0;
        for (double v : entries) residual_max = std::max(residual_max, v);
        if (residual_max <= 1e-9) break;
        if (term == max_terms)
            throw ValidationError("decomposition stalled: residual " +
                                  std::to_string(residual_max) + " after " +
                                  std::to_string(max_terms) + " terms");

        std::vector<std::size_t> col_match(n, n);
        for (std::size_t row = 0; row < n; ++row) {
            std::vector<bool> visited(n, false);
            if (!try_augment(row, entries, n, support_tol, visited, col_match))
                throw ValidationError("decomposition stalled: residual " +
                                      std::to_string(residual_max));
        }

        std::vector<std::size_t> perm(n);
        for (std::size_t col = 0; col < n; ++col) perm[col_match[col]] = col;

        double lambda = 1.0;
        for (std::size_t x = 0; x < n; ++x) lambda = std::min(lambda, entries[x * n + perm[x]]);
        for (std::size_t x = 0; x < n; ++x)
            entries[x * n + perm[x]] = std::max(0.0, entries[x * n + perm[x]] - lambda);

        decomp.weights.push_back(lambda);
        decomp.permutations.push_back(std::move(perm));
    }

    if (decomp.weights.empty()) throw ValidationError("decomposition stalled: empty result");
    const double total = std::accumulate(decomp.weights.begin(), decomp.weights.end(), 0.0);
    for (double& w : decomp.weights) w /= total;
    return decomp;
}

} // namespace subclassical
