#include "subclassical/extension.hpp"

#include <cmath>

#include "subclassical/errors.hpp"

namespace subclassical {

ComplexMatrix permutation_unitary(const FiniteBijection& t) {
    const std::size_t n = t.size();
    ComplexMatrix u(n, n);
    for (std::size_t y = 0; y < n; ++y) u(t.forward(y), y) = 1.0;
    return u;
}

ComplexMatrix gauge_extension(const ComplexMatrix& u, const std::vector<complexd>& g,
                              double unitary_tol, double gauge_tol) {
    if (!u.is_square() || !u.is_unitary(unitary_tol)) throw ValidationError("not unitary");
    if (g.size() != u.rows()) throw ValidationError("not a gauge: wrong length");
    for (const complexd& gx : g)
        if (std::abs(std::abs(gx) - 1.0) > gauge_tol)
            throw ValidationError("not a gauge: entry modulus differs from 1");

    ComplexMatrix v = u;
    for (std::size_t x = 0; x < v.rows(); ++x)
        for (std::size_t y = 0; y < v.cols(); ++y) v(x, y) *= g[x];
    return v;
}

CPMap cp_from_bipartite_unitary(const ComplexMatrix& u, std::size_t sys_dim,
                                const ProbabilityVector& nu) {
    const std::size_t env = nu.dim();
    if (!u.is_square() || sys_dim == 0 || u.rows() != sys_dim * env)
        throw ValidationError("incompatible tensor factorization");

    std::vector<ComplexMatrix> kraus;
    for (std::size_t y = 0; y < env; ++y) {
        if (nu[y] <= 0.0) continue;
        const double root = std::sqrt(nu[y]);
        for (std::size_t y_out = 0; y_out < env; ++y_out) {
            ComplexMatrix block(sys_dim, sys_dim);
            double norm = 0.0;
            for (std::size_t a = 0; a < sys_dim; ++a) {
                for (std::size_t c = 0; c < sys_dim; ++c) {
                    const complexd v = u(a * env + y_out, c * env + y);
                    block(a, c) = root * v;
                    norm = std::max(norm, std::abs(block(a, c)));
                }
            }
            if (norm > 1e-14) kraus.push_back(std::move(block));
        }
    }
    return CPMap(sys_dim, std::move(kraus));
}

CPMap canonical_extension(const Dilation& d) {
    return cp_from_bipartite_unitary(permutation_unitary(d.t), d.sys_size(), d.nu);
}

} // namespace subclassical
