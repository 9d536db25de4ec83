#include "subclassical/cp_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subclassical/errors.hpp"
#include "subclassical/numerics.hpp"

namespace subclassical {

CPMap::CPMap(std::size_t dim, std::vector<ComplexMatrix> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
    if (dim_ == 0) throw ValidationError("CP map dimension must be positive");
    if (kraus_.empty()) throw ValidationError("CP map needs at least one Kraus operator");
    for (const auto& k : kraus_) {
        if (k.rows() != dim_ || k.cols() != dim_)
            throw ValidationError("Kraus operator has inconsistent dimensions");
        if (!k.all_finite()) throw ValidationError("Kraus operator entries not finite");
    }

    // J[(a,i),(b,j)] = L(|i><j|)(a,b) = sum_m vec(K_m*)[a*n+i] conj(vec(K_m*)[b*n+j]).
    const std::size_t n = dim_;
    choi_ = ComplexMatrix(n * n, n * n);
    std::vector<complexd> v(n * n);
    for (const auto& k : kraus_) {
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t i = 0; i < n; ++i) v[r * n + i] = std::conj(k(i, r));
        for (std::size_t p = 0; p < n * n; ++p) {
            if (v[p] == complexd(0.0, 0.0)) continue;
            for (std::size_t q = 0; q < n * n; ++q) choi_(p, q) += v[p] * std::conj(v[q]);
        }
    }
}

ComplexMatrix CPMap::apply(const ComplexMatrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_)
        throw ValidationError("operator dimension mismatch in CP map application");
    ComplexMatrix out(dim_, dim_);
    for (const auto& k : kraus_) out += k.adjoint() * x * k;
    return out;
}

ComplexMatrix CPMap::apply_predual(const ComplexMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_)
        throw ValidationError("state dimension mismatch in CP map application");
    ComplexMatrix out(dim_, dim_);
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

double CPMap::unitality_defect() const {
    return apply(ComplexMatrix::identity(dim_)).distance_max(ComplexMatrix::identity(dim_));
}

double CPMap::choi_min_eigenvalue() const {
    return hermitian_eigenvalues(choi_, 1e-8).front();
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t dim,
                                           double cp_tol, double drop_tol) {
    if (choi.rows() != dim * dim || choi.cols() != dim * dim)
        throw ValidationError("Choi matrix has inconsistent dimensions");
    const EigenSystem es = hermitian_eigensystem(choi, 1e-8);
    if (!es.values.empty() && es.values.front() < -cp_tol)
        throw CpViolationError("not completely positive: Choi eigenvalue " +
                               std::to_string(es.values.front()));
    std::vector<ComplexMatrix> kraus;
    for (std::size_t m = 0; m < es.values.size(); ++m) {
        const double lambda = es.values[m];
        if (lambda <= drop_tol) continue;
        const double root = std::sqrt(lambda);
        ComplexMatrix k(dim, dim);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t i = 0; i < dim; ++i)
                k(i, r) = std::conj(root * es.vectors(r * dim + i, m));
        kraus.push_back(std::move(k));
    }
    if (kraus.empty()) throw ValidationError("Choi matrix is numerically zero");
    return kraus;
}

CPMap compose(const CPMap& outer, const CPMap& inner) {
    if (outer.dim() != inner.dim()) throw ValidationError("CP map dimension mismatch in composition");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto& a : inner.kraus())
        for (const auto& b : outer.kraus()) kraus.push_back(a * b);
    return CPMap(outer.dim(), std::move(kraus));
}

CPMap unitary_conjugation(const ComplexMatrix& u, double unitary_tol) {
    if (!u.is_square() || !u.is_unitary(unitary_tol)) throw ValidationError("not unitary");
    return CPMap(u.rows(), {u});
}

CPMap vn_measurement(std::size_t dim) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) kraus.push_back(ComplexMatrix::unit(dim, k, k));
    return CPMap(dim, std::move(kraus));
}

CPMap phi_of_q(const StochasticMatrix& q) {
    const std::size_t n = q.size();
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (q(i, j) <= 0.0) continue;
            ComplexMatrix k(n, n);
            k(j, i) = std::sqrt(q(i, j));
            kraus.push_back(std::move(k));
        }
    }
    return CPMap(n, std::move(kraus));
}

CPMap mk_kraus_from_q(const StochasticMatrix& q) {
    const std::size_t n = q.size();
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        ComplexMatrix m(n, n);
        for (std::size_t l = 0; l < n; ++l) m(l, k) = std::sqrt(q(k, l));
        kraus.push_back(std::move(m));
    }
    return CPMap(n, std::move(kraus));
}

CPMap measurement_from_unitary(const ComplexMatrix& u, double unitary_tol) {
    if (!u.is_square() || !u.is_unitary(unitary_tol)) throw ValidationError("not unitary");
    const std::size_t n = u.rows();
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        ComplexMatrix m(n, n);  // U |k><k|: column k of U in column k
        for (std::size_t a = 0; a < n; ++a) m(a, k) = u(a, k);
        kraus.push_back(std::move(m));
    }
    return CPMap(n, std::move(kraus));
}

CPMap generic_qms(const ComplexMatrix& b, double t) {
    if (!b.is_square()) throw ValidationError("not a Markov generator: not square");
    const std::size_t n = b.rows();
    ComplexMatrix gen(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const complexd v = b(i, j);
            if (!std::isfinite(v.real()) || std::abs(v.imag()) > 1e-12)
                throw ValidationError("not a Markov generator: complex entry");
            double re = v.real();
            if (i != j && re < 0.0) {
                if (re < -1e-12)
                    throw ValidationError("not a Markov generator: negative rate at row " +
                                          std::to_string(i));
                re = 0.0;
            }
            gen(i, j) = re;
            row_sum += re;
        }
        if (std::abs(row_sum) > 1e-10)
            throw ValidationError("not a Markov generator: row " + std::to_string(i) +
                                  " sums to " + std::to_string(row_sum));
    }
    if (t < 0.0) throw ValidationError("generic QMS time must be nonnegative");

    const ComplexMatrix pt = matexp(gen, t);

    // Choi of the map: diagonal sector from e^{tB}, off-diagonal damping.
    ComplexMatrix choi(n * n, n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) choi(k * n + i, k * n + i) = pt(k, i).real();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double damping = std::exp(t * (gen(i, i).real() + gen(j, j).real()) / 2.0);
            choi(i * n + i, j * n + j) = damping;
        }
    }
    return CPMap(n, kraus_from_choi(choi, n));
}

namespace {

struct BlockData {
    std::vector<std::vector<double>> q;
    double leakage = 0.0;
    double b_norm = 0.0;
    double c_norm = 0.0;
};

BlockData block_data(const CPMap& m) {
    const std::size_t n = m.dim();
    BlockData out;
    out.q.assign(n, std::vector<double>(n, 0.0));
    // The Choi matrix already holds every L(|i><j|): J[(a,i),(b,j)] = L(|i><j|)(a,b).
    const ComplexMatrix& j = m.choi();
    for (std::size_t in_i = 0; in_i < n; ++in_i) {
        for (std::size_t in_j = 0; in_j < n; ++in_j) {
            const bool diag_in = in_i == in_j;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t bcol = 0; bcol < n; ++bcol) {
                    const complexd v = j(a * n + in_i, bcol * n + in_j);
                    const bool diag_out = a == bcol;
                    if (diag_in && diag_out)
                        out.q[a][in_i] = v.real();
                    else if (diag_in)
                        out.leakage = std::max(out.leakage, std::abs(v));
                    else if (diag_out)
                        out.b_norm = std::max(out.b_norm, std::abs(v));
                    else
                        out.c_norm = std::max(out.c_norm, std::abs(v));
                }
            }
        }
    }
    return out;
}

} // namespace

SubclassicalClass classify(const CPMap& m, double tol) {
    const BlockData blocks = block_data(m);
    SubclassicalClass c;
    c.q_block = blocks.q;
    c.leakage = blocks.leakage;
    c.b_norm = blocks.b_norm;
    c.c_norm = blocks.c_norm;
    c.is_subclassical = blocks.leakage <= tol;
    c.is_doubly = c.is_subclassical && blocks.b_norm <= tol;
    c.is_measurement = blocks.leakage <= tol && blocks.c_norm <= tol;
    c.is_purely = c.is_subclassical && blocks.b_norm <= tol && blocks.c_norm <= tol;
    return c;
}

StochasticMatrix classical_restriction(const CPMap& m, double leak_tol) {
    const BlockData blocks = block_data(m);
    if (blocks.leakage > leak_tol)
        throw ValidationError("not subclassical: leakage " + std::to_string(blocks.leakage));
    return StochasticMatrix::validated(blocks.q);
}

ExtensionComparison compare_extensions(const CPMap& m1, const CPMap& m2, double restriction_tol) {
    if (m1.dim() != m2.dim()) throw ValidationError("CP map dimension mismatch in comparison");
    const BlockData b1 = block_data(m1);
    const BlockData b2 = block_data(m2);
    double q_dist = 0.0;
    for (std::size_t x = 0; x < m1.dim(); ++x)
        for (std::size_t y = 0; y < m1.dim(); ++y)
            q_dist = std::max(q_dist, std::abs(b1.q[x][y] - b2.q[x][y]));
    return ExtensionComparison{q_dist <= restriction_tol, m1.choi().distance_max(m2.choi())};
}

} // namespace subclassical
