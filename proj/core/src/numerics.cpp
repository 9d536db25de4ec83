#include "subclassical/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subclassical/errors.hpp"

namespace subclassical {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complexd aij = a(i, j);
            if (aij == complexd(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    }
    return out;
}

namespace {

void require_density_matrix(const ComplexMatrix& omega, double tol) {
    if (!omega.is_square()) throw ValidationError("omega must be square");
    if (!omega.is_hermitian(tol)) throw ValidationError("omega is not a density matrix: not Hermitian");
    if (std::abs(omega.trace() - complexd(1.0, 0.0)) > tol)
        throw ValidationError("omega is not a density matrix: trace != 1");
    if (omega.offdiag_max_abs() <= 1e-12) {
        for (std::size_t i = 0; i < omega.rows(); ++i)
            if (omega(i, i).real() < -tol)
                throw ValidationError("omega is not a density matrix: negative weight");
        return;
    }
    const auto eigs = hermitian_eigenvalues(omega, tol);
    if (!eigs.empty() && eigs.front() < -tol)
        throw ValidationError("omega is not a density matrix: not positive semidefinite");
}

} // namespace

ComplexMatrix weighted_partial_trace(const ComplexMatrix& y, const ComplexMatrix& omega) {
    if (!y.is_square()) throw ValidationError("incompatible tensor factorization");
    const std::size_t env = omega.rows();
    if (env == 0 || y.rows() % env != 0) throw ValidationError("incompatible tensor factorization");
    require_density_matrix(omega, 1e-10);

    const std::size_t sys = y.rows() / env;
    ComplexMatrix z(sys, sys);
    for (std::size_t i = 0; i < sys; ++i) {
        for (std::size_t j = 0; j < sys; ++j) {
            complexd acc = 0.0;
            for (std::size_t k = 0; k < env; ++k)
                for (std::size_t l = 0; l < env; ++l)
                    acc += omega(l, k) * y(i * env + k, j * env + l);
            z(i, j) = acc;
        }
    }
    return z;
}

ComplexMatrix matexp(const ComplexMatrix& a, double t) {
    if (!a.is_square()) throw ValidationError("matexp expects a square matrix");
    const std::size_t n = a.rows();
    ComplexMatrix b = a;
    b *= complexd(t, 0.0);

    // Scale so the Taylor series converges fast, then square back.
    const double norm = b.inf_norm();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const double scale = std::ldexp(1.0, -squarings);
    b *= complexd(scale, 0.0);

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 64; ++k) {
        term = term * b;
        term *= complexd(1.0 / static_cast<double>(k), 0.0);
        result += term;
        if (term.max_abs() <= 1e-18 * std::max(1.0, result.max_abs())) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

namespace {

// Cyclic Jacobi for Hermitian matrices. Rotations are chosen to annihilate
// a(p,q) exactly; convergence is monitored on the off-diagonal Frobenius mass.
EigenSystem jacobi_eigensystem(ComplexMatrix a) {
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);
    if (n <= 1) {
        EigenSystem es;
        es.vectors = v;
        if (n == 1) es.values.push_back(a(0, 0).real());
        return es;
    }

    double scale = a.frobenius_norm();
    if (scale == 0.0) scale = 1.0;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * std::norm(a(i, j));
        if (std::sqrt(off) <= 1e-14 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complexd apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const complexd phase = apq / r;  // e^{i phi}

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (app - aqq) / (2.0 * r);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double tt = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;

                // Columns p,q of both a and v transform by the plane rotation
                //   col_p' = c*col_p + s*conj(phase)*col_q
                //   col_q' = -s*phase*col_p + c*col_q
                for (std::size_t k = 0; k < n; ++k) {
                    const complexd akp = a(k, p);
                    const complexd akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * phase * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const complexd apk = a(p, k);
                    const complexd aqk = a(q, k);
                    a(p, k) = c * apk + s * phase * aqk;
                    a(q, k) = -s * std::conj(phase) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = complexd(a(p, p).real(), 0.0);
                a(q, q) = complexd(a(q, q).real(), 0.0);

                for (std::size_t k = 0; k < n; ++k) {
                    const complexd vkp = v(k, p);
                    const complexd vkq = v(k, q);
                    v(k, p) = c * vkp + s * std::conj(phase) * vkq;
                    v(k, q) = -s * phase * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        es.values[c] = a(order[c], order[c]).real();
        for (std::size_t k = 0; k < n; ++k) es.vectors(k, c) = v(k, order[c]);
    }
    return es;
}

ComplexMatrix hermitized(const ComplexMatrix& a, double herm_tol) {
    if (!a.all_finite()) throw ValidationError("matrix entries not finite");
    if (!a.is_square() || !a.is_hermitian(herm_tol)) throw ValidationError("not Hermitian");
    ComplexMatrix h(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

} // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol) {
    return jacobi_eigensystem(hermitized(a, herm_tol)).values;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& a, double herm_tol) {
    return jacobi_eigensystem(hermitized(a, herm_tol));
}

} // namespace subclassical
