#pragma once

#include <vector>

#include "subclassical/complex_matrix.hpp"

namespace subclassical {

/// Kronecker product; entry ((i*p+k),(j*q+l)) = a(i,j)*b(k,l) for b of shape p x q.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * Partial trace of an operator Y on H (x) K weighted by a state omega on K,
 * defined by Tr{Z rho} = Tr{Y (rho (x) omega)} for all rho on H:
 *
 *   Z(i,j) = sum_{k,l} omega(l,k) * Y((i,k),(j,l)).
 *
 * omega must be a density matrix (Hermitian, PSD, unit trace) within 1e-10,
 * and dim(Y) must be a multiple of dim(omega).
 */
ComplexMatrix weighted_partial_trace(const ComplexMatrix& y, const ComplexMatrix& omega);

/// e^{t a} by scaling-and-squaring with a truncated Taylor series.
ComplexMatrix matexp(const ComplexMatrix& a, double t);

/// Eigenvalues of a Hermitian matrix (within herm_tol), ascending, via cyclic
/// Jacobi rotations. Throws ValidationError("not Hermitian") otherwise.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double herm_tol = 1e-10);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, matching values
};

/// Full eigensystem of a Hermitian matrix: a = V diag(values) V*.
EigenSystem hermitian_eigensystem(const ComplexMatrix& a, double herm_tol = 1e-10);

} // namespace subclassical
