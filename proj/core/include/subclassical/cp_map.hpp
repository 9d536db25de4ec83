#pragma once

#include <cstddef>
#include <vector>

#include "subclassical/complex_matrix.hpp"
#include "subclassical/stochastic_matrix.hpp"

namespace subclassical {

/**
 * Completely positive unital map in the Heisenberg convention,
 *
 *   L(X) = sum_a K_a* X K_a,
 *
 * stored as its Kraus family together with the eagerly derived Choi matrix
 *
 *   J = sum_{i,j} L(|i><j|) (x) |i><j|.
 *
 * The predual (Schroedinger) action uses the adjoint family,
 * L_*(rho) = sum_a K_a rho K_a*. Values are immutable after construction.
 */
class CPMap {
public:
    CPMap(std::size_t dim, std::vector<ComplexMatrix> kraus);

    std::size_t dim() const { return dim_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    const ComplexMatrix& choi() const { return choi_; }

    ComplexMatrix apply(const ComplexMatrix& x) const;
    ComplexMatrix apply_predual(const ComplexMatrix& rho) const;

    /// max-entry distance of L(I) from I.
    double unitality_defect() const;
    /// smallest eigenvalue of the Choi matrix (>= -1e-9 for a CP map).
    double choi_min_eigenvalue() const;

private:
    std::size_t dim_;
    std::vector<ComplexMatrix> kraus_;
    ComplexMatrix choi_;
};

/// Kraus family of a Choi matrix (eigen decomposition route); eigenvalues
/// below -cp_tol raise CpViolationError, those below drop_tol are discarded.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t dim,
                                           double cp_tol = 1e-9, double drop_tol = 1e-12);

/// composite(X) = outer(inner(X)).
CPMap compose(const CPMap& outer, const CPMap& inner);

/// X -> U* X U for a unitary U.
CPMap unitary_conjugation(const ComplexMatrix& u, double unitary_tol = 1e-10);

/// Von Neumann measurement (pinching) M(X) = sum_k <k|X|k> |k><k|.
CPMap vn_measurement(std::size_t dim);

/// The unique purely subclassical map with classical restriction Q:
/// Phi[Q](X) = sum_{i,j} Q(i,j) <j|X|j> |i><i|.
CPMap phi_of_q(const StochasticMatrix& q);

/// Measurement-subclassical map with Kraus family M_k = sum_l sqrt(Q(k,l)) |l><k|.
CPMap mk_kraus_from_q(const StochasticMatrix& q);

/// Measurement-subclassical map L(X) = M(U* X U); restriction Q(i,j) = |<j|U|i>|^2.
CPMap measurement_from_unitary(const ComplexMatrix& u, double unitary_tol = 1e-10);

/**
 * Finite-dimensional generic quantum Markov semigroup at time t for a
 * classical Markov generator B (zero row sums, nonnegative off-diagonal):
 * the diagonal sector evolves by e^{tB} and the off-diagonal matrix element
 * (i,j) is damped by exp(t (B_ii + B_jj)/2). Satisfies P_0 = id, the
 * semigroup law, and restriction e^{tB}.
 */
CPMap generic_qms(const ComplexMatrix& b, double t);

/**
 * Four-class taxonomy of a CP map against the diagonal algebra, with the
 * block data of the map in the matrix-unit basis. Off-diagonal matrix units
 * |a><b| (a != b) are indexed in lexicographic (a, b) order, so b_block is
 * n x n(n-1) and c_block is n(n-1) x n(n-1).
 */
struct SubclassicalClass {
    bool is_subclassical = false;
    bool is_doubly = false;
    bool is_measurement = false;
    bool is_purely = false;
    std::vector<std::vector<double>> q_block;  // diag<-diag block
    ComplexMatrix b_block;                     // diag<-offdiag block
    ComplexMatrix c_block;                     // offdiag<-offdiag block
    double leakage = 0.0;                      // max offdiag of L(|i><i|)
    double b_norm = 0.0;                       // max-entry norm of b_block
    double c_norm = 0.0;                       // max-entry norm of c_block
};

SubclassicalClass classify(const CPMap& m, double tol = 1e-9);

/// Stochastic matrix Q(x1,x2) = <x1| L(|x2><x2|) |x1> of a subclassical map.
/// Throws "not subclassical" when the diag->offdiag leakage exceeds leak_tol.
StochasticMatrix classical_restriction(const CPMap& m, double leak_tol = 1e-8);

struct ExtensionComparison {
    bool restriction_equal = false;
    double choi_distance = 0.0;
};

/// Compare two quantum extensions: classical restrictions at restriction_tol,
/// Choi matrices by max-entry distance (reported, not asserted).
ExtensionComparison compare_extensions(const CPMap& m1, const CPMap& m2,
                                       double restriction_tol = 1e-10);

} // namespace subclassical
