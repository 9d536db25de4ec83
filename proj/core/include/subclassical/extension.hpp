#pragma once

#include <vector>

#include "subclassical/classical.hpp"
#include "subclassical/complex_matrix.hpp"
#include "subclassical/cp_map.hpp"

namespace subclassical {

/**
 * Permutation unitary of an invertible map T: <e_x| U e_y> = [x == T(y)],
 * so that U e_y = e_{T(y)} and U* M_f U = M_{f o T} for every diagonal f.
 * Invertibility is enforced by the FiniteBijection type itself.
 */
ComplexMatrix permutation_unitary(const FiniteBijection& t);

/**
 * Gauge transform V = diag(g) U of a unitary U by a unit-modulus phase
 * vector g. V conjugates every diagonal operator exactly as U does.
 * Throws "not a gauge" unless |g_x| = 1 within gauge_tol.
 */
ComplexMatrix gauge_extension(const ComplexMatrix& u, const std::vector<complexd>& g,
                              double unitary_tol = 1e-10, double gauge_tol = 1e-12);

/**
 * Trace of a bipartite unitary evolution over an environment state:
 * the CP map L(X) = Tr_omega[U*(X (x) I)U] with omega = diag(nu), stored
 * through its Kraus blocks K_{(y',y)} = sqrt(nu(y)) <y'|U|y>. Blocks with
 * nu(y) = 0 or norm <= 1e-14 are dropped. U must be unitary on the product
 * space (sys_dim * nu.dim()) with the environment as the fast index.
 */
CPMap cp_from_bipartite_unitary(const ComplexMatrix& u, std::size_t sys_dim,
                                const ProbabilityVector& nu);

/// Canonical quantum extension of a dilation: the traced permutation-unitary
/// evolution. Its classical restriction equals dilation_restriction(d).
CPMap canonical_extension(const Dilation& d);

} // namespace subclassical
