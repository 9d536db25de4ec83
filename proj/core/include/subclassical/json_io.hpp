#pragma once

#include <json.hpp>

#include "subclassical/classical.hpp"
#include "subclassical/complex_matrix.hpp"
#include "subclassical/cp_map.hpp"
#include "subclassical/stochastic_matrix.hpp"
#include "subclassical/trajectories.hpp"

namespace subclassical {

// Keys are emitted in fixed order so repeated runs are byte-identical.
using json = nlohmann::ordered_json;

json to_json(const ComplexMatrix& m);
json to_json(const StochasticMatrix& q);
json to_json(const Dilation& d);
json to_json(const CPMap& m);
json to_json(const SubclassicalClass& c);
json to_json(const BirkhoffDecomposition& d);
json to_json(const TrajectoryRunReport& r, bool include_final_states = false);

ComplexMatrix complex_matrix_from_json(const json& j);
StochasticMatrix stochastic_from_json(const json& j, double row_tol = 1e-10);
/// Raw rows without the stochastic validation (for doubly stochastic inputs).
std::vector<std::vector<double>> rows_from_json(const json& j);
Dilation dilation_from_json(const json& j);
/// Accepts {"dim", "kraus": [...]} or {"dim", "choi": matrix}; a Choi input
/// must be CP within 1e-6 (CpViolationError otherwise).
CPMap cp_map_from_json(const json& j);
BipartiteUnitary bipartite_unitary_from_json(const json& j);

} // namespace subclassical
