#pragma once

#include <json.hpp>

#include "gerbe/cohomology.hpp"
#include "gerbe/simplicial.hpp"

namespace gerbe {

using Json = nlohmann::json;

// Complex file: {"maximal_simplices": [[int,...],...]}
Json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);

// Lattice: {"dim": l, "kind": "fg"|"divisible"|"Zl", "generators": [[rat,...],...]}
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

Json coefficients_to_json(const Coefficients& c);
Coefficients coefficients_from_json(const Json& j);

// Cochain file: {"degree": k, "coefficients": ..., "values": [[[int,...], value],...]}
// with scalar values as "p/q" strings and vector values as arrays of them;
// zero entries are omitted.
Json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const Json& j, const ComplexPtr& carrier);

// Chain file: {"degree": k, "values": [[[int,...], "n"],...]}
Json chain_to_json(const Chain& z);
Chain chain_from_json(const Json& j, const ComplexPtr& carrier);

// Map file: {"vertex_map": [[src, dst],...]}
Json map_to_json(const SimplicialMap& f);
SimplicialMap map_from_json(const Json& j, const ComplexPtr& source, const ComplexPtr& target);

// {"degree", "free_rank", "torsion": [ints], "generators": [cochains]}
Json cohomology_group_to_json(const CohomologyGroup& g);

/// Canonical dump: sorted keys, no whitespace surprises. Identical values
/// must serialize to identical bytes.
std::string canonical_dump(const Json& j);

}  // namespace gerbe
