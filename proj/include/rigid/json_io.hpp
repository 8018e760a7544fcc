#pragma once

// JSON forms of the library's inputs and reports.
//
//   subspace:    {"n", "m", "generators": [m x n row-major arrays]}
//   augmented:   {"n", "m", "generators": [{"matrix": m x n, "vector": [m]}]}
//   polynomial:  {"n", "m", "terms": [{"degree", "output", "exponents", "value"}]}
//                ("output" is 1-based)

#include "rigid/config.hpp"
#include "rigid/manifolds.hpp"
#include "rigid/matspace.hpp"
#include "rigid/obstruct.hpp"
#include "rigid/polyspace.hpp"
#include "rigid/prolong.hpp"

#include <json.hpp>

namespace rigid::json_io {

using json = nlohmann::json;

json matrix_to_json(const Matrix& A);
Matrix matrix_from_json(const json& j);
json vector_to_json(const Vector& v);

json subspace_to_json(const MatrixSubspace& V);
MatrixSubspace subspace_from_json(const json& j, const Tolerances& tol = {});

AugmentedSubspace augmented_from_json(const json& j, const Tolerances& tol = {});

json polymap_to_json(const PolyMap& F);
PolyMap polymap_from_json(const json& j);

json tolerances_to_json(const Tolerances& tol);
/// Applies any keys present in j; unknown keys are rejected.
Tolerances tolerances_from_json(const json& j, Tolerances base = {});

json delta_to_json(const DeltaStatus& delta, const std::string& certified_by = {});
json chain_to_json(const ChainReport& report, bool include_bases = true);
json rank_one_to_json(const RankOneWitness& w);
json complex_pair_to_json(const ComplexPairWitness& w);
json classification_to_json(const Classification& c);
json poly_basis_to_json(const PolyBasis& basis);
json verification_to_json(const VerificationReport& r);
json manifold_to_json(const ManifoldReport& r);
json jet_to_json(const JetSpaceReport& r);

/// Parses text, turning syntax errors into InvalidArgument.
json parse(const std::string& text);

}  // namespace rigid::json_io
