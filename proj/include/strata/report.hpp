#pragma once

#include "strata/cmindex.hpp"
#include "strata/deform.hpp"
#include "strata/hasse.hpp"

#include <json.hpp>

#include <string>

namespace strata {

// Plain nlohmann::json keeps object keys sorted, which canonicalizes every
// emitted report.
using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Stable claim identifiers used in reports, so check names survive
/// renumbering of any external write-up.
namespace claims {
inline constexpr const char* kStratumBounds = "stratum-bounds";
inline constexpr const char* kDimensionDegree = "dimension-degree";
inline constexpr const char* kClosureWitness = "closure-witness";
inline constexpr const char* kSemicontinuity = "semicontinuity";
inline constexpr const char* kSmoothLocus = "smooth-locus";
inline constexpr const char* kLiftObstruction = "lift-obstruction";
inline constexpr const char* kClassifyChar2 = "char2-classification";
inline constexpr const char* kParityEmpty = "char2-parity-empty";
inline constexpr const char* kChar2Smooth = "char2-smooth-locus";
inline constexpr const char* kChar2Case2Dims = "char2-case2-dimensions";
inline constexpr const char* kWeightVanishing = "weight-vanishing";
inline constexpr const char* kHasseExclusions = "hasse-exclusions";
inline constexpr const char* kHasseConjugate = "hasse-conjugate-orthogonal";
inline constexpr const char* kHasseEmpty = "hasse-empty-strata";
inline constexpr const char* kHassePoset = "hasse-poset";
inline constexpr const char* kCmOrder = "cm-order";
inline constexpr const char* kChartCount = "chart-count";
} // namespace claims

json label_to_json(const StratumLabel& c);
json mat_to_json(const Mat& m);
Mat mat_from_json(const Fq& F, const json& j);
json pmat_to_json(const PMat& m);
PMat pmat_from_json(const json& j, int N);

/// Family serialization: field, frame, truncation and basis matrices with
/// coefficient lists; a serialized family can be reloaded and re-validated.
json family_to_json(const FamilyPoint& fam);
FamilyPoint family_from_json(const Fq& F, const json& j);

json datum_to_json(const DieudonneDatum& d);

json poset9_to_json(int n);
json cm_index_to_json(const CMShape& shape, const std::vector<IndexC>& all);

std::string csv_escape(const std::string& s);

} // namespace strata
