#pragma once

#include <json.hpp>

#include "moorek/fields.hpp"
#include "moorek/kprofile.hpp"
#include "moorek/twisted.hpp"

namespace moorek {

// Ordered JSON keeps key order stable so emitted reports are byte-identical
// across runs and across an emit/parse/emit round trip.
using Json = nlohmann::ordered_json;

Json group_to_json(const AbelianGroup& g); // {"factors": [...], "labels": [...]}
AbelianGroup group_from_json(const Json& j);

Json matrix_to_json(const IntMat& m); // row-major nested arrays
IntMat matrix_from_json(const Json& j, Index rows, Index cols);

// Bilinear tables as sparse triples [i, j, [coeffs...]].
Json table_to_json(const BilinearTable& t);
BilinearTable table_from_json(const Json& j, Index rows, Index cols, Index target_rank);

Json profile_to_json(const KProfile& p);
KProfile profile_from_json(const Json& j);

Json group_table_to_json(const GroupTable& t); // {"order": N, "elements": [...], "table": [[...]]}
Json classify_to_json(const ClassifyReport& r);
Json simn_to_json(const SimnReport& r, const std::vector<std::vector<IntVec>>* classes = nullptr);
Json count_to_json(const CountReport& r);
Json pimsner_to_json(const PimsnerPieces& p);

// Ring files: {"additive": {...}, "mult": [[i, j, [coeffs...]], ...]}.
Json ring_to_json(const FiniteNilRing& r);
FiniteNilRing ring_from_json(const Json& j);

// Canonical dump used by every emitter: 2-space indent, trailing newline.
std::string dump_json(const Json& j);

} // namespace moorek
